#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace cluskit {

// Order-preserving map over an index range.  Work items are claimed from a
// shared counter, results land at their own index, so the output is the same
// for any thread count.  The lowest-index exception wins, also deterministic.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int nt = static_cast<int>(
      std::min<std::size_t>(count, static_cast<std::size_t>(threads)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
}

template <typename Out, typename In, typename Fn>
std::vector<Out> parallel_map(const std::vector<In>& in, Fn fn, int threads) {
  std::vector<Out> out(in.size());
  parallel_for(in.size(), threads,
               [&](std::size_t i) { out[i] = fn(in[i]); });
  return out;
}

}  // namespace cluskit
