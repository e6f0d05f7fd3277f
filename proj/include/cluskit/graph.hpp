#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cluskit/state.hpp"

namespace cluskit {

// Order the unfrozen slots of a state canonically: slots are sorted by the
// g-vectors of their variables (distinct, since the extended g-matrix is
// unimodular), separately inside letters vs non-letters so restricted walks
// never identify slots across that split.
inline std::vector<int> canonical_uf_order(const SeedState& st,
                                           const std::vector<int>& letters) {
  const Seed& s = st.cur;
  const int r = s.rank_uf();
  std::vector<bool> is_letter(static_cast<std::size_t>(s.n), false);
  for (int k : letters) is_letter[static_cast<std::size_t>(k)] = true;
  std::vector<std::pair<std::pair<int, LatticeVec>, int>> keyed;
  keyed.reserve(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    const int v = s.uf[static_cast<std::size_t>(j)];
    const int group = is_letter[static_cast<std::size_t>(v)] ? 0 : 1;
    keyed.push_back({{group, g_vector(st, v)}, j});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j)
    order[static_cast<std::size_t>(j)] = keyed[static_cast<std::size_t>(j)].second;
  return order;
}

// Dedup key identifying a seed up to permutation of unfrozen vertices (frozen
// vertices stay pinned).  Includes the exchange columns, the twist form, the
// symmetrizers and the cluster expansions themselves, so equal keys mean a
// genuine relabelling, not a coincidence of invariants.
inline std::string seed_canonical_key(const SeedState& st,
                                      const std::vector<int>& letters) {
  const Seed& s = st.cur;
  const std::vector<int> order = canonical_uf_order(st, letters);
  std::vector<int> vmap(static_cast<std::size_t>(s.n));
  for (int i = 0; i < s.n; ++i) vmap[static_cast<std::size_t>(i)] = i;
  for (std::size_t j = 0; j < order.size(); ++j)
    vmap[static_cast<std::size_t>(s.uf[j])] =
        s.uf[static_cast<std::size_t>(order[j])];
  std::ostringstream os;
  os << s.n << ';';
  for (int v : s.uf) os << v << ',';
  os << ';';
  for (int i = 0; i < s.n; ++i)
    os << s.d[static_cast<std::size_t>(vmap[static_cast<std::size_t>(i)])]
       << ',';
  os << ';';
  // Exchange data lives in the columns at unfrozen vertices only.
  for (int i = 0; i < s.n; ++i)
    for (int j : s.uf)
      os << rat_to_string(s.b(vmap[static_cast<std::size_t>(i)],
                              vmap[static_cast<std::size_t>(j)]))
         << ',';
  os << ';';
  if (!s.lambda.is_zero()) {
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j)
        os << s.lambda(unit_vec(s.n, vmap[static_cast<std::size_t>(i)]),
                       unit_vec(s.n, vmap[static_cast<std::size_t>(j)]))
           << ',';
  }
  os << ';';
  for (int j : s.uf)
    os << st.vars[static_cast<std::size_t>(vmap[static_cast<std::size_t>(j)])]
              .to_string()
       << ';';
  return os.str();
}

struct GraphEdge {
  int k;   // mutated vertex, 0-based ambient index
  int to;  // target node index
};

struct GraphNode {
  SeedState state;
  std::vector<int> word;  // shortest mutation word from the root, 0-based
  int depth = 0;
  std::vector<GraphEdge> edges;
};

struct ExchangeGraph {
  std::shared_ptr<const Seed> root;
  std::vector<int> letters;  // vertices mutations may use, 0-based
  int max_depth = 0;
  bool complete = false;  // no node was suppressed by the depth cap
  std::vector<GraphNode> nodes;
  std::map<std::string, int> index;  // canonical key -> node

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& nd : nodes) twice += nd.edges.size();
    return twice / 2;
  }
};

// Breadth-first closure of the mutation walk from s using the given letters
// (default: every unfrozen vertex).  Every discovered node is expanded, so
// edges between depth-cap nodes still close; only brand-new nodes beyond the
// cap are dropped, and that clears the completeness flag.
inline ExchangeGraph build_graph(const Seed& s, int max_depth,
                                 std::vector<int> letters = {}) {
  if (letters.empty()) letters = s.uf;
  for (int k : letters)
    require(s.is_unfrozen(k), "build_graph: letters must be unfrozen");
  ExchangeGraph g;
  g.letters = letters;
  g.max_depth = max_depth;
  g.complete = true;
  SeedState root = initial_state(s);
  g.root = root.t0;
  g.index.emplace(seed_canonical_key(root, letters), 0);
  g.nodes.push_back(GraphNode{std::move(root), {}, 0, {}});
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    for (int k : letters) {
      SeedState next = mutate_state(g.nodes[u].state, k);
      const std::string key = seed_canonical_key(next, letters);
      auto it = g.index.find(key);
      if (it == g.index.end()) {
        if (g.nodes[u].depth >= max_depth) {
          g.complete = false;
          continue;
        }
        const int idx = static_cast<int>(g.nodes.size());
        std::vector<int> word = g.nodes[u].word;
        word.push_back(k);
        const int depth = g.nodes[u].depth + 1;
        g.index.emplace(key, idx);
        g.nodes.push_back(GraphNode{std::move(next), std::move(word), depth, {}});
        g.nodes[u].edges.push_back(GraphEdge{k, idx});
      } else {
        g.nodes[u].edges.push_back(GraphEdge{k, it->second});
      }
    }
  }
  return g;
}

// A seed is injective-reachable when some node carries, after a permutation
// sigma of the unfrozen slots, g-vectors projecting to -e_k on the unfrozen
// coordinates.  Each slot's projection matches at most one -e_k, so a greedy
// assignment is exact.
inline std::optional<std::vector<int>> injective_sigma(const SeedState& st) {
  const Seed& t0 = st.initial();
  const int r = t0.rank_uf();
  std::vector<int> sigma(static_cast<std::size_t>(r), -1);
  for (int j = 0; j < r; ++j) {
    const LatticeVec g = g_vector(st, t0.uf[static_cast<std::size_t>(j)]);
    int hit = -1;
    bool clean = true;
    for (int k = 0; k < r && clean; ++k) {
      const long long gk = g[static_cast<std::size_t>(t0.uf[static_cast<std::size_t>(k)])];
      if (gk == -1 && hit < 0)
        hit = k;
      else if (gk != 0)
        clean = false;
    }
    if (clean && hit >= 0 && sigma[static_cast<std::size_t>(hit)] < 0)
      sigma[static_cast<std::size_t>(hit)] = j;
  }
  for (int k = 0; k < r; ++k)
    if (sigma[static_cast<std::size_t>(k)] < 0) return std::nullopt;
  return sigma;
}

struct InjectiveReachable {
  bool found = false;
  int node = -1;
  std::vector<int> word;   // mutation word reaching the witness node
  std::vector<int> sigma;  // sigma[k] = unfrozen slot projecting to -e_k
};

inline InjectiveReachable find_injective_reachable(const Seed& s,
                                                   int max_depth) {
  const ExchangeGraph g = build_graph(s, max_depth);
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    if (auto sigma = injective_sigma(g.nodes[u].state)) {
      return InjectiveReachable{true, static_cast<int>(u), g.nodes[u].word,
                                *sigma};
    }
  }
  return {};
}

inline std::string word_to_string(const std::vector<int>& word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << ' ';
    os << word[i] + 1;
  }
  return os.str();
}

// Undirected DOT rendering; each geometric edge appears once, labelled by the
// mutated vertex as seen from its lower-indexed endpoint.
inline std::string graph_dot(const ExchangeGraph& g) {
  std::ostringstream os;
  os << "graph exchange {\n";
  os << "  node [shape=box fontname=\"Courier\"];\n";
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    os << "  n" << u << " [label=\"" << hex_id(g.nodes[u].state.cur.id)
       << "\\n(" << word_to_string(g.nodes[u].word) << ")\"];\n";
  }
  std::set<std::pair<int, int>> done;
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    for (const GraphEdge& e : g.nodes[u].edges) {
      const int a = static_cast<int>(u);
      if (a > e.to) continue;
      if (!done.insert({a, e.to}).second) continue;
      os << "  n" << a << " -- n" << e.to << " [label=\"" << e.k + 1
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace cluskit
