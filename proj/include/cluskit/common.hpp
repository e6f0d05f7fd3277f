#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cluskit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exponent vectors indexed by the vertex set of a seed.
using LatticeVec = std::vector<long long>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct InexactDivision : Error {
  using Error::Error;
};
struct NotPointedError : Error {
  using Error::Error;
};
struct GenericityError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct NotInSpanError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct BadWord : Error {
  using Error::Error;
};
struct UnsupportedRank : Error {
  using Error::Error;
};

struct BadBasePoint : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline LatticeVec vec_add(const LatticeVec& a, const LatticeVec& b) {
  if (a.size() != b.size()) throw DimensionError("vec_add: size mismatch");
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline LatticeVec vec_sub(const LatticeVec& a, const LatticeVec& b) {
  if (a.size() != b.size()) throw DimensionError("vec_sub: size mismatch");
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline LatticeVec vec_neg(const LatticeVec& a) {
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline LatticeVec vec_scale(long long c, const LatticeVec& a) {
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool vec_is_zero(const LatticeVec& a) {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

inline bool vec_nonneg(const LatticeVec& a) {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x >= 0; });
}

inline LatticeVec unit_vec(int n, int i, long long c = 1) {
  LatticeVec r(static_cast<std::size_t>(n), 0);
  r[static_cast<std::size_t>(i)] = c;
  return r;
}

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string vec_to_string(const LatticeVec& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i];
  }
  os << ')';
  return os.str();
}

// Stable 64-bit content hash used for seed and node identifiers.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex_id(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace cluskit
