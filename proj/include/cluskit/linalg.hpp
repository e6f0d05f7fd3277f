#pragma once

#include "cluskit/common.hpp"

namespace cluskit {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;
using IntMat = std::vector<std::vector<long long>>;

inline RatMat rat_mat(std::size_t rows, std::size_t cols, const Rat& fill = 0) {
  return RatMat(rows, RatVec(cols, fill));
}

inline RatMat rat_identity(std::size_t n) {
  RatMat m = rat_mat(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMat to_rat(const IntMat& a) {
  RatMat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
  return m;
}

inline RatMat mat_mul(const RatMat& a, const RatMat& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size(), k = a[0].size(), m = b[0].size();
  if (b.size() != k) throw DimensionError("mat_mul: shape mismatch");
  RatMat r = rat_mat(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t l = 0; l < m; ++l) r[i][l] += a[i][j] * b[j][l];
    }
  return r;
}

inline RatMat mat_transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat r = rat_mat(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

// Row-reduce in place; returns pivot column per pivot row.
inline std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rat inv = Rat(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t mat_rank(RatMat m) { return rref(m).size(); }

// Solves A x = b when a solution exists and is unique (A full column rank).
inline std::optional<RatVec> solve_unique(const RatMat& a, const RatVec& b) {
  if (a.empty()) {
    // Zero columns: solvable iff b = 0, with the empty solution.
    for (const Rat& x : b)
      if (x != 0) return std::nullopt;
    return RatVec{};
  }
  const std::size_t rows = a.size(), cols = a[0].size();
  if (b.size() != rows) throw DimensionError("solve_unique: shape mismatch");
  RatMat aug = rat_mat(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  RatVec x(cols, 0);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;  // inconsistent
    ++rank;
  }
  if (rank != cols) throw Error("solve_unique: matrix not full column rank");
  for (std::size_t i = 0; i < rank; ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

inline std::optional<RatMat> mat_inverse(const RatMat& a) {
  const std::size_t n = a.size();
  if (n == 0) return RatMat{};
  if (a[0].size() != n) throw DimensionError("mat_inverse: not square");
  RatMat aug = rat_mat(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMat inv = rat_mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rat mat_det(RatMat m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const Rat inv = Rat(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline bool rat_is_integer(const Rat& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline long long rat_to_ll(const Rat& x) {
  if (!rat_is_integer(x)) throw Error("rat_to_ll: not an integer");
  return boost::multiprecision::numerator(x).convert_to<long long>();
}

inline std::string rat_to_string(const Rat& x) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(x);
  if (boost::multiprecision::denominator(x) != 1)
    os << '/' << boost::multiprecision::denominator(x);
  return os.str();
}

inline Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: " + s);
  }
}

}  // namespace cluskit
