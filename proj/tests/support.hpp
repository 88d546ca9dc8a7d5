#pragma once

// Test oracles written independently of the library algorithms: plain
// rational Gaussian elimination, minors by column subsets, and fixtures.

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dualdefect/config.hpp"
#include "dualdefect/config_io.hpp"

namespace testing_support {

using dualdefect::HermiteForm;
using dualdefect::Int;
using dualdefect::IntMatrix;
using dualdefect::IntVector;
using dualdefect::PointConfig;
using dualdefect::Rat;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(DUALDEFECT_FIXTURE_DIR) / name;
}

inline PointConfig load_fixture(const std::string& name) { return dualdefect::load_config(fixture(name)).config; }

// Rank by textbook elimination over Q.
inline std::size_t rank_q(const IntMatrix& m) {
  std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline Int det_q(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rat f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det.get_num();
}

// gcd of the maximal minors of a k x n matrix with k <= n, over every column subset.
inline Int gcd_maximal_minors(const IntMatrix& m) {
  const std::size_t k = m.rows(), n = m.cols();
  if (k == 0) return 1;
  Int g = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    IntMatrix sub(k, k);
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) {
        for (std::size_t i = 0; i < k; ++i) sub(i, c) = m(i, j);
        ++c;
      }
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det_q(sub).get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

inline IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline bool is_row_hnf(const HermiteForm& hf) {
  const IntMatrix& h = hf.h;
  std::size_t last = 0;
  for (std::size_t k = 0; k < hf.rank(); ++k) {
    const std::size_t pc = hf.pivot_cols[k];
    if (k > 0 && pc <= last) return false;
    last = pc;
    if (h(k, pc) <= 0) return false;
    for (std::size_t j = 0; j < pc; ++j)
      if (h(k, j) != 0) return false;
    for (std::size_t i = 0; i < k; ++i)
      if (h(i, pc) < 0 || h(i, pc) >= h(k, pc)) return false;
  }
  for (std::size_t i = hf.rank(); i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) return false;
  return true;
}

inline bool diagonal_chain(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  const std::size_t d = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < d; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < d) {
      if (s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
      if (s(i, i) != 0 && !mpz_divisible_p(s(i + 1, i + 1).get_mpz_t(), s(i, i).get_mpz_t())) return false;
    }
  }
  return true;
}

// Index sets of a partition as sets of points, so that partitions can be
// compared independently of point order.
inline std::set<std::set<IntVector>> as_point_sets(const PointConfig& a,
                                                   const std::vector<std::vector<std::size_t>>& parts) {
  std::set<std::set<IntVector>> out;
  for (const auto& part : parts) {
    std::set<IntVector> s;
    for (std::size_t i : part) s.insert(a[i]);
    out.insert(std::move(s));
  }
  return out;
}

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Delta_a x Delta_b in Z^{a+b}.
inline PointConfig segre_product(std::size_t a, std::size_t b) {
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i <= a; ++i)
    for (std::size_t j = 0; j <= b; ++j) {
      IntVector p(a + b);
      if (i > 0) p[i - 1] = 1;
      if (j > 0) p[a + j - 1] = 1;
      pts.push_back(std::move(p));
    }
  return PointConfig(a + b, std::move(pts));
}

// Worked examples, written out point by point.
inline PointConfig ex5_7() {
  return PointConfig::from_longs(5, {{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {2, 0, 0, 0, 0},
                                     {0, 0, 1, 0, 0}, {0, 1, 1, 0, 0}, {0, 2, 1, 0, 0},
                                     {0, 0, 0, 1, 0}, {1, 0, 0, 1, 0}, {0, 1, 0, 1, 0}, {1, 1, 0, 1, 0},
                                     {0, 0, 0, 0, 1}, {1, 0, 0, 0, 1}, {0, 1, 0, 0, 1}, {1, 1, 0, 0, 1}});
}

inline PointConfig ex5_8() {
  return PointConfig::from_longs(6, {{0, 0, 0, 0, 0, 0},
                                     {1, 0, 0, 0, 0, 0},
                                     {0, 1, 0, 0, 0, 0},
                                     {0, 0, 1, 0, 0, 0},
                                     {0, 0, 0, 1, 0, 0},
                                     {0, 0, 0, 0, 1, 0},
                                     {0, 0, 0, 0, 0, 1},
                                     {-1, 2, 0, 0, -2, 1},
                                     {0, 0, -1, 2, -2, 1}});
}

inline PointConfig segre_square() { return PointConfig::from_longs(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

}  // namespace testing_support
