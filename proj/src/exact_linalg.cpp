#include "dualdefect/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dualdefect {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Replace rows (a, b) of m by (x*Ra + y*Rb, p*Ra + q*Rb).
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Int& x, const Int& y,
                  const Int& p, const Int& q) {
  Int ra, rb;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    ra = x * m(a, j) + y * m(b, j);
    rb = p * m(a, j) + q * m(b, j);
    m(a, j) = std::move(ra);
    m(b, j) = std::move(rb);
  }
}

// row_dst -= k * row_src
void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= k * m(src, j);
}

void axpy_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= k * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Fraction-free elimination; returns rank and leaves the echelon form in a.
std::size_t bareiss_rank(IntMatrix& a) {
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

}  // namespace

template <class T>
std::string Matrix<T>::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

template class Matrix<Int>;
template class Matrix<Rat>;

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), {}};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t row = 0;
  Int g, x, y, p, q;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (std::size_t i = row + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      const Int a = h(row, col);
      const Int b = h(i, col);
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      p = -b / g;
      q = a / g;
      combine_rows(h, row, i, x, y, p, q);
      combine_rows(u, row, i, x, y, p, q);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Int k = floor_div(h(i, col), h(row, col));
      axpy_row(h, i, row, k);
      axpy_row(u, i, row, k);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

std::vector<Int> SmithForm::invariant_factors() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

SmithForm snf(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& s = out.s;
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s(i, j) != 0 && (bi == rows || abs(s(i, j)) < abs(s(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return out;
      s.swap_rows(t, bi);
      out.u.swap_rows(t, bi);
      s.swap_cols(t, bj);
      out.v.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Int k = trunc_div(s(i, t), s(t, t));
        axpy_row(s, i, t, k);
        axpy_row(out.u, i, t, k);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Int k = trunc_div(s(t, j), s(t, t));
        axpy_col(s, j, t, k);
        axpy_col(out.v, j, t, k);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility into the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      axpy_row(s, t, bad, Int(-1));
      axpy_row(out.u, t, bad, Int(-1));
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(out.u, t);
    }
  }
  return out;
}

IntMatrix kernel_basis_int(const IntMatrix& m) {
  const HermiteForm hf = hnf(m.transpose());
  return hnf(hf.u.row_range(hf.rank(), m.cols())).h;
}

IntMatrix saturate(const IntMatrix& gens) { return kernel_basis_int(kernel_basis_int(gens)); }

IntMatrix lattice_basis(const IntMatrix& m) {
  HermiteForm hf = hnf(m);
  return hf.h.row_range(0, hf.rank());
}

std::optional<IntVector> solve_int(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_int: right-hand side length mismatch");
  // u * m^T = h  =>  m = h^T * u^{-T}; with x = u^T y the system becomes h^T y = b.
  const HermiteForm hf = hnf(m.transpose());
  IntVector y(m.cols());
  for (std::size_t k = 0; k < hf.rank(); ++k) {
    const std::size_t pc = hf.pivot_cols[k];
    Int rhs = b[pc];
    for (std::size_t kk = 0; kk < k; ++kk) rhs -= hf.h(kk, pc) * y[kk];
    if (!mpz_divisible_p(rhs.get_mpz_t(), hf.h(k, pc).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[k].get_mpz_t(), rhs.get_mpz_t(), hf.h(k, pc).get_mpz_t());
  }
  IntVector x = hf.u.transpose() * y;
  if (m * x != b) return std::nullopt;
  return x;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  return bareiss_rank(a);
}

std::size_t rank(const RatMatrix& m) {
  IntMatrix a = primitive_integer_rows(m);
  return bareiss_rank(a);
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a(i, j) = a(c, c) * a(i, j) - a(i, c) * a(c, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(c, c);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

bool is_surjective(const IntMatrix& m) {
  if (m.rows() > m.cols()) return false;
  if (m.rows() == 0) return true;
  const SmithForm sf = snf(m);
  for (const Int& d : sf.invariant_factors())
    if (d != 1) return false;
  return true;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse_unimodular: matrix not square");
  HermiteForm hf = hnf(m);
  if (!(hf.h == IntMatrix::identity(m.rows())))
    throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
  return hf.u;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

Int content(std::span<const Int> v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntMatrix primitive_integer_rows(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat scaled = m(i, j) * l;
      out(i, j) = scaled.get_num();
    }
    Int g = content(out.row(i));
    if (g > 1)
      for (std::size_t j = 0; j < m.cols(); ++j) mpz_divexact(out(i, j).get_mpz_t(), out(i, j).get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

EchelonForm rref(const RatMatrix& m) {
  RatMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    const Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {a.row_range(0, r), std::move(pivots)};
}

RatMatrix nullspace(const RatMatrix& m) {
  const EchelonForm e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  RatMatrix out(m.cols() - e.pivot_cols.size(), m.cols());
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    out(k, free) = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) out(k, e.pivot_cols[i]) = -e.r(i, free);
    ++k;
  }
  return out;
}

std::optional<RatVector> solve_rat(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_rat: right-hand side length mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const EchelonForm e = rref(aug);
  RatVector x(m.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    if (e.pivot_cols[i] == m.cols()) return std::nullopt;
    x[e.pivot_cols[i]] = e.r(i, m.cols());
  }
  return x;
}

RationalSubspace RationalSubspace::span(const RatMatrix& generators) {
  RationalSubspace s(generators.cols());
  s.basis_ = rref(generators).r;
  if (s.basis_.rows() == 0) s.basis_ = RatMatrix(0, generators.cols());
  return s;
}

bool RationalSubspace::contains(const RatVector& v) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("RationalSubspace::contains: dimension mismatch");
  RatMatrix m = basis_;
  m.append_row(v);
  return rank(m) == dim();
}

bool RationalSubspace::contains(const RationalSubspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("RationalSubspace::contains: dimension mismatch");
  return rank(vstack(basis_, other.basis_)) == dim();
}

RationalSubspace RationalSubspace::operator+(const RationalSubspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("RationalSubspace sum: dimension mismatch");
  RatMatrix stacked = vstack(basis_, other.basis_);
  if (stacked.rows() == 0) return RationalSubspace(ambient_dim_);
  return span(stacked);
}

bool is_direct_sum(std::span<const RationalSubspace> parts) {
  if (parts.empty()) return true;
  std::size_t total = 0;
  RatMatrix stacked(0, parts.front().ambient_dim());
  for (const auto& p : parts) {
    total += p.dim();
    stacked = vstack(stacked, p.basis());
  }
  return rank(stacked) == total;
}

}  // namespace dualdefect
