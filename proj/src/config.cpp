#include "dualdefect/config.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dualdefect/errors.hpp"

namespace dualdefect {

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector difference: length mismatch");
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector sum: length mismatch");
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
  return d;
}

PointConfig::PointConfig(std::size_t dim, std::vector<IntVector> points, std::string name)
    : dim_(dim), points_(std::move(points)), name_(std::move(name)) {
  for (const auto& p : points_)
    if (p.size() != dim_)
      throw DimensionError("point " + to_string(p) + " does not have dimension " + std::to_string(dim_));
  std::sort(points_.begin(), points_.end());
  const std::size_t before = points_.size();
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  duplicates_removed_ = before - points_.size();
}

PointConfig PointConfig::from_longs(std::size_t dim, std::initializer_list<std::initializer_list<long>> points,
                                    std::string name) {
  std::vector<IntVector> pts;
  for (const auto& p : points) {
    IntVector v;
    for (long x : p) v.emplace_back(x);
    pts.push_back(std::move(v));
  }
  return PointConfig(dim, std::move(pts), std::move(name));
}

std::optional<std::size_t> PointConfig::index_of(const IntVector& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

GroupHom::GroupHom(IntMatrix m, std::optional<IntVector> t) : matrix(std::move(m)), translation(std::move(t)) {
  if (translation && translation->size() != matrix.rows())
    throw DimensionError("GroupHom: translation length differs from codomain rank");
}

IntVector GroupHom::operator()(const IntVector& x) const {
  if (x.size() != matrix.cols()) throw DimensionError("GroupHom: argument has wrong rank");
  IntVector y = matrix * x;
  if (translation)
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += (*translation)[i];
  return y;
}

bool GroupHom::is_linear() const {
  if (!translation) return true;
  return std::all_of(translation->begin(), translation->end(), [](const Int& v) { return v == 0; });
}

GroupHom GroupHom::after(const GroupHom& inner) const {
  if (inner.codomain_rank() != domain_rank()) throw DimensionError("GroupHom composition: rank mismatch");
  GroupHom out(matrix * inner.matrix);
  if (translation || inner.translation) {
    IntVector t(codomain_rank());
    if (inner.translation) t = matrix * *inner.translation;
    if (translation) t = t + *translation;
    out.translation = std::move(t);
  }
  return out;
}

GroupHom GroupHom::inverse() const {
  GroupHom out(inverse_unimodular(matrix));
  if (translation) {
    IntVector t = out.matrix * *translation;
    for (auto& v : t) v = -v;
    out.translation = std::move(t);
  }
  return out;
}

IntMatrix difference_matrix(const PointConfig& a) {
  IntMatrix d(a.size(), a.dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) d(i, j) = a[i][j] - a[0][j];
  return d;
}

IntMatrix difference_lattice(const PointConfig& a) {
  if (a.empty()) throw std::invalid_argument("difference_lattice: empty configuration");
  return lattice_basis(difference_matrix(a));
}

bool spans_lattice(const PointConfig& a) {
  return !a.empty() && difference_lattice(a) == IntMatrix::identity(a.dim());
}

Normalization normalize(const PointConfig& a) {
  if (a.empty()) throw std::invalid_argument("normalize: empty configuration");
  const IntMatrix lat = difference_lattice(a);
  const std::size_t m = lat.rows();
  const HermiteForm hf = hnf(lat);

  // Canonical representative of the anchor modulo the lattice.
  IntVector t = a[0];
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t pc = hf.pivot_cols[k];
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), t[pc].get_mpz_t(), lat(k, pc).get_mpz_t());
    for (std::size_t j = 0; j < a.dim(); ++j) t[j] -= q * lat(k, j);
  }

  const IntMatrix basis_t = lat.transpose();
  std::vector<IntVector> pts;
  pts.reserve(a.size());
  for (const auto& u : a.points()) {
    auto y = solve_int(basis_t, u - t);
    if (!y) throw std::logic_error("normalize: point outside its own affine lattice");
    pts.push_back(std::move(*y));
  }
  const bool zero_t = std::all_of(t.begin(), t.end(), [](const Int& v) { return v == 0; });
  GroupHom theta(basis_t, zero_t ? std::nullopt : std::optional<IntVector>(t));
  return {PointConfig(m, std::move(pts), a.name()), std::move(theta)};
}

PointConfig apply_affine(const PointConfig& a, const GroupHom& f, bool dedupe) {
  if (f.domain_rank() != a.dim()) throw DimensionError("apply_affine: map domain differs from configuration rank");
  std::vector<IntVector> pts;
  pts.reserve(a.size());
  for (const auto& u : a.points()) pts.push_back(f(u));
  PointConfig out(f.codomain_rank(), std::move(pts), a.name());
  if (!dedupe && out.size() != a.size()) throw CollapseError("apply_affine: map identifies distinct points");
  return out;
}

namespace {

// Multiset of contents of u - w over the other points w; invariant under
// GL(Z^m) and translations.
std::vector<std::vector<Int>> content_signatures(const PointConfig& a) {
  std::vector<std::vector<Int>> sig(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) {
        IntVector d = a[j] - a[i];
        sig[i].push_back(content(d));
      }
    std::sort(sig[i].begin(), sig[i].end());
  }
  return sig;
}

// Both configurations span Z^m affinely; searches the images of an affine basis.
std::optional<GroupHom> find_lattice_isomorphism(const PointConfig& a, const PointConfig& b) {
  const std::size_t m = a.dim();
  if (b.dim() != m || a.size() != b.size()) return std::nullopt;
  if (m == 0) return GroupHom(IntMatrix(0, 0));

  std::vector<std::size_t> basis{0};
  {
    IntMatrix acc(0, m);
    for (std::size_t i = 1; i < a.size() && basis.size() < m + 1; ++i) {
      IntMatrix trial = acc;
      trial.append_row(a[i] - a[0]);
      if (rank(trial) > acc.rows()) {
        acc = std::move(trial);
        basis.push_back(i);
      }
    }
  }
  const auto sig_a = content_signatures(a);
  const auto sig_b = content_signatures(b);
  const std::set<IntVector> target(b.points().begin(), b.points().end());

  RatMatrix da(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) da(i, k) = Rat(a[basis[k + 1]][i] - a[basis[0]][i]);
  const RatMatrix da_t = da.transpose();

  std::vector<std::size_t> image(basis.size());
  std::vector<bool> used(b.size(), false);
  std::optional<GroupHom> found;

  std::function<void(std::size_t)> assign = [&](std::size_t pos) {
    if (found) return;
    if (pos == basis.size()) {
      IntMatrix u(m, m);
      for (std::size_t row = 0; row < m; ++row) {
        RatVector rhs(m);
        for (std::size_t k = 0; k < m; ++k) rhs[k] = Rat(b[image[k + 1]][row] - b[image[0]][row]);
        auto sol = solve_rat(da_t, rhs);
        if (!sol) return;
        for (std::size_t j = 0; j < m; ++j) {
          if ((*sol)[j].get_den() != 1) return;
          u(row, j) = (*sol)[j].get_num();
        }
      }
      if (!is_unimodular(u)) return;
      IntVector t = b[image[0]] - u * a[basis[0]];
      GroupHom f(u, t);
      for (const auto& p : a.points())
        if (!target.count(f(p))) return;
      found = std::move(f);
      return;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || sig_b[j] != sig_a[basis[pos]]) continue;
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q)
        ok = content(a[basis[pos]] - a[basis[q]]) == content(b[j] - b[image[q]]);
      if (!ok) continue;
      used[j] = true;
      image[pos] = j;
      assign(pos + 1);
      used[j] = false;
      if (found) return;
    }
  };
  assign(0);
  return found;
}

}  // namespace

std::optional<GroupHom> affine_equivalent(const PointConfig& a, const PointConfig& b) {
  if (a.empty() || b.empty()) return std::nullopt;
  const Normalization na = normalize(a);
  const Normalization nb = normalize(b);
  auto phi = find_lattice_isomorphism(na.config, nb.config);
  if (!phi) return std::nullopt;
  // When both sides span their lattices theta is the identity, so phi already
  // acts on the original coordinates.
  return phi;
}

}  // namespace dualdefect
