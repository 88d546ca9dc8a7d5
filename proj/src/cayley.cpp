#include "dualdefect/cayley.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dualdefect/errors.hpp"

#ifdef DUALDEFECT_HAVE_OPENMP
#include <omp.h>
#endif

namespace dualdefect {

PointConfig cayley_sum(std::span<const PointConfig> fibers) {
  if (fibers.empty()) throw std::invalid_argument("cayley_sum: need at least one fiber");
  const std::size_t d = fibers.front().dim();
  const std::size_t r = fibers.size() - 1;
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    if (fibers[i].dim() != d) throw DimensionError("cayley_sum: fibers live in different dimensions");
    if (fibers[i].empty()) throw std::invalid_argument("cayley_sum: empty fiber");
    for (const auto& u : fibers[i].points()) {
      IntVector p = u;
      p.resize(d + r);
      if (i > 0) p[d + i - 1] = 1;
      pts.push_back(std::move(p));
    }
  }
  return PointConfig(d + r, std::move(pts));
}

RationalSubspace difference_space(const PointConfig& a) {
  if (a.empty()) return RationalSubspace(a.dim());
  return RationalSubspace::span(difference_matrix(a));
}

RationalSubspace difference_space(const PointConfig& a, std::span<const std::size_t> subset) {
  IntMatrix d(0, a.dim());
  for (std::size_t k = 1; k < subset.size(); ++k) d.append_row(a[subset[k]] - a[subset[0]]);
  if (d.rows() == 0) return RationalSubspace(a.dim());
  return RationalSubspace::span(d);
}

bool is_join_type(std::span<const PointConfig> fibers) {
  if (fibers.empty()) return true;
  std::vector<RationalSubspace> spaces;
  for (const auto& f : fibers) {
    if (f.dim() != fibers.front().dim()) throw DimensionError("is_join_type: fibers live in different dimensions");
    spaces.push_back(difference_space(f));
  }
  return is_direct_sum(spaces);
}

Partition partition_from_labels(std::span<const std::size_t> labels) {
  Partition parts;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= parts.size()) parts.resize(labels[i] + 1);
    parts[labels[i]].push_back(i);
  }
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return parts;
}

CayleyStructure decompose_along(const PointConfig& a, const GroupHom& pi) {
  if (pi.domain_rank() != a.dim()) throw DimensionError("decompose_along: pi does not act on the configuration");
  if (!spans_lattice(a)) throw std::invalid_argument("decompose_along: configuration must span Z^n affinely");
  if (!pi.is_surjective()) throw std::invalid_argument("decompose_along: pi is not surjective");
  const std::size_t n = a.dim();
  const std::size_t r = pi.codomain_rank();

  std::map<IntVector, std::vector<std::size_t>> fibers_by_image;
  for (std::size_t i = 0; i < a.size(); ++i) fibers_by_image[pi(a[i])].push_back(i);
  Partition parts;
  for (auto& [img, idx] : fibers_by_image) parts.push_back(idx);
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  if (parts.size() != r + 1)
    throw NotSimplexImage("pi(A) has " + std::to_string(parts.size()) + " points, expected " + std::to_string(r + 1));

  const IntVector y0 = pi(a[parts[0].front()]);
  IntMatrix edges(r, r);
  for (std::size_t i = 1; i <= r; ++i) {
    const IntVector yi = pi(a[parts[i].front()]) - y0;
    for (std::size_t k = 0; k < r; ++k) edges(k, i - 1) = yi[k];
  }
  if (!is_unimodular(edges)) throw NotSimplexImage("pi(A) is not Z-affinely equivalent to the standard simplex");
  const IntMatrix g = inverse_unimodular(edges);

  CayleyStructure out;
  out.base = a;
  out.r = r;
  out.parts = parts;
  out.pi = pi;
  out.kernel_basis = kernel_basis_int(pi.matrix);

  // Basis of Z^n: kernel basis followed by a section of pi.
  IntMatrix frame = out.kernel_basis;
  for (std::size_t j = 0; j < r; ++j) {
    IntVector e(r);
    e[j] = 1;
    auto s = solve_int(pi.matrix, e);
    if (!s) throw std::logic_error("decompose_along: surjective map without a section");
    frame.append_row(*s);
  }
  const IntMatrix to_frame = inverse_unimodular(frame.transpose());  // u -> (kernel coords, pi_lin(u))

  IntMatrix f(n, n);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = to_frame(i, j);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < r; ++k) f(n - r + i, j) += g(i, k) * to_frame(n - r + k, j);
  const IntVector lin0 = pi.linear(a[parts[0].front()]);
  IntVector shift = g * lin0;
  IntVector t(n);
  for (std::size_t i = 0; i < r; ++i) t[n - r + i] = -shift[i];
  out.section_frame = GroupHom(f, t);

  IntVector gt = g * y0;
  for (auto& v : gt) v = -v;
  out.simplex_frame = GroupHom(g, gt);

  for (const auto& part : parts) {
    std::vector<IntVector> pts;
    for (std::size_t idx : part) {
      IntVector img = out.section_frame(a[idx]);
      img.resize(n - r);
      pts.push_back(std::move(img));
    }
    out.fibers.emplace_back(n - r, std::move(pts));
  }
  if (!(apply_affine(a, out.section_frame) == cayley_sum(out.fibers)))
    throw std::logic_error("decompose_along: section frame does not produce the Cayley sum");
  return out;
}

bool join_type_wrt(const PointConfig& a, const GroupHom& pi1, const GroupHom& pi2) {
  if (!pi1.is_surjective()) throw std::invalid_argument("join_type_wrt: pi1 is not surjective");
  const CayleyStructure s = decompose_along(a, pi2.after(pi1));
  std::vector<RationalSubspace> images;
  for (const auto& part : s.parts) {
    IntMatrix d(0, pi1.codomain_rank());
    const IntVector base = pi1(a[part.front()]);
    for (std::size_t k = 1; k < part.size(); ++k) d.append_row(pi1(a[part[k]]) - base);
    images.push_back(d.rows() ? RationalSubspace::span(d) : RationalSubspace(pi1.codomain_rank()));
  }
  return is_direct_sum(images);
}

std::optional<GroupHom> projection_from_partition(const PointConfig& a, const Partition& parts) {
  if (parts.empty()) return std::nullopt;
  const std::size_t n = a.dim();
  const std::size_t r = parts.size() - 1;
  std::vector<std::size_t> label(a.size(), a.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t idx : parts[i]) label[idx] = i;
  const IntVector& base = a[parts[0].front()];
  const IntMatrix d = [&] {
    IntMatrix m(a.size(), n);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i][j] - base[j];
    return m;
  }();
  IntMatrix p(r, n);
  for (std::size_t i = 1; i <= r; ++i) {
    IntVector target(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) target[k] = label[k] == i ? 1 : 0;
    auto row = solve_int(d, target);
    if (!row) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) p(i - 1, j) = (*row)[j];
  }
  if (!is_surjective(p)) return std::nullopt;
  return GroupHom(p);
}

namespace {

// Incremental validity test for labelings (restricted growth strings).
// Points are expressed in an affine basis b_0 = point 0, b_1..b_n; a labeling
// is realizable by a linear map with part i -> e_i iff every other point u
// satisfies  sum_{k : label(b_k) = i} lambda_{u,k} = [label(u) = i]  for i >= 1.
class LabelingChecker {
 public:
  explicit LabelingChecker(const PointConfig& a) : size_(a.size()), dim_(a.dim()) {
    basis_.push_back(0);
    IntMatrix acc(0, dim_);
    for (std::size_t i = 1; i < size_ && basis_.size() < dim_ + 1; ++i) {
      IntMatrix trial = acc;
      trial.append_row(a[i] - a[0]);
      if (rank(trial) > acc.rows()) {
        acc = std::move(trial);
        basis_.push_back(i);
      }
    }
    if (basis_.size() != dim_ + 1) throw std::invalid_argument("enumeration: configuration must span Z^n affinely");
    const std::size_t last_basis = basis_.back();

    RatMatrix d(dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k)
      for (std::size_t i = 0; i < dim_; ++i) d(i, k) = Rat(a[basis_[k + 1]][i] - a[0][i]);
    inverse_ = RatMatrix(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      RatVector e(dim_);
      e[j] = 1;
      auto col = solve_rat(d, e);
      for (std::size_t i = 0; i < dim_; ++i) inverse_(i, j) = (*col)[i];
    }

    std::vector<bool> in_basis(size_, false);
    for (std::size_t b : basis_) in_basis[b] = true;
    checks_at_.resize(size_);
    num_.resize(size_);
    den_.resize(size_);
    for (std::size_t u = 1; u < size_; ++u) {
      if (in_basis[u]) continue;
      const RatVector lambda = inverse_ * to_rational(a[u] - a[0]);
      Int l = 1;
      for (const auto& x : lambda) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
      den_[u] = l;
      for (const auto& x : lambda) num_[u].push_back(Rat(x * l).get_num());
      checks_at_[std::max(u, last_basis)].push_back(u);
    }
  }

  std::size_t size() const { return size_; }
  std::size_t max_label() const { return dim_; }

  // Checks everything that becomes decidable once labels[0..j] are set.
  bool accepts(std::size_t j, std::span<const std::size_t> labels, std::size_t num_labels) const {
    if (checks_at_[j].empty()) return true;
    std::vector<Int> acc(num_labels);
    for (std::size_t u : checks_at_[j]) {
      std::fill(acc.begin(), acc.end(), Int(0));
      for (std::size_t k = 0; k < dim_; ++k) acc[labels[basis_[k + 1]]] += num_[u][k];
      for (std::size_t i = 1; i < num_labels; ++i) {
        if (labels[u] == i) {
          if (acc[i] != den_[u]) return false;
        } else if (acc[i] != 0) {
          return false;
        }
      }
    }
    return true;
  }

  // pi = Phi * D^{-1}, where column k of Phi is e_{label(b_k)} (zero for part 0).
  GroupHom projection(std::span<const std::size_t> labels, std::size_t r) const {
    RatMatrix q(r, dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::size_t lab = labels[basis_[k + 1]];
      if (lab == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) q(lab - 1, j) += inverse_(k, j);
    }
    IntMatrix p(r, dim_);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        if (q(i, j).get_den() != 1) throw std::logic_error("enumeration: non-integral projection");
        p(i, j) = q(i, j).get_num();
      }
    return GroupHom(p);
  }

 private:
  std::size_t size_;
  std::size_t dim_;
  std::vector<std::size_t> basis_;
  RatMatrix inverse_;
  std::vector<std::vector<std::size_t>> checks_at_;
  std::vector<std::vector<Int>> num_;
  std::vector<Int> den_;
};

using Labeling = std::vector<std::size_t>;

// Depth-first completion of labels[0..j) in lexicographic order.
void complete(const LabelingChecker& chk, Labeling& labels, std::size_t j, std::size_t num_labels,
              std::size_t stop, std::vector<Labeling>& out) {
  if (j == stop) {
    out.push_back(labels);
    return;
  }
  const std::size_t top = std::min(num_labels, chk.max_label());
  for (std::size_t lab = 0; lab <= top; ++lab) {
    labels[j] = lab;
    const std::size_t nl = std::max(num_labels, lab + 1);
    if (chk.accepts(j, labels, nl)) complete(chk, labels, j + 1, nl, stop, out);
  }
  labels[j] = 0;
}

std::size_t count_labels(const Labeling& l) { return *std::max_element(l.begin(), l.end()) + 1; }

CayleyStructure structure_from_labels(const PointConfig& a, const LabelingChecker& chk, const Labeling& labels) {
  const std::size_t r = count_labels(labels) - 1;
  return decompose_along(a, chk.projection(labels, r));
}

void check_limit(const PointConfig& a, std::size_t limit) {
  if (a.size() > limit)
    throw TooLarge("enumeration over " + std::to_string(a.size()) + " points exceeds the limit of " +
                   std::to_string(limit));
}

}  // namespace

std::vector<CayleyStructure> enumerate_simplex_projections_serial(const PointConfig& a, std::size_t limit) {
  check_limit(a, limit);
  const LabelingChecker chk(a);
  Labeling labels(a.size(), 0);
  std::vector<Labeling> valid;
  complete(chk, labels, 1, 1, a.size(), valid);
  std::vector<CayleyStructure> out;
  out.reserve(valid.size());
  for (const auto& l : valid) out.push_back(structure_from_labels(a, chk, l));
  return out;
}

std::vector<CayleyStructure> enumerate_simplex_projections(const PointConfig& a, std::size_t limit) {
  check_limit(a, limit);
  const LabelingChecker chk(a);
  const std::size_t n_points = a.size();
  // Valid prefixes, in lexicographic order, are completed independently.
  const std::size_t prefix_len = std::min<std::size_t>(n_points, 6);
  Labeling labels(n_points, 0);
  std::vector<Labeling> prefixes;
  complete(chk, labels, 1, 1, prefix_len, prefixes);

  const long n_prefix = static_cast<long>(prefixes.size());
  std::vector<std::vector<CayleyStructure>> per_prefix(prefixes.size());
  std::exception_ptr failure;
#ifdef DUALDEFECT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long p = 0; p < n_prefix; ++p) {
    try {
      Labeling local = prefixes[p];
      std::vector<Labeling> done;
      complete(chk, local, prefix_len, count_labels(prefixes[p]), n_points, done);
      for (const auto& l : done) per_prefix[p].push_back(structure_from_labels(a, chk, l));
    } catch (...) {
#ifdef DUALDEFECT_HAVE_OPENMP
#pragma omp critical(dualdefect_enum_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<CayleyStructure> out;
  for (auto& v : per_prefix)
    for (auto& s : v) out.push_back(std::move(s));
  return out;
}

std::vector<Partition> enumerate_simplex_partitions_bruteforce(const PointConfig& a) {
  std::vector<Partition> out;
  if (a.empty()) return out;
  Labeling labels(a.size(), 0);
  // Plain restricted growth string recursion without pruning.
  auto rec = [&](auto&& self, std::size_t j, std::size_t num_labels) -> void {
    if (j == a.size()) {
      Partition parts = partition_from_labels(labels);
      if (projection_from_partition(a, parts)) out.push_back(std::move(parts));
      return;
    }
    for (std::size_t lab = 0; lab <= num_labels; ++lab) {
      labels[j] = lab;
      self(self, j + 1, std::max(num_labels, lab + 1));
    }
  };
  rec(rec, 1, 1);
  return out;
}

}  // namespace dualdefect
