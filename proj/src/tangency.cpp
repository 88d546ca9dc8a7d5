#include "dualdefect/tangency.hpp"

#include <algorithm>
#include <map>

#include "dualdefect/errors.hpp"

namespace dualdefect {

namespace {

constexpr std::uint64_t kOracleSalt = 0x0AC1E;
constexpr std::uint64_t kGroupingSalt = 0x6E0;
constexpr std::uint64_t kSliceSalt = 0x511CE;

IntMatrix integer_basis(const RatMatrix& m) { return primitive_integer_rows(m); }

struct Sample {
  IntVector coeffs;
  IntMatrix hessian;
  std::size_t rank = 0;
};

std::vector<Sample> draw(const PointConfig& a, const IntMatrix& basis, const SamplingPolicy& policy,
                         std::uint64_t salt, bool parallel) {
  CoefficientSampler sampler(policy.seed, salt, policy.bound);
  const auto ts = sampler.batch(policy.trials, basis.rows());
  std::vector<Sample> out(ts.size());
  const long n_trials = static_cast<long>(ts.size());
#ifdef DUALDEFECT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (long t = 0; t < n_trials; ++t) {
    out[t].coeffs = combine_rows(basis, ts[t]);
    out[t].hessian = hessian(a, out[t].coeffs);
    out[t].rank = rank(out[t].hessian);
  }
  (void)parallel;
  return out;
}

DefectResult oracle_impl(const TangencyProblem& p, bool parallel) {
  DefectResult out;
  if (p.tangency_basis.rows() == 0) return out;
  const IntMatrix basis = integer_basis(p.tangency_basis);
  const auto samples = draw(p.config, basis, p.policy, kOracleSalt, parallel);
  std::size_t best = 0;
  for (std::size_t t = 1; t < samples.size(); ++t)
    if (samples[t].rank > samples[best].rank) best = t;
  out.status = DefectStatus::Computed;
  out.delta = p.config.dim() - samples[best].rank;
  out.rank_witness = samples[best].coeffs;
  out.samples_used = samples.size();
  return out;
}

Partition group_by_kernel(const PointConfig& a, const RationalSubspace& kernel) {
  const RatMatrix& k = kernel.basis();
  std::map<RatVector, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < a.size(); ++i) groups[k * to_rational(a[i])].push_back(i);
  Partition parts;
  for (auto& [sig, idx] : groups) parts.push_back(std::move(idx));
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return parts;
}

}  // namespace

TangencyProblem TangencyProblem::make(const PointConfig& config, SamplingPolicy policy) {
  return {config, tangency_space(config), policy};
}

RatMatrix tangency_space(const PointConfig& a) {
  RatMatrix conditions(a.dim() + 1, a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    conditions(0, j) = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) conditions(i + 1, j) = a[j][i];
  }
  RatMatrix ns = nullspace(conditions);
  if (ns.rows() == 0) return RatMatrix(0, a.size());
  return to_rational(primitive_integer_rows(ns));
}

RatMatrix hessian(const PointConfig& a, const RatVector& coeffs) {
  if (coeffs.size() != a.size())
    throw ArityError("hessian: " + std::to_string(coeffs.size()) + " coefficients for " + std::to_string(a.size()) +
                     " points");
  const std::size_t n = a.dim();
  RatMatrix h(n, n);
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (coeffs[u] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[u][i] == 0) continue;
      const Rat ci = coeffs[u] * a[u][i];
      for (std::size_t j = 0; j < n; ++j) h(i, j) += ci * a[u][j];
    }
  }
  return h;
}

IntMatrix hessian(const PointConfig& a, const IntVector& coeffs) {
  if (coeffs.size() != a.size())
    throw ArityError("hessian: " + std::to_string(coeffs.size()) + " coefficients for " + std::to_string(a.size()) +
                     " points");
  const std::size_t n = a.dim();
  IntMatrix h(n, n);
  Int ci;
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (coeffs[u] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[u][i] == 0) continue;
      ci = coeffs[u] * a[u][i];
      for (std::size_t j = i; j < n; ++j) h(i, j) += ci * a[u][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = h(j, i);
  return h;
}

DefectResult defect_oracle(const TangencyProblem& p) { return oracle_impl(p, true); }
DefectResult defect_oracle_serial(const TangencyProblem& p) { return oracle_impl(p, false); }

ContactGrouping contact_grouping(const TangencyProblem& p) {
  if (p.tangency_basis.rows() == 0) throw std::invalid_argument("contact_grouping: the tangency space is zero");
  const IntMatrix basis = integer_basis(p.tangency_basis);
  for (unsigned step = 0; step <= kEscalations; ++step) {
    const SamplingPolicy policy = p.policy.escalated(step);
    const auto samples = draw(p.config, basis, policy, kGroupingSalt, true);
    std::optional<ContactGrouping> agreed;
    bool consistent = true;
    for (const auto& s : samples) {
      const RationalSubspace kernel = RationalSubspace::span(nullspace(to_rational(s.hessian)));
      Partition parts = group_by_kernel(p.config, kernel);
      if (!agreed) {
        agreed = ContactGrouping{std::move(parts), kernel, policy};
      } else if (agreed->kernel.dim() != kernel.dim() || agreed->parts != parts) {
        consistent = false;
        break;
      }
    }
    if (consistent && agreed) {
      if (agreed->kernel.dim() == 0) agreed->kernel = RationalSubspace(p.config.dim());
      return *agreed;
    }
  }
  throw GenericityFailure("contact_grouping: samples disagree after " + std::to_string(kEscalations) +
                          " escalations of the coefficient bound");
}

std::size_t slice_contact_dim(std::span<const PointConfig> fibers, SamplingPolicy policy) {
  const PointConfig sum = cayley_sum(fibers);
  const std::size_t r = fibers.size() - 1;
  const std::size_t d = fibers.front().dim();
  const RatMatrix l = tangency_space(sum);
  if (l.rows() == 0) return r;
  const IntMatrix basis = integer_basis(l);

  // Which fiber each point of the sum came from: read off the simplex coordinates.
  std::vector<std::size_t> fiber_of(sum.size(), 0);
  for (std::size_t k = 0; k < sum.size(); ++k)
    for (std::size_t i = 0; i < r; ++i)
      if (sum[k][d + i] == 1) fiber_of[k] = i + 1;

  CoefficientSampler sampler(policy.seed, kSliceSalt, policy.bound);
  std::size_t best = 0;
  for (unsigned t = 0; t < policy.trials; ++t) {
    const IntVector a = combine_rows(basis, sampler.next(basis.rows()));
    IntMatrix m(r + 1, d);
    for (std::size_t k = 0; k < sum.size(); ++k)
      for (std::size_t j = 0; j < d; ++j) m(fiber_of[k], j) += a[k] * sum[k][j];
    best = std::max(best, rank(m));
  }
  return r - best;
}

}  // namespace dualdefect
