#include "dualdefect/alpha.hpp"

#include <algorithm>
#include <stdexcept>

#include "dualdefect/errors.hpp"

namespace dualdefect {

namespace {

constexpr std::uint64_t kAlphaSalt = 0xA1FA;
constexpr std::uint64_t kStarSalt = 0x57A2;
constexpr std::uint64_t kVprimeSalt = 0x7E1E;

struct KSample {
  IntMatrix comps;  // (r+1) x m, integer multiple of the components of a K element
  std::size_t rank = 0;
};

std::vector<KSample> draw(const AlphaProblem& p, const SamplingPolicy& policy, std::uint64_t salt) {
  const IntMatrix basis = primitive_integer_rows(p.k_basis);
  const std::size_t m = p.width();
  const std::size_t blocks = p.summands.size();
  CoefficientSampler sampler(policy.seed, salt, policy.bound);
  const auto ts = sampler.batch(policy.trials, basis.rows());
  std::vector<KSample> out(ts.size());
  const long n_trials = static_cast<long>(ts.size());
#ifdef DUALDEFECT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long t = 0; t < n_trials; ++t) {
    const IntVector k = combine_rows(basis, ts[t]);
    IntMatrix c(blocks, m);
    for (std::size_t i = 0; i < blocks; ++i)
      for (std::size_t j = 0; j < m; ++j) c(i, j) = k[i * m + j];
    out[t].rank = rank(c);
    out[t].comps = std::move(c);
  }
  return out;
}

std::size_t max_rank(const std::vector<KSample>& s) {
  std::size_t best = 0;
  for (const auto& x : s) best = std::max(best, x.rank);
  return best;
}

// (*) on one sample: dropping any two components keeps the span.
bool star_holds(const IntMatrix& comps, std::size_t full_rank) {
  const std::size_t n = comps.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntMatrix rest(0, comps.cols());
      for (std::size_t l = 0; l < n; ++l)
        if (l != i && l != j) rest.append_row(comps.row(l));
      if (rank(rest) != full_rank) return false;
    }
  return true;
}

}  // namespace

AlphaProblem AlphaProblem::make(std::vector<RationalSubspace> summands, SamplingPolicy policy,
                                std::optional<RationalSubspace> ambient) {
  if (summands.empty()) throw std::invalid_argument("AlphaProblem: no summands");
  const std::size_t m = summands.front().ambient_dim();
  RationalSubspace v(m);
  for (const auto& s : summands) {
    if (s.ambient_dim() != m) throw DimensionError("AlphaProblem: summands in different ambient spaces");
    v = v + s;
  }
  if (ambient) {
    if (ambient->ambient_dim() != m || !ambient->contains(v))
      throw std::invalid_argument("AlphaProblem: summands are not contained in the ambient subspace");
    v = *ambient;
  }
  AlphaProblem p;
  p.ambient = v;
  p.k_basis = k_space(summands);
  p.summands = std::move(summands);
  p.policy = policy;
  return p;
}

RatMatrix AlphaProblem::components(std::span<const Rat> k_element) const {
  const std::size_t m = width();
  RatMatrix c(summands.size(), m);
  for (std::size_t i = 0; i < summands.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) c(i, j) = k_element[i * m + j];
  return c;
}

RatMatrix k_space(std::span<const RationalSubspace> summands) {
  if (summands.empty()) return RatMatrix();
  const std::size_t m = summands.front().ambient_dim();
  // Stack the bases; a kernel vector of the stacked transpose gives
  // coefficients c with sum_i c_i * basis(V_i) = 0.
  RatMatrix stacked(0, m);
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const RatMatrix& b = summands[i].basis();
    for (std::size_t k = 0; k < b.rows(); ++k) {
      stacked.append_row(b.row(k));
      owner.push_back(i);
    }
  }
  const std::size_t width = summands.size() * m;
  if (stacked.rows() == 0) return RatMatrix(0, width);
  const RatMatrix coeffs = nullspace(stacked.transpose());
  RatMatrix k(coeffs.rows(), width);
  for (std::size_t row = 0; row < coeffs.rows(); ++row)
    for (std::size_t s = 0; s < stacked.rows(); ++s) {
      if (coeffs(row, s) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) k(row, owner[s] * m + j) += coeffs(row, s) * stacked(s, j);
    }
  return k;
}

std::size_t alpha(const AlphaProblem& p) {
  if (p.k_basis.rows() == 0) return 0;
  return max_rank(draw(p, p.policy, kAlphaSalt));
}

bool check_star(const AlphaProblem& p) {
  if (p.k_basis.rows() == 0) return true;
  for (unsigned step = 0; step <= kEscalations; ++step) {
    const auto samples = draw(p, p.policy.escalated(step), kStarSalt);
    const std::size_t best = max_rank(samples);
    std::optional<bool> verdict;
    bool consistent = true;
    for (const auto& s : samples) {
      if (s.rank != best) continue;
      const bool v = star_holds(s.comps, best);
      if (verdict && *verdict != v) {
        consistent = false;
        break;
      }
      verdict = v;
    }
    if (consistent) return *verdict;
  }
  throw GenericityFailure("check_star: samples disagree after " + std::to_string(kEscalations) +
                          " escalations of the coefficient bound");
}

bool direct_modulo(std::span<const RationalSubspace> summands, const RationalSubspace& w) {
  std::size_t total = 0;
  RationalSubspace sum = w;
  for (const auto& s : summands) {
    total += (s + w).dim() - w.dim();
    sum = sum + s;
  }
  return sum.dim() - w.dim() == total;
}

RationalSubspace vprime(const AlphaProblem& p) {
  if (p.k_basis.rows() == 0) return RationalSubspace(p.width());
  const std::size_t a = alpha(p);
  for (unsigned step = 0; step <= kEscalations; ++step) {
    const auto samples = draw(p, p.policy.escalated(step), kVprimeSalt + step);
    for (const auto& s : samples) {
      if (s.rank != a) continue;
      RationalSubspace v = RationalSubspace::span(s.comps);
      if (direct_modulo(p.summands, v)) return v;
    }
  }
  throw GenericityFailure("vprime: no sampled K element gave a quotient where the summands sum directly");
}

RationalSubspace component_span(const AlphaProblem& p) {
  const std::size_t m = p.width();
  RatMatrix gens(0, m);
  for (std::size_t row = 0; row < p.k_basis.rows(); ++row) {
    const RatMatrix c = p.components(p.k_basis.row(row));
    for (std::size_t i = 0; i < c.rows(); ++i) gens.append_row(c.row(i));
  }
  if (gens.rows() == 0) return RationalSubspace(m);
  return RationalSubspace::span(gens);
}

}  // namespace dualdefect
