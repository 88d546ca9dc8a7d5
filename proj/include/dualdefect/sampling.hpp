#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dualdefect/exact_linalg.hpp"

namespace dualdefect {

inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;
inline constexpr long kDefaultBound = 1L << 20;
inline constexpr unsigned kDefaultTrials = 3;
// Number of times a failed genericity check doubles the bound and retries.
inline constexpr unsigned kEscalations = 2;

struct SamplingPolicy {
  std::uint64_t seed = kDefaultSeed;
  long bound = kDefaultBound;
  unsigned trials = kDefaultTrials;

  SamplingPolicy escalated(unsigned step) const {
    SamplingPolicy p = *this;
    p.bound = bound << step;
    return p;
  }
};

// Deterministic stream of integer coefficient vectors, uniform in
// [-bound, bound]^len.  Streams for different purposes are separated by a
// salt so that, e.g., the oracle and the grouping never share samples by accident.
class CoefficientSampler {
 public:
  CoefficientSampler(std::uint64_t seed, std::uint64_t salt, long bound);
  IntVector next(std::size_t len);
  // `count` vectors drawn in order; used to pre-generate trials before
  // evaluating them in parallel.
  std::vector<IntVector> batch(std::size_t count, std::size_t len);

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<long> dist_;
};

// Integer combination sum_k t_k * basis_k of the rows of an integer basis.
IntVector combine_rows(const IntMatrix& basis, const IntVector& coeffs);
RatVector combine_rows(const RatMatrix& basis, const IntVector& coeffs);

}  // namespace dualdefect
