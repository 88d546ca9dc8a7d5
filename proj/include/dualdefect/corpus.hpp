#pragma once

// Deterministic generators for test corpora.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dualdefect/config.hpp"

namespace dualdefect {

enum class CorpusKind { Random, CayleyJoinType, UnimodularTwist };

struct CorpusParams {
  CorpusKind kind = CorpusKind::Random;
  std::size_t count = 10;
  std::size_t dim = 3;          // random: ambient rank
  std::size_t points = 7;       // random: #A
  long range = 4;               // coordinates in [-range, range]
  std::size_t r = 1;            // cayley_join_type: number of simplex directions
  std::size_t max_fiber_dim = 2;
  std::optional<PointConfig> base;  // unimodular_twist: configuration to twist
  std::uint64_t seed = 0xA11CE;
};

inline constexpr std::size_t kMaxCorpusDim = 8;
inline constexpr std::size_t kMaxCorpusPoints = 14;

struct GeneratedConfig {
  PointConfig config;
  std::optional<long> expected_delta;
};

// Throws InputError for parameters outside n <= 8, #A <= 14 and the
// obvious feasibility limits.
std::vector<GeneratedConfig> generate_corpus(const CorpusParams& params);

// Random unimodular matrix built from elementary operations with small multipliers.
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng);
// Unimodular linear part plus a translation in [-shift, shift]^n.
GroupHom random_twist(std::size_t n, std::mt19937_64& rng, long shift = 5);
// Distinct points in [-range, range]^n, resampled until they span Z^n affinely.
PointConfig random_config(std::size_t n, std::size_t points, long range, std::mt19937_64& rng);

}  // namespace dualdefect
