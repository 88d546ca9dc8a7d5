#pragma once

// Cayley sums, decomposition along simplex projections, join type.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dualdefect/config.hpp"

namespace dualdefect {

// Parts are sorted index lists, ordered by their smallest index.
using Partition = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kDefaultEnumerationLimit = 12;

// A realized as a Cayley sum along pi : Z^n -> Z^r.
struct CayleyStructure {
  PointConfig base;
  std::size_t r = 0;
  Partition parts;                 // part i = points of base mapped to the i-th simplex vertex
  GroupHom pi;                     // Z^n -> Z^r, surjective
  std::vector<PointConfig> fibers; // A_0, ..., A_r in Z^{n-r}
  GroupHom section_frame;          // f : Z^n -> Z^{n-r} x Z^r, f(base) = cayley_sum(fibers)
  GroupHom simplex_frame;          // g : Z^r -> Z^r, pr_2 o f = g o pi
  IntMatrix kernel_basis;          // saturated basis of ker pi; fiber coordinates refer to it
};

// (A_0 x {0}) u (A_1 x {e_1}) u ... u (A_r x {e_r}).
PointConfig cayley_sum(std::span<const PointConfig> fibers);

// Q-span of A - A.
RationalSubspace difference_space(const PointConfig& a);
// Q-span of the differences among the selected points.
RationalSubspace difference_space(const PointConfig& a, std::span<const std::size_t> subset);

// The difference lattices of the fibers sum directly.
bool is_join_type(std::span<const PointConfig> fibers);

CayleyStructure decompose_along(const PointConfig& a, const GroupHom& pi);

// pi1(A) is of join type with respect to pi2 (the pieces pi1(M_i) sum directly in ker pi2).
bool join_type_wrt(const PointConfig& a, const GroupHom& pi1, const GroupHom& pi2);

// The linear map sending part i to e_i (part 0 to 0) relative to a base point
// of part 0, found by integer solving.  Absent when the partition is not the
// fiber partition of a simplex projection.
std::optional<GroupHom> projection_from_partition(const PointConfig& a, const Partition& parts);

// Every partition of A that is the fiber partition of a surjection with
// simplex image, in lexicographic order of restricted growth strings.
// Throws TooLarge when #A > limit.  Uses OpenMP when available.
std::vector<CayleyStructure> enumerate_simplex_projections(const PointConfig& a,
                                                           std::size_t limit = kDefaultEnumerationLimit);
// Single-threaded reference implementation of the same enumeration.
std::vector<CayleyStructure> enumerate_simplex_projections_serial(const PointConfig& a,
                                                                  std::size_t limit = kDefaultEnumerationLimit);

// Brute-force reference: tries all set partitions through
// projection_from_partition.  Exponentially slow; tests only.
std::vector<Partition> enumerate_simplex_partitions_bruteforce(const PointConfig& a);

Partition partition_from_labels(std::span<const std::size_t> labels);

}  // namespace dualdefect
