#pragma once

// The alpha invariant of a family of subspaces V_0, ..., V_r of V and the
// minimal subspace V' whose quotient makes the V_i sum directly.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dualdefect/exact_linalg.hpp"
#include "dualdefect/sampling.hpp"

namespace dualdefect {

struct AlphaProblem {
  RationalSubspace ambient;                // V
  std::vector<RationalSubspace> summands;  // V_0, ..., V_r
  // Basis of K = ker(V_0 + ... + V_r -> V).  A row has (r+1) blocks of
  // length dim Q^m; block i is the component m_i in ambient coordinates.
  RatMatrix k_basis;
  SamplingPolicy policy;

  // V defaults to the sum of the summands.
  static AlphaProblem make(std::vector<RationalSubspace> summands, SamplingPolicy policy = {},
                           std::optional<RationalSubspace> ambient = std::nullopt);

  std::size_t width() const { return ambient.ambient_dim(); }
  // The (r+1) x m matrix of components of a K element.
  RatMatrix components(std::span<const Rat> k_element) const;
};

RatMatrix k_space(std::span<const RationalSubspace> summands);

std::size_t alpha(const AlphaProblem& p);
RationalSubspace vprime(const AlphaProblem& p);
bool check_star(const AlphaProblem& p);

// Span of all components of all rows of k_basis.  Contains every V'
// obtainable from a K element.
RationalSubspace component_span(const AlphaProblem& p);

// The images of the summands in Q^m / w sum directly.
bool direct_modulo(std::span<const RationalSubspace> summands, const RationalSubspace& w);

}  // namespace dualdefect
