#pragma once

// Hyperplanes tangent at the identity of the torus, the generic Hessian, and
// the corank oracle for the dual defect.

#include <cstddef>
#include <span>

#include "dualdefect/cayley.hpp"
#include "dualdefect/config.hpp"
#include "dualdefect/sampling.hpp"

namespace dualdefect {

struct TangencyProblem {
  PointConfig config;
  // Rows span L = {a : sum a_u = 0, sum a_u u = 0}; each row is a primitive integer vector.
  RatMatrix tangency_basis;
  SamplingPolicy policy;

  static TangencyProblem make(const PointConfig& config, SamplingPolicy policy = {});
};

enum class DefectStatus { Computed, EmptyDual };

struct DefectResult {
  DefectStatus status = DefectStatus::EmptyDual;
  std::size_t delta = 0;
  IntVector rank_witness;  // coefficient vector a (indexed by points) attaining the maximal rank
  std::size_t samples_used = 0;

  bool empty_dual() const { return status == DefectStatus::EmptyDual; }
};

RatMatrix tangency_space(const PointConfig& a);

// sum_u a_u u u^T.  Throws ArityError when coeffs has the wrong length.
RatMatrix hessian(const PointConfig& a, const RatVector& coeffs);
IntMatrix hessian(const PointConfig& a, const IntVector& coeffs);

DefectResult defect_oracle(const TangencyProblem& p);
// Same computation with the trials evaluated one after another.
DefectResult defect_oracle_serial(const TangencyProblem& p);

struct ContactGrouping {
  Partition parts;
  RationalSubspace kernel;  // ker of the first generic Hessian; varies with the sample, its dimension does not
  SamplingPolicy policy;    // the policy that produced agreement (after escalation)
};

// Groups u ~ u' when <u - u', v> = 0 for every v in the generic Hessian
// kernel.  All trials must agree on the partition and the kernel dimension;
// otherwise the bound is doubled up to kEscalations times before
// GenericityFailure is thrown.
ContactGrouping contact_grouping(const TangencyProblem& p);

// r - generic dim <m_0, ..., m_r> with m_i = sum_j a_ij u_ij for generic
// tangency coefficients of cayley_sum(fibers).
std::size_t slice_contact_dim(std::span<const PointConfig> fibers, SamplingPolicy policy = {});

}  // namespace dualdefect
