#pragma once

// The structure pipeline: minimal simplex projection, its factorization
// pi = pi2 o pi1 through the alpha quotient, and independent verification.

#include <cstddef>
#include <string>
#include <vector>

#include "dualdefect/cayley.hpp"
#include "dualdefect/config.hpp"
#include "dualdefect/sampling.hpp"
#include "dualdefect/tangency.hpp"

namespace dualdefect {

struct Check {
  std::string name;
  bool passed = false;
};

struct StructureCertificate {
  std::size_t n = 0, r = 0, c = 0, delta = 0;
  Partition grouping;
  GroupHom pi1;  // Z^n -> Z^{n-c}
  GroupHom pi2;  // Z^{n-c} -> Z^r
  GroupHom p;    // Z^{n-r} = ker pi -> ker pi2 = Z^{n-r-c}
  std::vector<PointConfig> fibers;  // A_i in coordinates of the saturated HNF basis of ker pi
  SamplingPolicy policy;
  DefectResult oracle;
  std::vector<Check> checks;

  GroupHom pi() const { return pi2.after(pi1); }
  bool all_checks_pass() const;
};

struct MinProjection {
  GroupHom pi;
  Partition grouping;
  DefectResult oracle;
};

// Requires spans_lattice(a).  With empty dual or delta = 0 the answer is the
// zero map to Z^0 with a single group.
MinProjection find_min_projection(const PointConfig& a, SamplingPolicy policy = {});

// Requires spans_lattice(a).  Throws CertificationError when r - c and the
// oracle still disagree after kEscalations doublings of the bound.
StructureCertificate structure_certificate(const PointConfig& a, SamplingPolicy policy = {});

// p(A_0), ..., p(A_r) in Z^{n-r-c}.  Throws CertificationError unless they
// are of join type and each factor is non-defective (a single point is allowed).
std::vector<PointConfig> join_factors(const StructureCertificate& cert, const PointConfig& a);

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::size_t structures_examined = 0;
  bool ok() const;
};

// Re-checks a certificate from scratch.  With `exhaustive` and #a <= limit,
// also enumerates every simplex projection of a to test minimality and the
// lower bound r' - c' <= delta.
VerificationReport verify_certificate(const PointConfig& a, const StructureCertificate& cert, bool exhaustive = false,
                                      std::size_t limit = kDefaultEnumerationLimit);

// The exhaustive part alone, parallel over structures; exposed for tests
// and benchmarks.  Serial variant kept as a reference.
VerificationReport exhaustive_check(const PointConfig& a, const StructureCertificate& cert, std::size_t limit);
VerificationReport exhaustive_check_serial(const PointConfig& a, const StructureCertificate& cert, std::size_t limit);

}  // namespace dualdefect
