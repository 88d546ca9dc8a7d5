#include "dualdefect/structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "dualdefect/alpha.hpp"
#include "dualdefect/errors.hpp"

namespace dualdefect {

namespace {

constexpr std::uint64_t kVerifySeedMask = 0x9E3779B97F4A7C15ULL;

void require_spanning(const PointConfig& a, const char* who) {
  if (!spans_lattice(a)) throw std::invalid_argument(std::string(who) + ": configuration must span Z^n affinely");
}

// Quotient Z^n -> Z^n / (w intersected with Z^n), as a surjective matrix.
GroupHom quotient_by(const RationalSubspace& w) {
  const std::size_t n = w.ambient_dim();
  if (w.dim() == 0) return GroupHom::identity(n);
  return GroupHom(kernel_basis_int(w.integer_basis()));
}

RationalSubspace kernel_space(const IntMatrix& m) {
  const IntMatrix k = kernel_basis_int(m);
  if (k.rows() == 0) return RationalSubspace(m.cols());
  return RationalSubspace::span(k);
}

std::vector<RationalSubspace> part_spaces(const PointConfig& a, const Partition& parts) {
  std::vector<RationalSubspace> v;
  for (const auto& part : parts) v.push_back(difference_space(a, part));
  return v;
}

// X with X * pi1 == pi, solved row by row.
std::optional<IntMatrix> factor_through(const GroupHom& pi, const GroupHom& pi1) {
  const IntMatrix t = pi1.matrix.transpose();
  IntMatrix x(pi.codomain_rank(), pi1.codomain_rank());
  for (std::size_t i = 0; i < pi.codomain_rank(); ++i) {
    auto row = solve_int(t, pi.matrix.row_vector(i));
    if (!row) return std::nullopt;
    for (std::size_t j = 0; j < row->size(); ++j) x(i, j) = (*row)[j];
  }
  return x;
}

// p : ker pi -> ker pi2, both in the coordinates of their saturated HNF bases.
std::optional<IntMatrix> restricted_quotient(const IntMatrix& ker_pi, const GroupHom& pi1, const GroupHom& pi2) {
  const IntMatrix ker2 = kernel_basis_int(pi2.matrix);
  const IntMatrix t = ker2.transpose();
  IntMatrix p(ker2.rows(), ker_pi.rows());
  for (std::size_t j = 0; j < ker_pi.rows(); ++j) {
    auto coords = solve_int(t, pi1.linear(ker_pi.row_vector(j)));
    if (!coords) return std::nullopt;
    for (std::size_t i = 0; i < coords->size(); ++i) p(i, j) = (*coords)[i];
  }
  return p;
}

StructureCertificate trivial_certificate(const PointConfig& a, const SamplingPolicy& policy, DefectResult oracle) {
  StructureCertificate cert;
  const std::size_t n = a.dim();
  cert.n = n;
  cert.grouping = {std::vector<std::size_t>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) cert.grouping[0][i] = i;
  cert.pi1 = GroupHom::identity(n);
  cert.pi2 = GroupHom::zero(n, 0);
  cert.p = GroupHom::identity(n);
  cert.fibers = {a};
  cert.policy = policy;
  cert.oracle = std::move(oracle);
  cert.checks = {{"delta_matches_oracle", cert.oracle.empty_dual() || cert.oracle.delta == 0}};
  return cert;
}

}  // namespace

bool StructureCertificate::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool VerificationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

MinProjection find_min_projection(const PointConfig& a, SamplingPolicy policy) {
  require_spanning(a, "find_min_projection");
  const TangencyProblem problem = TangencyProblem::make(a, policy);
  MinProjection out;
  out.oracle = defect_oracle(problem);
  if (out.oracle.empty_dual() || out.oracle.delta == 0) {
    out.pi = GroupHom::zero(a.dim(), 0);
    out.grouping = {std::vector<std::size_t>(a.size())};
    for (std::size_t i = 0; i < a.size(); ++i) out.grouping[0][i] = i;
    return out;
  }
  ContactGrouping g = contact_grouping(problem);
  auto pi = projection_from_partition(a, g.parts);
  if (!pi) throw CertificationError("find_min_projection: the contact grouping is not the fiber partition of a simplex projection");
  out.pi = *pi;
  out.grouping = std::move(g.parts);
  return out;
}

StructureCertificate structure_certificate(const PointConfig& a, SamplingPolicy policy) {
  require_spanning(a, "structure_certificate");
  const std::size_t n = a.dim();
  std::string last_mismatch;
  for (unsigned step = 0; step <= kEscalations; ++step) {
    const SamplingPolicy active = policy.escalated(step);
    MinProjection mp = find_min_projection(a, active);
    if (mp.oracle.empty_dual() || mp.oracle.delta == 0) return trivial_certificate(a, policy, std::move(mp.oracle));

    const CayleyStructure cs = decompose_along(a, mp.pi);
    const std::size_t r = cs.r;
    const auto spaces = part_spaces(a, cs.parts);
    const AlphaProblem ap = AlphaProblem::make(spaces, active, kernel_space(mp.pi.matrix));
    const std::size_t c = alpha(ap);
    const bool star = check_star(ap);
    const RationalSubspace vp = vprime(ap);

    StructureCertificate cert;
    cert.n = n;
    cert.r = r;
    cert.c = c;
    cert.delta = r - c;
    cert.grouping = cs.parts;
    cert.pi1 = quotient_by(vp);
    auto pi2 = factor_through(mp.pi, cert.pi1);
    if (!pi2) throw CertificationError("structure_certificate: pi does not factor through pi1");
    cert.pi2 = GroupHom(*pi2);
    auto p = restricted_quotient(cs.kernel_basis, cert.pi1, cert.pi2);
    if (!p) throw CertificationError("structure_certificate: pi1 does not map ker pi into ker pi2");
    cert.p = GroupHom(*p);
    cert.fibers = cs.fibers;
    cert.policy = policy;
    cert.oracle = std::move(mp.oracle);

    cert.checks.push_back({"star_condition", star});
    cert.checks.push_back({"vprime_dim_equals_alpha", vp.dim() == c});
    cert.checks.push_back({"pi1_surjective", cert.pi1.is_surjective()});
    cert.checks.push_back({"pi_factors", cert.pi().matrix == mp.pi.matrix});
    cert.checks.push_back({"join_type_wrt_pi2", join_type_wrt(a, cert.pi1, cert.pi2)});
    cert.checks.push_back({"p_surjective", cert.p.is_surjective()});
    cert.checks.push_back({"delta_matches_oracle", cert.oracle.delta == cert.delta});
    if (cert.oracle.delta == cert.delta) return cert;
    last_mismatch = "r - c = " + std::to_string(cert.delta) + " but the oracle reports " +
                    std::to_string(cert.oracle.delta);
  }
  throw CertificationError("structure_certificate: " + last_mismatch);
}

std::vector<PointConfig> join_factors(const StructureCertificate& cert, const PointConfig& a) {
  (void)a;
  std::vector<PointConfig> factors;
  for (const auto& f : cert.fibers) factors.push_back(apply_affine(f, cert.p, true));
  if (!is_join_type(factors)) throw CertificationError("join_factors: the factors are not of join type");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].size() == 1) continue;
    const PointConfig normal = normalize(factors[i]).config;
    const DefectResult d = defect_oracle(TangencyProblem::make(normal, cert.policy));
    if (d.empty_dual() || d.delta != 0)
      throw CertificationError("join_factors: factor " + std::to_string(i) + " is dual defective");
  }
  return factors;
}

namespace {

struct StructureVerdict {
  bool lower_bound = true;    // r' - c' <= delta for the join-type quotient found
  bool alpha_bound = true;    // r' - alpha' <= delta
  bool minimality = true;     // condition (4) whenever r' - c' == delta
  bool join_type = false;
  std::size_t r = 0, c = 0;
};

// `delta` is the defect the bounds are checked against; `check_chain` is off
// when the certificate is the conventional one for an empty dual.
StructureVerdict examine(const PointConfig& a, const CayleyStructure& s, const StructureCertificate& cert,
                         std::size_t delta, bool check_chain, const RationalSubspace& cert_vprime,
                         const RationalSubspace& cert_ker_pi) {
  StructureVerdict v;
  v.r = s.r;
  const auto spaces = part_spaces(a, s.parts);
  const AlphaProblem ap = AlphaProblem::make(spaces, cert.policy);
  const std::size_t al = alpha(ap);
  v.alpha_bound = s.r < al || s.r - al <= delta;
  // Any quotient making the parts direct kills every component of K, so the
  // span W of those components gives the smallest candidate kernel.
  const RationalSubspace w = component_span(ap);
  v.c = w.dim();
  v.join_type = direct_modulo(spaces, w);
  if (!v.join_type) return v;
  const std::size_t gap = s.r >= v.c ? s.r - v.c : 0;
  v.lower_bound = gap <= delta;
  if (check_chain && gap == delta) {
    const RationalSubspace ker_pi_prime = kernel_space(s.pi.matrix);
    v.minimality = cert_ker_pi.contains(ker_pi_prime) && w.contains(cert_vprime);
  }
  return v;
}

VerificationReport exhaustive_impl(const PointConfig& a, const StructureCertificate& cert, std::size_t limit,
                                   bool parallel) {
  VerificationReport rep;
  const auto structures =
      parallel ? enumerate_simplex_projections(a, limit) : enumerate_simplex_projections_serial(a, limit);
  const RationalSubspace cert_vprime = kernel_space(cert.pi1.matrix);
  const RationalSubspace cert_ker_pi = kernel_space(cert.pi().matrix);
  // With L = 0, X_A is projective space: its dual is empty and the defect
  // in the N - 1 - dim X* sense is N = #A - 1.
  const bool empty_dual = tangency_space(a).rows() == 0;
  const std::size_t delta = empty_dual ? a.size() - 1 : cert.delta;
  if (empty_dual) rep.notes.push_back("empty dual: bounds checked against #A - 1 = " + std::to_string(delta));
  std::vector<StructureVerdict> verdicts(structures.size());
  const long count = static_cast<long>(structures.size());
#ifdef DUALDEFECT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (long i = 0; i < count; ++i) verdicts[i] = examine(a, structures[i], cert, delta, !empty_dual, cert_vprime, cert_ker_pi);

  bool lower = true, alpha_ok = true, minimal = true;
  std::size_t join_count = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    join_count += v.join_type;
    if (!v.lower_bound) {
      lower = false;
      rep.notes.push_back("structure with r' = " + std::to_string(v.r) + ", c' = " + std::to_string(v.c) +
                          " exceeds the lower bound");
    }
    if (!v.alpha_bound) alpha_ok = false;
    if (!v.minimality) {
      minimal = false;
      rep.notes.push_back("structure " + std::to_string(i) + " attains delta but breaks the kernel chain");
    }
  }
  rep.structures_examined = structures.size();
  rep.notes.push_back(std::to_string(structures.size()) + " simplex projections enumerated, " +
                      std::to_string(join_count) + " with a join-type quotient");
  rep.checks.push_back({"lower_bound", lower});
  rep.checks.push_back({"slice_bound", alpha_ok});
  rep.checks.push_back({"minimality", minimal});
  return rep;
}

}  // namespace

VerificationReport exhaustive_check(const PointConfig& a, const StructureCertificate& cert, std::size_t limit) {
  return exhaustive_impl(a, cert, limit, true);
}

VerificationReport exhaustive_check_serial(const PointConfig& a, const StructureCertificate& cert,
                                           std::size_t limit) {
  return exhaustive_impl(a, cert, limit, false);
}

VerificationReport verify_certificate(const PointConfig& a, const StructureCertificate& cert, bool exhaustive,
                                      std::size_t limit) {
  VerificationReport rep;
  auto add = [&](std::string name, bool ok) { rep.checks.push_back({std::move(name), ok}); };
  const std::size_t n = a.dim();

  const bool shapes = cert.n == n && cert.c <= n && cert.r + cert.c <= n && cert.pi1.domain_rank() == n &&
                      cert.pi1.codomain_rank() == n - cert.c && cert.pi2.domain_rank() == n - cert.c &&
                      cert.pi2.codomain_rank() == cert.r && cert.p.domain_rank() == n - cert.r &&
                      cert.p.codomain_rank() == n - cert.r - cert.c;
  add("dimensions", shapes);
  add("delta_equals_r_minus_c", cert.r >= cert.c && cert.delta == cert.r - cert.c);
  if (!shapes) return rep;
  if (!spans_lattice(a)) {
    add("configuration_normalized", false);
    return rep;
  }

  const bool pi1_onto = cert.pi1.is_surjective();
  add("pi1_surjective", pi1_onto);
  const GroupHom pi = cert.pi();
  add("pi_surjective", pi.is_surjective());

  bool simplex = false;
  std::optional<CayleyStructure> cs;
  try {
    cs = decompose_along(a, pi);
    simplex = cs->parts == cert.grouping;
  } catch (const std::exception&) {
    simplex = false;
  }
  add("simplex_image", simplex);

  bool join = false;
  if (simplex && pi1_onto) {
    try {
      join = join_type_wrt(a, cert.pi1, cert.pi2);
    } catch (const std::exception&) {
      join = false;
    }
  }
  add("join_type_wrt_pi2", join);

  const IntMatrix k1 = kernel_basis_int(cert.pi1.matrix);
  bool chain = k1.rows() == cert.c;
  for (std::size_t i = 0; chain && i < k1.rows(); ++i) chain = pi.linear(k1.row_vector(i)) == IntVector(cert.r);
  add("kernel_chain", chain);

  bool p_ok = cert.p.is_surjective();
  if (p_ok && cs) {
    auto expect = restricted_quotient(cs->kernel_basis, cert.pi1, cert.pi2);
    p_ok = expect && *expect == cert.p.matrix;
  }
  add("p_restricts_pi1", p_ok);

  SamplingPolicy fresh = cert.policy;
  fresh.seed ^= kVerifySeedMask;
  const DefectResult d = defect_oracle(TangencyProblem::make(a, fresh));
  add("oracle_agreement", d.empty_dual() ? cert.delta == 0 && cert.r == 0 : d.delta == cert.delta);

  if (exhaustive) {
    if (a.size() > limit) {
      rep.notes.push_back("exhaustive check skipped: " + std::to_string(a.size()) + " points exceed the limit " +
                          std::to_string(limit));
    } else {
      VerificationReport ex = exhaustive_check(a, cert, limit);
      for (auto& c : ex.checks) rep.checks.push_back(std::move(c));
      for (auto& s : ex.notes) rep.notes.push_back(std::move(s));
      rep.structures_examined = ex.structures_examined;
    }
  }
  return rep;
}

}  // namespace dualdefect
