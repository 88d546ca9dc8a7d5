#include <doctest.h>

#include <random>

#include "dualdefect/corpus.hpp"
#include "dualdefect/errors.hpp"
#include "dualdefect/structure.hpp"
#include "support.hpp"

using namespace dualdefect;
using namespace testing_support;

namespace {

RationalSubspace kernel_of(const IntMatrix& m) {
  const IntMatrix k = kernel_basis_int(m);
  return k.rows() ? RationalSubspace::span(k) : RationalSubspace(m.cols());
}

const IntMatrix kExpectedPi1 = IntMatrix::from_longs(
    {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 2}});
const IntMatrix kExpectedPi = IntMatrix::from_longs({{1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}});
const IntMatrix kPr = IntMatrix::from_longs({{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});

bool check_passed(const VerificationReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c.passed;
  FAIL("missing check " << name);
  return false;
}

std::set<std::set<IntVector>> image_sets(const std::set<std::set<IntVector>>& sets, const GroupHom& f) {
  std::set<std::set<IntVector>> out;
  for (const auto& s : sets) {
    std::set<IntVector> t;
    for (const auto& u : s) t.insert(f(u));
    out.insert(t);
  }
  return out;
}

}  // namespace

TEST_CASE("find_min_projection examples") {
  const MinProjection m8 = find_min_projection(ex5_8());
  CHECK(m8.pi.codomain_rank() == 2);
  CHECK(kernel_of(m8.pi.matrix) == kernel_of(kExpectedPi));

  const MinProjection ms = find_min_projection(segre_square());
  CHECK(ms.pi.codomain_rank() == 0);
  CHECK(ms.grouping.size() == 1);

  const MinProjection m7 = find_min_projection(ex5_7());
  CHECK(m7.pi.codomain_rank() == 3);
  CHECK(kernel_of(m7.pi.matrix) == kernel_of(kPr));
}

TEST_CASE("structure_certificate examples") {
  SUBCASE("fourteen-point Cayley sum") {
    const StructureCertificate c = structure_certificate(ex5_7());
    CHECK(c.r == 3);
    CHECK(c.c == 2);
    CHECK(c.delta == 1);
    CHECK(c.all_checks_pass());
    CHECK(kernel_of(c.pi1.matrix) == RationalSubspace::span(IntMatrix::from_longs({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}})));
    CHECK(kernel_of(c.pi().matrix) == kernel_of(kPr));
    CHECK(is_unimodular(c.pi2.matrix));
  }
  SUBCASE("nine-point example") {
    const StructureCertificate c = structure_certificate(ex5_8());
    CHECK(c.r == 2);
    CHECK(c.c == 1);
    CHECK(c.delta == 1);
    CHECK(c.all_checks_pass());
    CHECK(c.pi1.matrix == kExpectedPi1);
    CHECK(kernel_of(c.pi().matrix) == kernel_of(kExpectedPi));
  }
  SUBCASE("Segre square") {
    const StructureCertificate c = structure_certificate(segre_square());
    CHECK(c.r == 0);
    CHECK(c.c == 0);
    CHECK(c.delta == 0);
    CHECK(c.pi1.matrix == IntMatrix::identity(2));
    CHECK(c.pi2.codomain_rank() == 0);
    CHECK(c.p.matrix == IntMatrix::identity(2));
  }
  SUBCASE("requires a spanning configuration") {
    CHECK_THROWS_AS(structure_certificate(PointConfig::from_longs(1, {{0}, {2}, {4}})), std::invalid_argument);
  }
}

TEST_CASE("join_factors examples") {
  const PointConfig a7 = ex5_7();
  const auto f7 = join_factors(structure_certificate(a7), a7);
  REQUIRE(f7.size() == 4);
  for (const auto& f : f7) {
    CHECK(f.dim() == 0);
    CHECK(f.size() == 1);
  }

  const PointConfig s = segre_square();
  const auto fs = join_factors(structure_certificate(s), s);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0] == s);

  const PointConfig a8 = ex5_8();
  const auto f8 = join_factors(structure_certificate(a8), a8);
  REQUIRE(f8.size() == 3);
  for (const auto& f : f8) {
    const DefectResult d = defect_oracle(TangencyProblem::make(normalize(f).config));
    CHECK_FALSE(d.empty_dual());
    CHECK(d.delta == 0);
  }
}

TEST_CASE("verify_certificate examples") {
  const PointConfig a = ex5_8();
  const StructureCertificate c = structure_certificate(a);
  const VerificationReport rep = verify_certificate(a, c, true, 12);
  CHECK(rep.ok());
  CHECK(rep.structures_examined > 0);

  StructureCertificate tampered = c;
  tampered.delta = c.r - c.c + 1;
  const VerificationReport bad = verify_certificate(a, tampered);
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(check_passed(bad, "delta_equals_r_minus_c"));

  StructureCertificate doubled = c;
  for (std::size_t j = 0; j < doubled.pi1.matrix.cols(); ++j) doubled.pi1.matrix(0, j) *= 2;
  const VerificationReport bad2 = verify_certificate(a, doubled);
  CHECK_FALSE(check_passed(bad2, "pi1_surjective"));
  CHECK_FALSE(bad2.ok());
}

TEST_CASE("exhaustive check matches its serial reference") {
  const PointConfig a = segre_product(1, 3);
  const StructureCertificate c = structure_certificate(a);
  const VerificationReport par = exhaustive_check(a, c, 12);
  const VerificationReport ser = exhaustive_check_serial(a, c, 12);
  CHECK(par.structures_examined == ser.structures_examined);
  REQUIRE(par.checks.size() == ser.checks.size());
  for (std::size_t i = 0; i < par.checks.size(); ++i) {
    CHECK(par.checks[i].name == ser.checks[i].name);
    CHECK(par.checks[i].passed == ser.checks[i].passed);
  }
  CHECK(par.ok());
}

TEST_CASE("structure and oracle agree, covariantly under twists") {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 4;
    const PointConfig a = random_config(n, std::min<std::size_t>(n + 2 + t % 5, 9), 3, rng);
    CAPTURE(config_to_text(a));
    const StructureCertificate ca = structure_certificate(a);
    CHECK(ca.all_checks_pass());
    const DefectResult d = defect_oracle(TangencyProblem::make(a));
    if (!d.empty_dual()) CHECK(ca.delta == d.delta);
    CHECK(kernel_basis_int(ca.pi1.matrix).rows() == ca.c);

    const GroupHom f = random_twist(n, rng);
    const PointConfig b = apply_affine(a, f);
    const StructureCertificate cb = structure_certificate(b);
    CHECK(cb.r == ca.r);
    CHECK(cb.c == ca.c);
    CHECK(cb.delta == ca.delta);
    CHECK(as_point_sets(b, cb.grouping) == image_sets(as_point_sets(a, ca.grouping), f));
  }
}

TEST_CASE("lower bound and minimality on small configurations") {
  std::mt19937_64 rng(55);
  std::vector<PointConfig> inputs{segre_product(1, 2), segre_product(2, 2), ex5_8()};
  for (int t = 0; t < 10; ++t) inputs.push_back(random_config(2 + t % 3, 5 + t % 4, 2, rng));
  for (const auto& a : inputs) {
    CAPTURE(config_to_text(a));
    const StructureCertificate c = structure_certificate(a);
    const VerificationReport rep = verify_certificate(a, c, true, 12);
    CHECK(rep.ok());
  }
}

TEST_CASE("join-type Cayley sums of non-defective factors have delta = r") {
  CorpusParams params;
  params.kind = CorpusKind::CayleyJoinType;
  params.count = 8;
  params.seed = 17;
  for (std::size_t r = 1; r <= 2; ++r) {
    params.r = r;
    for (const auto& g : generate_corpus(params)) {
      CAPTURE(config_to_text(g.config));
      REQUIRE(g.expected_delta.has_value());
      const StructureCertificate c = structure_certificate(g.config);
      CHECK(static_cast<long>(c.delta) == *g.expected_delta);
      CHECK(c.r >= r);
    }
  }
}
