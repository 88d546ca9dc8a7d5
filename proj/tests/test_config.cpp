#include <doctest.h>

#include <random>

#include "dualdefect/config.hpp"
#include "dualdefect/config_io.hpp"
#include "dualdefect/corpus.hpp"
#include "dualdefect/errors.hpp"
#include "support.hpp"

using namespace dualdefect;
using namespace testing_support;

TEST_CASE("PointConfig ordering and deduplication") {
  const PointConfig a(2, {iv({1, 0}), iv({0, 1}), iv({1, 0}), iv({0, 0})});
  CHECK(a.size() == 3);
  CHECK(a.duplicates_removed() == 1);
  CHECK(a[0] == iv({0, 0}));
  CHECK(a[1] == iv({0, 1}));
  CHECK(a[2] == iv({1, 0}));
  CHECK(a.index_of(iv({0, 1})) == 1);
  CHECK_FALSE(a.index_of(iv({5, 5})).has_value());
  CHECK_THROWS_AS(PointConfig(2, {iv({1, 0}), iv({1})}), DimensionError);
}

TEST_CASE("normalize examples") {
  SUBCASE("points along 2Z x 0") {
    const PointConfig a = PointConfig::from_longs(2, {{0, 0}, {2, 0}, {4, 0}});
    const Normalization nz = normalize(a);
    CHECK(nz.config == PointConfig::from_longs(1, {{0}, {1}, {2}}));
    CHECK(nz.theta(iv({1})) == iv({2, 0}));
    CHECK(apply_affine(nz.config, nz.theta) == a);
  }
  SUBCASE("full lattice is left alone") {
    const PointConfig a = segre_square();
    const Normalization nz = normalize(a);
    CHECK(nz.config == a);
    CHECK(nz.theta.matrix == IntMatrix::identity(2));
  }
  SUBCASE("single point") {
    const PointConfig a = PointConfig::from_longs(2, {{1, 1}});
    const Normalization nz = normalize(a);
    CHECK(nz.config.dim() == 0);
    CHECK(nz.config.size() == 1);
    CHECK(nz.theta(IntVector{}) == iv({1, 1}));
  }
}

TEST_CASE("difference_lattice examples") {
  CHECK(difference_lattice(segre_square()) == IntMatrix::identity(2));
  CHECK(difference_lattice(PointConfig::from_longs(1, {{0}, {2}})) == IntMatrix::from_longs({{2}}));
  CHECK(difference_lattice(PointConfig::from_longs(3, {{1, 2, 3}})).rows() == 0);
}

TEST_CASE("apply_affine examples") {
  CHECK(apply_affine(ex5_8(), GroupHom::identity(6)) == ex5_8());

  // pi1 of the nine-point example on A^0 = {0, e5, e6}.
  const GroupHom pi1(IntMatrix::from_longs(
      {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 2}}));
  const PointConfig a0 = PointConfig::from_longs(6, {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
  CHECK(apply_affine(a0, pi1) == PointConfig::from_longs(5, {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 2}}));

  const GroupHom pr2(IntMatrix::from_longs({{0, 1}}));
  CHECK(apply_affine(segre_square(), pr2, true) == PointConfig::from_longs(1, {{0}, {1}}));
  CHECK_THROWS_AS(apply_affine(segre_square(), pr2), CollapseError);
}

TEST_CASE("affine_equivalent examples") {
  const PointConfig a = ex5_8();
  const GroupHom shift(IntMatrix::identity(6), iv({1, -2, 3, 0, 0, 7}));
  const PointConfig b = apply_affine(a, shift);
  auto w = affine_equivalent(a, b);
  REQUIRE(w.has_value());
  CHECK(apply_affine(a, *w) == b);

  CHECK_FALSE(affine_equivalent(PointConfig::from_longs(1, {{0}, {1}, {2}}),
                                PointConfig::from_longs(1, {{0}, {1}, {3}}))
                  .has_value());
  CHECK_FALSE(affine_equivalent(segre_square(), PointConfig::from_longs(1, {{0}, {1}, {2}, {3}})).has_value());
}

TEST_CASE("config properties on random inputs") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 4;
    const PointConfig a = random_config(n, n + 2 + t % 3, 3, rng);
    CAPTURE(config_to_text(a));
    const GroupHom f = random_twist(n, rng);
    const PointConfig b = apply_affine(a, f);

    // Lattice covariance under a unimodular map.
    IntMatrix image(0, n);
    const IntMatrix la = difference_lattice(a);
    for (std::size_t i = 0; i < la.rows(); ++i) image.append_row(f.linear(la.row_vector(i)));
    CHECK(lattice_basis(image) == difference_lattice(b));

    // Normalization is idempotent and leaves a full lattice.
    const Normalization nz = normalize(b);
    CHECK(normalize(nz.config).config == nz.config);
    for (const Int& d : snf(difference_lattice(nz.config)).invariant_factors()) CHECK(d == 1);

    // Witnesses: reflexive, symmetric, transitive.
    auto ab = affine_equivalent(a, b);
    REQUIRE(ab.has_value());
    CHECK(apply_affine(a, *ab) == b);
    auto ba = affine_equivalent(b, a);
    REQUIRE(ba.has_value());
    CHECK(apply_affine(b, *ba) == a);
    CHECK(affine_equivalent(a, a).has_value());
    const PointConfig c = apply_affine(b, random_twist(n, rng));
    auto ac = affine_equivalent(a, c);
    REQUIRE(ac.has_value());
    CHECK(apply_affine(a, *ac) == c);
  }
}

TEST_CASE("GroupHom composition and inverse") {
  std::mt19937_64 rng(5);
  const GroupHom f = random_twist(3, rng);
  const GroupHom g = f.inverse();
  const IntVector x = iv({4, -1, 7});
  CHECK(g(f(x)) == x);
  CHECK(f.after(g)(x) == x);
  CHECK(f.is_surjective());
  CHECK_FALSE(f.is_linear());
  CHECK(GroupHom(IntMatrix::from_longs({{2, 0}})).kernel() == IntMatrix::from_longs({{0, 1}}));
}

TEST_CASE("configuration file formats") {
  const auto json = parse_config_json(R"({"name":"t","points":[[0,"12345678901234567890"],[1,2]],"extra":1})");
  CHECK(json.config.name() == "t");
  CHECK(json.config[0] == IntVector{Int(0), Int("12345678901234567890")});
  CHECK_FALSE(json.expected_delta.has_value());
  CHECK(parse_config_json(config_to_json(json.config)).config == json.config);

  const PointConfig txt = parse_config_text("# comment\n0 0\n\n1 0 # trailing\n+0 -1\n");
  CHECK(txt == PointConfig::from_longs(2, {{0, 0}, {1, 0}, {0, -1}}));
  CHECK(parse_config_text(config_to_text(txt)) == txt);

  CHECK_THROWS_AS(parse_config_json("{"), InputError);
  CHECK_THROWS_AS(parse_config_json(R"({"points":[[0,0],[1]]})"), InputError);
  CHECK_THROWS_AS(parse_config_text("0 x\n"), InputError);
  CHECK_THROWS_AS(parse_config_text("0 0\n1\n"), InputError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.json"), InputError);
}
