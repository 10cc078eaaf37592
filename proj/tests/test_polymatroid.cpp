#include "doctest.h"

#include <cmath>

#include "polyflow/oracle.hpp"
#include "polyflow/polymatroid.hpp"
#include "polyflow/rng.hpp"

using namespace polyflow;

TEST_CASE("greedy maximizes linear objectives over the polymatroid") {
  GroundSet g({"e1", "e2"});
  auto f = SubmodularOracle::cut_erasure(g, 0.5);

  // Weights 1/(1-eps^i): the harmonic-factor worst case.
  auto r = greedy_linear_opt(f, {2.0, 4.0 / 3.0});
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.x[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  auto zero = greedy_linear_opt(f, {0.0, 0.0});
  CHECK(zero.value == 0.0);
  CHECK(zero.x == std::vector<double>{0.0, 0.0});

  auto mac = SubmodularOracle::gaussian_mac_log(g, {1.0, 1.0}, 1.0);
  auto rmac = greedy_linear_opt(mac, {1.0, 1.0});
  CHECK(rmac.value == doctest::Approx(1.5849625007211562).epsilon(1e-12));
}

TEST_CASE("harmonic gap factor") {
  CHECK(harmonic_gap_factor(2, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(harmonic_gap_factor(3, 0.5) == doctest::Approx(1.0 + 1.0 / 3.0 + 0.125 / 0.875).epsilon(1e-12));
  CHECK(harmonic_gap_factor(1, 0.9) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(harmonic_gap_factor(2, 0.0), InvalidInputError);
  CHECK_THROWS_AS(harmonic_gap_factor(2, 1.0), InvalidInputError);
  CHECK_THROWS_AS(harmonic_gap_factor(0, 0.5), InvalidInputError);

  for (int d = 1; d <= 64; ++d)
    for (double eps = 0.05; eps < 1.0; eps += 0.05)
      CHECK(harmonic_gap_factor(d, eps) <= harmonic_number(d) + 1e-12);
}

TEST_CASE("membership over all subsets with violation witness") {
  GroundSet g({"e1", "e2"});
  auto mac = SubmodularOracle::gaussian_mac_log(g, {1.0, 1.0}, 1.0);

  auto bad = membership({1.0, 1.0}, mac);
  CHECK_FALSE(bad.inside);
  CHECK(bad.violating == 0b11);
  CHECK(bad.violation == doctest::Approx(2.0 - 1.5849625007211562).epsilon(1e-9));

  CHECK(membership({0.0, 0.0}, mac).inside);
  auto vertex = greedy_linear_opt(mac, {0.7, 0.4});
  CHECK(membership(vertex.x, mac).inside);
  CHECK_FALSE(membership({-0.1, 0.0}, mac).inside);
}

TEST_CASE("greedy vertices stay feasible across random oracles") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + rng.below(4);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
    GroundSet g(ids);
    std::vector<double> gains, w;
    for (int i = 0; i < n; ++i) {
      gains.push_back(rng.uniform(0.2, 3.0));
      w.push_back(rng.uniform(-0.5, 2.0));
    }
    auto f = SubmodularOracle::gaussian_mac_log(g, gains, rng.uniform(0.5, 2.0));
    auto v = greedy_linear_opt(f, w);
    CHECK(membership(v.x, f).inside);
  }
}

TEST_CASE("permutation polytope membership") {
  auto p = PermutationPolytope::erasure_feedback(2, 0.5);
  REQUIRE(p.coefficients() == std::vector<double>{0.5, 0.75});
  CHECK(p.contains({0.5, 0.0}));
  CHECK_FALSE(p.contains({0.5, 0.2}));
  CHECK(p.contains({0.0, 0.0}));
  CHECK_FALSE(p.contains({-0.2, 0.0}));

  std::vector<double> big(9, 0.1);
  CHECK_THROWS_AS(PermutationPolytope(std::vector<double>(9, 1.0)).contains(big), SizeCapError);
}

TEST_CASE("lovasz extension matches f on indicators and is linear on modular") {
  GroundSet g({"e1", "e2", "e3"});
  auto mac = SubmodularOracle::gaussian_mac_log(g, {1.0, 1.0, 0.6}, 1.0);
  for (Mask s = 0; s <= mac.ground().full_mask(); ++s) {
    std::vector<double> x(3, 0.0);
    for (int i = 0; i < 3; ++i)
      if (s & (Mask(1) << i)) x[static_cast<size_t>(i)] = 1.0;
    CHECK(lovasz_extension(mac, x) == doctest::Approx(mac.eval(s)).epsilon(1e-12));
  }

  auto mod = SubmodularOracle::modular(g, {0.5, 1.5, 2.0});
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double want = 0.5 * x[0] + 1.5 * x[1] + 2.0 * x[2];
    CHECK(lovasz_extension(mod, x) == doctest::Approx(want).epsilon(1e-12));
  }

  GroundSet g2({"e1", "e2"});
  auto mac2 = SubmodularOracle::gaussian_mac_log(g2, {1.0, 1.0}, 1.0);
  CHECK(lovasz_extension(mac2, {1.0, 0.5}) == doctest::Approx(1.2924812503605781).epsilon(1e-12));
  CHECK_THROWS_AS(lovasz_extension(mac2, {1.5, 0.0}), InvalidInputError);
}

TEST_CASE("lovasz extension is positively homogeneous on modular oracles") {
  GroundSet g({"a", "b", "c"});
  auto mod = SubmodularOracle::modular(g, {1.0, 0.25, 0.8});
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double c = rng.uniform(0.0, 1.0);
    std::vector<double> cx = {c * x[0], c * x[1], c * x[2]};
    CHECK(lovasz_extension(mod, cx) == doctest::Approx(c * lovasz_extension(mod, x)).epsilon(1e-10));
  }
}

TEST_CASE("rate polytope membership and vertex enumeration") {
  // The unit square: x <= 1, y <= 1.
  RatePolytope square(2, {{{1.0, 0.0}, 1.0, ""}, {{0.0, 1.0}, 1.0, ""}});
  CHECK(square.contains({0.5, 0.5}));
  CHECK_FALSE(square.contains({1.2, 0.0}));
  auto verts = enumerate_vertices(square);
  REQUIRE(verts.size() == 4);
  CHECK(verts[0] == std::vector<double>{0.0, 0.0});
  CHECK(verts[3] == std::vector<double>{1.0, 1.0});
}
