#include "doctest.h"

#include <cmath>

#include "polyflow/flowsolve.hpp"
#include "polyflow/rng.hpp"
#include "support/fixtures.hpp"
#include "support/path_oracle.hpp"

using namespace polyflow;
using namespace polyflow::testing;

TEST_CASE("single-edge unicast saturates the capacity") {
  auto net = single_edge_net(2.5);
  auto traffic = TrafficPattern::multiple_unicast({{"s", "t", 1.0}});
  auto sol = max_concurrent_flow(net, traffic);
  CHECK(sol.lambda == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(check_solution(net, traffic, sol).empty());
}

TEST_CASE("two-commodity star splits the joint MAC constraint evenly") {
  auto net = two_source_mac_star();
  auto traffic = TrafficPattern::multiple_unicast({{"a", "t", 1.0}, {"b", "t", 1.0}});
  auto sol = max_concurrent_flow(net, traffic);
  CHECK(sol.lambda == doctest::Approx(1.5849625007211562 / 2).epsilon(1e-9));
  CHECK(check_solution(net, traffic, sol).empty());
}

TEST_CASE("layered k=2 n1=3 reaches unit rate per commodity") {
  auto inst = make_layered_unit_network(2, {3});
  auto sol = max_concurrent_flow(inst.net, inst.traffic);
  CHECK(sol.lambda == doctest::Approx(1.0).epsilon(1e-9));
  auto sum = max_weighted_sum(inst.net, inst.traffic, {1.0, 1.0});
  CHECK(sum.objective == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(check_solution(inst.net, inst.traffic, sum).empty());
}

TEST_CASE("weighted sum with a unit vector reduces to single-commodity max flow") {
  auto inst = make_layered_unit_network(2, {1});
  auto one = max_weighted_sum(inst.net, inst.traffic, {1.0, 0.0});
  CHECK(one.objective == doctest::Approx(1.0).epsilon(1e-9));
  auto zero = max_weighted_sum(inst.net, inst.traffic, {0.0, 0.0});
  CHECK(zero.objective == doctest::Approx(0.0));
}

TEST_CASE("feasibility queries") {
  auto inst = make_layered_unit_network(2, {1});
  CHECK(feasible(inst.net, inst.traffic, {0.0, 0.0}).feasible);

  auto bad = feasible(inst.net, inst.traffic, {0.8, 0.8});
  CHECK_FALSE(bad.feasible);
  CHECK(bad.lambda == doctest::Approx(1.0 / 1.6).epsilon(1e-9));
  CHECK_FALSE(bad.binding.empty());

  // Strictly inside a computed solution's rates.
  auto sol = max_concurrent_flow(inst.net, inst.traffic);
  std::vector<double> inside;
  for (double r : sol.rates) inside.push_back(0.9 * r);
  CHECK(feasible(inst.net, inst.traffic, inside).feasible);
}

TEST_CASE("symmetric layered flow matches the closed form") {
  // k=2, L=1, n1=3: rates (1,1) feasible, each first-hop edge carries 1/3.
  auto res = symmetric_layered_flow({2, 3, 2}, {1.0, 1.0});
  REQUIRE(res.feasible);
  auto inst = make_layered_unit_network(2, {3});
  const int e = inst.net.edge_index("s1->m1_1");
  REQUIRE(e >= 0);
  double total = 0;
  for (const auto& f : res.flow) total += f[static_cast<size_t>(e)];
  CHECK(total == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  FlowSolution as_solution;
  as_solution.flow = res.flow;
  as_solution.rates = {1.0, 1.0};
  as_solution.objective = as_solution.dual_value = 0;
  CHECK(check_solution(inst.net, inst.traffic, as_solution).empty());

  CHECK_FALSE(symmetric_layered_flow({2, 1, 2}, {0.6, 0.6}).feasible);
  CHECK(symmetric_layered_flow({2, 1, 2}, {0.0, 0.0}).feasible);
  CHECK_THROWS_AS(symmetric_layered_flow({2, 2}, {1.0, 1.0}), InvalidInputError);
  CHECK_THROWS_AS(symmetric_layered_flow({2, 1, 3}, {1.0, 1.0}), InvalidInputError);
}

TEST_CASE("symmetric layered verdict agrees with the LP on a grid of rates") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 1 + rng.below(3);
    const int L = 1 + rng.below(2);
    std::vector<int> middle;
    for (int l = 0; l < L; ++l) middle.push_back(1 + rng.below(3));
    auto inst = make_layered_unit_network(k, middle);
    std::vector<double> rates;
    for (int i = 0; i < k; ++i) rates.push_back(rng.uniform(0.0, 1.3));

    std::vector<int> sizes{k};
    for (int n : middle) sizes.push_back(n);
    sizes.push_back(k);
    const bool closed_form = symmetric_layered_flow(sizes, rates).feasible;
    const bool lp = feasible(inst.net, inst.traffic, rates).feasible;
    CHECK(closed_form == lp);
  }
}

TEST_CASE("scaling every oracle scales lambda exactly") {
  auto base = two_source_mac_star();
  auto traffic = TrafficPattern::multiple_unicast({{"a", "t", 1.0}, {"b", "t", 1.0}});
  const double c = 0.37;
  std::map<std::string, SideCap> in_cap, out_cap;
  for (const auto& [node, cap] : base.in_caps())
    in_cap[node] = SideCap{SubmodularOracle::scaled(*cap.oracle, c), cap.free_edges};
  for (const auto& [node, cap] : base.out_caps())
    out_cap[node] = SideCap{SubmodularOracle::scaled(*cap.oracle, c), cap.free_edges};
  PolyNet scaled(base.nodes(), base.edges(), std::move(in_cap), std::move(out_cap));

  const double l0 = max_concurrent_flow(base, traffic).lambda;
  const double l1 = max_concurrent_flow(scaled, traffic).lambda;
  CHECK(l1 == doctest::Approx(c * l0).epsilon(1e-9));
}

TEST_CASE("unbounded when a commodity rides only free edges") {
  std::map<std::string, SideCap> in_cap, out_cap;
  PolyNet net({"s", "t"}, {{"e", "s", "t"}}, std::move(in_cap), std::move(out_cap));
  auto traffic = TrafficPattern::multiple_unicast({{"s", "t", 1.0}});
  auto sol = max_concurrent_flow(net, traffic);
  CHECK(sol.stats.status == LpStatus::Unbounded);
  CHECK(std::isinf(sol.lambda));
  CHECK(feasible(net, traffic, {123.0}).feasible);
}

TEST_CASE("degree cap raises unless lazy separation is on") {
  // One node with 10 parallel in-edges; force the lazy path with a tiny cap.
  std::vector<std::string> ids;
  std::vector<Edge> edges;
  std::vector<double> gains;
  for (int i = 0; i < 10; ++i) {
    ids.push_back("p" + std::to_string(i));
    edges.push_back({ids.back(), "s", "t"});
    gains.push_back(0.3 + 0.2 * i);
  }
  std::map<std::string, SideCap> in_cap, out_cap;
  in_cap["t"] = SideCap{SubmodularOracle::gaussian_mac_log(GroundSet(ids), gains, 1.0), {}};
  PolyNet net({"s", "t"}, edges, std::move(in_cap), std::move(out_cap));
  auto traffic = TrafficPattern::multiple_unicast({{"s", "t", 1.0}});

  SolveOptions small;
  small.degree_cap = 4;
  CHECK_THROWS_AS(max_concurrent_flow(net, traffic, small), SizeCapError);

  small.lazy = true;
  auto lazy_sol = max_concurrent_flow(net, traffic, small);
  auto full_sol = max_concurrent_flow(net, traffic);  // default cap 12 enumerates fully
  CHECK(lazy_sol.lambda == doctest::Approx(full_sol.lambda).epsilon(1e-7));
  CHECK(check_solution(net, traffic, lazy_sol).empty());
}

TEST_CASE("edge LP agrees with the independent path LP on random small nets") {
  Rng rng(99);
  int compared = 0;
  for (int trial = 0; trial < 120 && compared < 40; ++trial) {
    const int n = 3 + rng.below(4);  // up to 6 nodes
    std::vector<std::string> nodes;
    for (int v = 0; v < n; ++v) nodes.push_back("n" + std::to_string(v));
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b || rng.uniform() > 0.45) continue;
        edges.push_back({"e" + std::to_string(edges.size()), nodes[static_cast<size_t>(a)],
                         nodes[static_cast<size_t>(b)]});
      }
    if (edges.empty()) continue;

    std::map<std::string, SideCap> in_cap, out_cap;
    std::map<std::string, std::vector<std::string>> in_ids, out_ids;
    for (const auto& e : edges) {
      out_ids[e.tail].push_back(e.id);
      in_ids[e.head].push_back(e.id);
    }
    for (const auto& [node, ids2] : in_ids) {
      std::vector<double> w;
      for (size_t i = 0; i < ids2.size(); ++i) w.push_back(rng.uniform(0.2, 1.5));
      in_cap[node] = SideCap{SubmodularOracle::modular(GroundSet(ids2), w), {}};
    }
    for (const auto& [node, ids2] : out_ids) {
      std::vector<double> gains;
      for (size_t i = 0; i < ids2.size(); ++i) gains.push_back(rng.uniform(0.3, 2.0));
      out_cap[node] = SideCap{SubmodularOracle::gaussian_mac_log(GroundSet(ids2), gains, 1.0), {}};
    }
    PolyNet net(nodes, edges, std::move(in_cap), std::move(out_cap));

    const int k = 1 + rng.below(2);
    std::vector<Commodity> cs;
    for (int i = 0; i < k; ++i) {
      int s = rng.below(n), t = rng.below(n);
      if (s == t) t = (t + 1) % n;
      cs.push_back({nodes[static_cast<size_t>(s)], nodes[static_cast<size_t>(t)], 1.0});
    }
    auto traffic = TrafficPattern::multiple_unicast(cs);

    auto oracle = path_lp_concurrent(net, traffic, 10);
    if (!oracle.has_value()) continue;  // too many simple paths for the oracle
    auto sol = max_concurrent_flow(net, traffic);
    CHECK(sol.lambda == doctest::Approx(*oracle).epsilon(1e-6));
    CHECK(check_solution(net, traffic, sol).empty());
    ++compared;
  }
  CHECK(compared >= 40);
}

TEST_CASE("bidirected nets route reversed commodities at equal value") {
  auto star = reciprocal_mac_bc_star(1.0, 1.4, 2.0);
  auto fwd = max_concurrent_flow(star.net, TrafficPattern::multiple_unicast({{"u1", "u2", 1.0}}));
  auto back = max_concurrent_flow(star.net, TrafficPattern::multiple_unicast({{"u2", "u1", 1.0}}));
  CHECK(fwd.lambda == doctest::Approx(back.lambda).epsilon(1e-9));
}
