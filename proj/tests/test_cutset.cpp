#include "doctest.h"

#include <cmath>

#include "polyflow/cutset.hpp"
#include "polyflow/rng.hpp"
#include "support/fixtures.hpp"

using namespace polyflow;
using namespace polyflow::testing;

TEST_CASE("assignment minimization picks the joint MAC bound over singletons") {
  // u1,u2 -> v; charging both edges to v costs log2(3), the split costs 2.
  std::map<std::string, SideCap> in_cap, out_cap;
  in_cap["v"] = SideCap{
      SubmodularOracle::gaussian_mac_log(GroundSet({"e1", "e2"}), {1.0, 1.0}, 1.0), {}};
  out_cap["u1"] = SideCap{SubmodularOracle::modular(GroundSet({"e1"}), {1.0}), {}};
  out_cap["u2"] = SideCap{SubmodularOracle::modular(GroundSet({"e2"}), {1.0}), {}};
  PolyNet net({"u1", "u2", "v"}, {{"e1", "u1", "v"}, {"e2", "u2", "v"}}, std::move(in_cap),
              std::move(out_cap));

  auto cert = cut_cost(net, {"u1", "u2"});
  CHECK(cert.cost == doctest::Approx(1.5849625007211562).epsilon(1e-9));
  CHECK(cert.assignment.at("e1") == "v");
  CHECK(cert.assignment.at("e2") == "v");
  CHECK(cert.exact);
}

TEST_CASE("empty crossing set costs zero") {
  auto net = single_edge_net(2.0);
  auto cert = cut_cost(net, {"t"});  // no edge leaves {t}
  CHECK(cert.cost == 0.0);
  CHECK(cert.crossing.empty());
}

TEST_CASE("a cut through capacity-free intra-node edges is unbounded") {
  auto ex = expand_antennas({{"v", 2}});
  PolyNet net(ex.nodes, ex.intra_edges, {}, {});
  auto cert = cut_cost(net, {"v#0"});
  CHECK(cert.unbounded);
  CHECK(std::isinf(cert.cost));
}

TEST_CASE("min cut on a single edge") {
  auto net = single_edge_net(3.25);
  auto traffic = TrafficPattern::multiple_unicast({{"s", "t", 1.0}});
  auto report = min_cut(net, traffic);
  CHECK(report.scalar_min_cut() == doctest::Approx(3.25));
  CHECK(report.all_separable);
}

TEST_CASE("layered cut region recovers the min-layer bounds") {
  auto inst = make_layered_unit_network(2, {3});
  auto report = min_cut(inst.net, inst.traffic);
  REQUIRE(report.entries.size() == 3);
  for (const auto& e : report.entries) {
    if (e.separated == 0b01 || e.separated == 0b10)
      CHECK(e.bound == doctest::Approx(1.0));
    else if (e.separated == 0b11)
      CHECK(e.bound == doctest::Approx(2.0));
  }
  CHECK(report.support({1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(report.support({1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(report.concurrent_upper({1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("X sum rate equals the super-source min cut and max flow") {
  auto inst = x_2x2_unit();
  auto sum = max_weighted_sum(inst.net, inst.traffic, std::vector<double>(4, 1.0));

  auto aug = add_super_source_sink(inst.net, inst.traffic);
  auto aug_flow = max_concurrent_flow(aug.net, aug.traffic);
  auto aug_cut = min_cut(aug.net, aug.traffic);

  CHECK(sum.objective == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(aug_flow.lambda == doctest::Approx(sum.objective).epsilon(1e-6));
  CHECK(aug_cut.scalar_min_cut() == doctest::Approx(sum.objective).epsilon(1e-6));
}

TEST_CASE("unicast flow equals cut (single commodity gap is 1)") {
  auto star = reciprocal_mac_bc_star(1.0, 1.7, 1.3);
  auto traffic = TrafficPattern::multiple_unicast({{"u1", "u2", 1.0}});
  auto gap = flow_cut_gap(star.net, traffic, {.random_directions = 5});
  CHECK(gap.gap == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(gap.flow_within_cut);
}

TEST_CASE("layered multiple unicast has gap 1") {
  auto inst = make_layered_unit_network(2, {3});
  auto gap = flow_cut_gap(inst.net, inst.traffic, {.random_directions = 20});
  CHECK(gap.gap == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(gap.flow_within_cut);
}

TEST_CASE("cut decomposition across channel pieces") {
  // Two disjoint single-edge channels crossed by the same cut.
  std::map<std::string, SideCap> in_cap, out_cap;
  out_cap["a"] = SideCap{SubmodularOracle::modular(GroundSet({"e1"}), {1.5}), {}};
  out_cap["b"] = SideCap{SubmodularOracle::modular(GroundSet({"e2"}), {0.5}), {}};
  PolyNet net({"a", "b", "c", "d"}, {{"e1", "a", "c"}, {"e2", "b", "d"}}, std::move(in_cap),
              std::move(out_cap));
  std::map<std::string, std::string> channels{{"e1", "ch1"}, {"e2", "ch2"}};

  auto check = decomposition_check(net, channels, {"a", "b"});
  CHECK(check.whole == doctest::Approx(2.0));
  CHECK(check.sum_parts == doctest::Approx(2.0));
  CHECK(check.holds);

  auto none = decomposition_check(net, channels, {"c", "d"});
  CHECK(none.whole == 0.0);
  CHECK(none.sum_parts == 0.0);
  CHECK(none.holds);

  PolyNet net2({"a", "b", "c", "d"},
               {{"e1", "a", "c"}, {"e2", "b", "d"}},
               {}, {});
  CHECK_THROWS_AS(decomposition_check(net2, {}, {"a", "b"}), InvalidInputError);
}

namespace {

// Random sparse digraph with mixed oracle families on every side.
PolyNet random_net(Rng& rng, int n, double edge_prob, bool with_free) {
  std::vector<std::string> nodes;
  for (int v = 0; v < n; ++v) nodes.push_back("n" + std::to_string(v));
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || rng.uniform() > edge_prob) continue;
      if (edges.size() >= 14) break;
      edges.push_back({"e" + std::to_string(edges.size()), nodes[static_cast<size_t>(a)],
                       nodes[static_cast<size_t>(b)]});
    }
  std::map<std::string, std::vector<std::string>> in_ids, out_ids;
  for (const auto& e : edges) {
    out_ids[e.tail].push_back(e.id);
    in_ids[e.head].push_back(e.id);
  }
  std::map<std::string, SideCap> in_cap, out_cap;
  auto make_cap = [&](const std::vector<std::string>& ids) -> SideCap {
    std::vector<std::string> ground = ids;
    std::vector<std::string> free;
    if (with_free && ids.size() > 1 && rng.uniform() < 0.2) {
      free.push_back(ground.back());
      ground.pop_back();
    }
    const int pick = rng.below(4);
    SubmodularOracle oracle = [&] {
      GroundSet g(ground);
      const int sz = static_cast<int>(ground.size());
      switch (pick) {
        case 0: {
          std::vector<double> w;
          for (int i = 0; i < sz; ++i) w.push_back(rng.uniform(0.2, 2.0));
          return SubmodularOracle::modular(g, w);
        }
        case 1: {
          std::vector<double> gains;
          for (int i = 0; i < sz; ++i) gains.push_back(rng.uniform(0.3, 3.0));
          return SubmodularOracle::gaussian_mac_log(g, gains, rng.uniform(0.5, 2.0));
        }
        case 2:
          return SubmodularOracle::cut_erasure(g, rng.uniform(0.2, 0.8));
        default:
          return SubmodularOracle::uniform_cap(g, rng.uniform(0.4, 2.0));
      }
    }();
    return SideCap{std::move(oracle), std::move(free)};
  };
  for (const auto& [node, ids] : in_ids)
    if (!ids.empty()) in_cap[node] = make_cap(ids);
  for (const auto& [node, ids] : out_ids)
    if (!ids.empty()) out_cap[node] = make_cap(ids);
  return PolyNet(nodes, edges, std::move(in_cap), std::move(out_cap));
}

}  // namespace

TEST_CASE("exhaustive assignment never loses to the greedy fallback") {
  Rng rng(17);
  CutOptions greedy_only;
  greedy_only.assignment_cap = 0;
  greedy_only.greedy_fallback = true;
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    PolyNet net = random_net(rng, 4 + rng.below(3), 0.5, false);
    if (net.num_edges() == 0) continue;
    std::set<std::string> omega;
    for (const auto& v : net.nodes())
      if (rng.uniform() < 0.5) omega.insert(v);
    auto exact = cut_cost(net, omega);
    auto approx = cut_cost(net, omega, greedy_only);
    if (exact.unbounded) {
      CHECK(approx.unbounded);
      continue;
    }
    CHECK(exact.cost <= approx.cost + 1e-9);
    // The vertex-cover fast path stays exact even under a zero cap; otherwise
    // the result must be flagged approximate.
    if (approx.exact) CHECK(approx.cost == doctest::Approx(exact.cost).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("uniform-cap vertex-cover fast path matches exhaustive enumeration") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + rng.below(3);
    std::vector<std::string> nodes;
    for (int v = 0; v < n; ++v) nodes.push_back("n" + std::to_string(v));
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && rng.uniform() < 0.5 && edges.size() < 12)
          edges.push_back({"e" + std::to_string(edges.size()), nodes[static_cast<size_t>(a)],
                           nodes[static_cast<size_t>(b)]});
    std::map<std::string, std::vector<std::string>> in_ids, out_ids;
    for (const auto& e : edges) {
      out_ids[e.tail].push_back(e.id);
      in_ids[e.head].push_back(e.id);
    }
    std::map<std::string, SideCap> in_u, out_u, in_t, out_t;
    std::map<std::string, double> rate_of;
    for (const auto& [node, ids] : in_ids) {
      const double r = rng.uniform(0.3, 2.0);
      rate_of["i" + node] = r;
      in_u[node] = SideCap{SubmodularOracle::uniform_cap(GroundSet(ids), r), {}};
      in_t[node] = SideCap{
          SubmodularOracle::truncation(
              SubmodularOracle::modular(GroundSet(ids), std::vector<double>(ids.size(), 100.0)), r),
          {}};
    }
    for (const auto& [node, ids] : out_ids) {
      const double r = rng.uniform(0.3, 2.0);
      out_u[node] = SideCap{SubmodularOracle::uniform_cap(GroundSet(ids), r), {}};
      out_t[node] = SideCap{
          SubmodularOracle::truncation(
              SubmodularOracle::modular(GroundSet(ids), std::vector<double>(ids.size(), 100.0)), r),
          {}};
    }
    PolyNet uniform(nodes, edges, in_u, out_u);
    PolyNet truncated(nodes, edges, in_t, out_t);  // same function, different family

    std::set<std::string> omega;
    for (const auto& v : nodes)
      if (rng.uniform() < 0.5) omega.insert(v);
    auto fast = cut_cost(uniform, omega);
    auto slow = cut_cost(truncated, omega);
    CHECK(fast.unbounded == slow.unbounded);
    if (!fast.unbounded) CHECK(fast.cost == doctest::Approx(slow.cost).epsilon(1e-9));
  }
}

TEST_CASE("weak duality: concurrent flow stays below every separating bound") {
  Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    PolyNet net = random_net(rng, 5, 0.45, true);
    if (net.num_edges() < 3) continue;
    const int k = 1 + rng.below(3);
    std::vector<Commodity> cs;
    for (int i = 0; i < k; ++i) {
      int s = rng.below(5), t = rng.below(5);
      if (s == t) t = (t + 1) % 5;
      cs.push_back({"n" + std::to_string(s), "n" + std::to_string(t), rng.uniform(0.5, 1.5)});
    }
    auto traffic = TrafficPattern::multiple_unicast(cs);
    auto sol = max_concurrent_flow(net, traffic);
    auto report = min_cut(net, traffic);
    std::vector<double> demands;
    for (const auto& c : cs) demands.push_back(c.demand);
    if (std::isinf(sol.lambda)) continue;
    CHECK(sol.lambda <= report.concurrent_upper(demands) + 1e-6);
    ++checked;
  }
  CHECK(checked > 20);
}
