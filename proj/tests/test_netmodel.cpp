#include "doctest.h"

#include "polyflow/netmodel.hpp"
#include "support/fixtures.hpp"

using namespace polyflow;
using namespace polyflow::testing;

TEST_CASE("well-formed nets validate cleanly") {
  auto net = single_edge_net(2.0);
  CHECK(validate(net).empty());
  CHECK(validate(two_source_mac_star()).empty());
}

TEST_CASE("an edge missing from its head's ground set is flagged") {
  std::map<std::string, SideCap> in_cap, out_cap;
  // inCap at t constrains nothing, but the edge is not in its free list either.
  in_cap["t"] = SideCap{SubmodularOracle::modular(GroundSet(std::vector<std::string>{}), {}), {}};
  PolyNet net({"s", "t"}, {{"e", "s", "t"}}, std::move(in_cap), std::move(out_cap));
  auto v = validate(net);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("edge unhoused") != std::string::npos);
  CHECK_THROWS_AS(net.require_consistent(), InvalidInputError);
}

TEST_CASE("deep validation flags a non-monotone oracle") {
  std::map<std::string, SideCap> in_cap, out_cap;
  in_cap["t"] = SideCap{SubmodularOracle::table(GroundSet({"e1", "e2"}), {0, 1, 1, 0.5}), {}};
  PolyNet net({"a", "b", "t"}, {{"e1", "a", "t"}, {"e2", "b", "t"}}, std::move(in_cap),
              std::move(out_cap));
  CHECK(validate(net).empty());
  auto v = validate(net, {.deep_oracle_checks = true});
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("not monotone") != std::string::npos);
}

TEST_CASE("free edges and the unconstrained sentinel are consistent") {
  std::map<std::string, SideCap> in_cap, out_cap;
  out_cap["s"] = SideCap{SubmodularOracle::modular(GroundSet({"e"}), {1.0}), {"f"}};
  PolyNet net({"s", "t"}, {{"e", "s", "t"}, {"f", "s", "t"}}, std::move(in_cap), std::move(out_cap));
  CHECK(validate(net).empty());
  CHECK(net.edge_free_at(net.edge_index("f"), false));
  CHECK_FALSE(net.edge_free_at(net.edge_index("e"), false));
  CHECK(net.edge_free_at(net.edge_index("e"), true));  // t's in side is unconstrained
}

TEST_CASE("structural errors throw at construction") {
  CHECK_THROWS_AS(PolyNet({"a", "a"}, {}, {}, {}), InvalidInputError);
  CHECK_THROWS_AS(PolyNet({"a"}, {{"e", "a", "zzz"}}, {}, {}), InvalidInputError);
  CHECK_THROWS_AS(PolyNet({"a", "b"}, {{"e", "a", "b"}, {"e", "a", "b"}}, {}, {}),
                  InvalidInputError);
}

TEST_CASE("reversal map is an involution with swapped endpoints") {
  CHECK_THROWS_AS(ReversalMap(std::map<std::string, std::string>{{"e", "e"}}), InvalidInputError);
  auto star = reciprocal_mac_bc_star();
  CHECK(star.tau.violations(star.net).empty());
  CHECK(star.tau.reverse("u1>v") == "v>u1");

  ReversalMap wrong({{"u1>v", "v>u2"}, {"u2>v", "v>u1"}});
  CHECK_FALSE(wrong.violations(star.net).empty());
}

TEST_CASE("reciprocal MAC/BC pair is bidirected; a perturbed gain breaks it") {
  auto star = reciprocal_mac_bc_star(1.0, 2.0, 1.0);
  CHECK(is_bidirected(star.net, star.tau));

  auto bent = reciprocal_mac_bc_star(1.0, 2.0, 1.0, /*reverse_g1=*/1.31);
  CHECK_FALSE(is_bidirected(bent.net, bent.tau));
}

TEST_CASE("empty graph is vacuously bidirected") {
  PolyNet net({"a", "b"}, {}, {}, {});
  CHECK(is_bidirected(net, ReversalMap({})));
}

TEST_CASE("super source/sink augmentation") {
  auto inst = x_2x2_unit();
  auto aug = add_super_source_sink(inst.net, inst.traffic);
  CHECK(aug.net.num_nodes() == inst.net.num_nodes() + 2);
  CHECK(aug.net.num_edges() == inst.net.num_edges() + 4);
  CHECK(aug.traffic.size() == 1);
  CHECK(validate(aug.net).empty());
  // The new edges carry no constraint at either side.
  for (const auto& id : {"S*->a", "S*->b", "c->T*", "d->T*"}) {
    const int e = aug.net.edge_index(id);
    REQUIRE(e >= 0);
    CHECK(aug.net.edge_free_at(e, true));
    CHECK(aug.net.edge_free_at(e, false));
  }

  CHECK_THROWS_AS(add_super_source_sink(inst.net, TrafficPattern::multiple_unicast({{"a", "c", 1.0}})),
                  InvalidInputError);
  CHECK_THROWS_AS(TrafficPattern::x_traffic({}, {"c"}), InvalidInputError);
}

TEST_CASE("split by color") {
  // v sits on two colors; u and w on one each.
  std::vector<ColoredEdge> edges = {{"e1", "u", "v", "c1"}, {"e2", "v", "w", "c2"}};
  auto sk = split_by_color({"u", "v", "w"}, edges);
  CHECK(sk.nodes.size() == 4);  // u@c1, v@c1, v@c2, w@c2
  CHECK(sk.intra_edges.size() == 2);
  CHECK(sk.vertex_of.at({"v", "c1"}) == "v@c1");
  CHECK(sk.vertex_of.at({"v", "c2"}) == "v@c2");
  CHECK(sk.intra_edges[0].tail == "v@c1");
  CHECK(sk.intra_edges[0].head == "v@c2");

  // Single color: one vertex per node, no intra edges.
  auto iso = split_by_color({"u", "v"}, {{"e", "u", "v", "c"}});
  CHECK(iso.nodes.size() == 2);
  CHECK(iso.intra_edges.empty());

  // Three-node MAC on c plus a two-node link on c' sharing one node:
  // vertex count is sum over nodes of |C(v)|.
  std::vector<ColoredEdge> mixed = {{"m1", "x", "hub", "c"},
                                    {"m2", "y", "hub", "c"},
                                    {"l1", "hub", "z", "cc"}};
  auto sk2 = split_by_color({"x", "y", "hub", "z"}, mixed);
  CHECK(sk2.nodes.size() == 5);  // x@c, y@c, hub@c, hub@cc, z@cc

  CHECK_THROWS_AS(split_by_color({"u", "v"}, {{"e", "u", "v", ""}}), InvalidInputError);
}

TEST_CASE("antenna expansion") {
  auto ex = expand_antennas({{"v", 2}, {"w", 1}});
  CHECK(ex.nodes.size() == 3);
  CHECK(ex.intra_edges.size() == 2);
  CHECK(ex.antennas_of.at("v").size() == 2);
  CHECK(ex.original_of.at("v#0") == "v");
  CHECK(ex.antennas_of.at("w") == std::vector<std::string>{"w"});  // identity transform
  CHECK_THROWS_AS(expand_antennas({{"v", 0}}), InvalidInputError);
}

TEST_CASE("layered unit network structure") {
  auto inst = make_layered_unit_network(2, {3});
  CHECK(inst.net.num_nodes() == 7);
  CHECK(inst.net.num_edges() == 2 * 3 + 3 * 2);
  CHECK(inst.sizes == std::vector<int>{2, 3, 2});
  CHECK(validate(inst.net).empty());
  CHECK(inst.traffic.size() == 2);
}

TEST_CASE("traffic constructors expand and validate") {
  CHECK_THROWS_AS(TrafficPattern::multiple_unicast({{"a", "a", 1.0}}), InvalidInputError);
  CHECK_THROWS_AS(TrafficPattern::multiple_unicast({{"a", "b", 0.0}}), InvalidInputError);
  auto bc = TrafficPattern::broadcast("s", {"t1", "t2", "t3"});
  CHECK(bc.size() == 3);
  CHECK(bc.kind() == TrafficKind::Broadcast);
  auto g = TrafficPattern::group({"a", "b", "c"});
  CHECK(g.size() == 6);
  auto x = TrafficPattern::x_traffic({"a", "b"}, {"c", "d", "e"});
  CHECK(x.size() == 6);
}
