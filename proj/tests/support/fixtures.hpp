#pragma once

// Shared test instances.

#include <map>
#include <string>
#include <vector>

#include "polyflow/netmodel.hpp"

namespace polyflow::testing {

// s -> t with scalar capacity c enforced at both endpoints.
inline PolyNet single_edge_net(double c) {
  std::map<std::string, SideCap> in_cap, out_cap;
  out_cap["s"] = SideCap{SubmodularOracle::modular(GroundSet({"e"}), {c}), {}};
  in_cap["t"] = SideCap{SubmodularOracle::modular(GroundSet({"e"}), {c}), {}};
  return PolyNet({"s", "t"}, {{"e", "s", "t"}}, std::move(in_cap), std::move(out_cap));
}

// Two sources feeding one sink whose in-side carries the joint MAC constraint
// log2(1 + |h1|^2 P + |h2|^2 P); source out-sides are unconstrained.
inline PolyNet two_source_mac_star(double g1 = 1.0, double g2 = 1.0, double power = 1.0) {
  std::map<std::string, SideCap> in_cap, out_cap;
  in_cap["t"] = SideCap{
      SubmodularOracle::gaussian_mac_log(GroundSet({"e1", "e2"}), {g1, g2}, power), {}};
  return PolyNet({"a", "b", "t"}, {{"e1", "a", "t"}, {"e2", "b", "t"}}, std::move(in_cap),
                 std::move(out_cap));
}

// One reciprocal Gaussian MAC/BC pair: u1,u2 <-> v with the same gains in
// both directions, every node side carrying the matching formula oracle.
struct ReciprocalStar {
  PolyNet net;
  ReversalMap tau;
};
inline ReciprocalStar reciprocal_mac_bc_star(double g1 = 1.0, double g2 = 2.0, double power = 1.0,
                                             double reverse_g1 = -1.0) {
  if (reverse_g1 < 0) reverse_g1 = g1;
  std::vector<Edge> edges = {
      {"u1>v", "u1", "v"}, {"u2>v", "u2", "v"}, {"v>u1", "v", "u1"}, {"v>u2", "v", "u2"}};
  std::map<std::string, SideCap> in_cap, out_cap;
  in_cap["v"] = SideCap{
      SubmodularOracle::gaussian_mac_log(GroundSet({"u1>v", "u2>v"}), {g1 * g1, g2 * g2}, power), {}};
  out_cap["v"] = SideCap{SubmodularOracle::gaussian_mac_log(
                             GroundSet({"v>u1", "v>u2"}), {reverse_g1 * reverse_g1, g2 * g2}, power),
                         {}};
  out_cap["u1"] =
      SideCap{SubmodularOracle::gaussian_mac_log(GroundSet({"u1>v"}), {g1 * g1}, power), {}};
  out_cap["u2"] =
      SideCap{SubmodularOracle::gaussian_mac_log(GroundSet({"u2>v"}), {g2 * g2}, power), {}};
  in_cap["u1"] = SideCap{
      SubmodularOracle::gaussian_mac_log(GroundSet({"v>u1"}), {reverse_g1 * reverse_g1, }, power), {}};
  in_cap["u2"] =
      SideCap{SubmodularOracle::gaussian_mac_log(GroundSet({"v>u2"}), {g2 * g2}, power), {}};
  PolyNet net({"u1", "u2", "v"}, edges, std::move(in_cap), std::move(out_cap));
  ReversalMap tau({{"u1>v", "v>u1"}, {"u2>v", "v>u2"}});
  return {std::move(net), std::move(tau)};
}

// Directed 2x2 X instance with unit row/column coupling at every node.
struct XInstance {
  PolyNet net;
  TrafficPattern traffic;
};
inline XInstance x_2x2_unit() {
  std::vector<Edge> edges = {
      {"a>c", "a", "c"}, {"a>d", "a", "d"}, {"b>c", "b", "c"}, {"b>d", "b", "d"}};
  std::map<std::string, SideCap> in_cap, out_cap;
  out_cap["a"] = SideCap{SubmodularOracle::uniform_cap(GroundSet({"a>c", "a>d"}), 1.0), {}};
  out_cap["b"] = SideCap{SubmodularOracle::uniform_cap(GroundSet({"b>c", "b>d"}), 1.0), {}};
  in_cap["c"] = SideCap{SubmodularOracle::uniform_cap(GroundSet({"a>c", "b>c"}), 1.0), {}};
  in_cap["d"] = SideCap{SubmodularOracle::uniform_cap(GroundSet({"a>d", "b>d"}), 1.0), {}};
  PolyNet net({"a", "b", "c", "d"}, edges, std::move(in_cap), std::move(out_cap));
  return {std::move(net), TrafficPattern::x_traffic({"a", "b"}, {"c", "d"})};
}

}  // namespace polyflow::testing
