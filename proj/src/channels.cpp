#include "polyflow/channels.hpp"

#include <algorithm>
#include <cmath>

#include "polyflow/cutset.hpp"

namespace polyflow {

namespace {

GroundSet default_ground(size_t n, const char* prefix) {
  std::vector<std::string> ids;
  for (size_t i = 1; i <= n; ++i) ids.push_back(std::string(prefix) + std::to_string(i));
  return GroundSet(ids);
}

std::vector<double> squares(const std::vector<double>& gains) {
  std::vector<double> sq;
  for (double g : gains) sq.push_back(g * g);
  return sq;
}

}  // namespace

SubmodularOracle gaussian_mac_region(const std::vector<double>& gains, double power,
                                     std::optional<GroundSet> ground) {
  if (gains.empty()) throw InvalidInputError("gaussian_mac_region: need at least one gain");
  GroundSet g = ground.value_or(default_ground(gains.size(), "u"));
  return SubmodularOracle::gaussian_mac_log(std::move(g), squares(gains), power);
}

double general_cut_bound(const std::vector<double>& gains, Mask subset, double power) {
  double amp = 0;
  for (size_t i = 0; i < gains.size(); ++i)
    if (subset & (Mask(1) << i)) amp += std::abs(gains[i]);
  return std::log2(1.0 + amp * amp * power);
}

double product_cut_bound(const std::vector<double>& gains, Mask subset, double power) {
  double sq = 0;
  for (size_t i = 0; i < gains.size(); ++i)
    if (subset & (Mask(1) << i)) sq += gains[i] * gains[i];
  return std::log2(1.0 + sq * power);
}

PowerScalingCheck power_scaling_check(const std::vector<double>& gains, double power) {
  PowerScalingCheck out;
  const int d = static_cast<int>(gains.size());
  const Mask full = d == 0 ? 0 : (Mask(1) << d) - 1;
  for (Mask s = 1; s <= full; ++s) {
    PowerScalingRow row;
    row.subset = s;
    row.general_at_p = general_cut_bound(gains, s, power);
    row.product_at_dp = product_cut_bound(gains, s, d * power);
    if (row.general_at_p > row.product_at_dp + kExactTol) out.contained = false;
    out.rows.push_back(row);
  }
  return out;
}

ErasureRegions erasure_regions(int d, double epsilon) {
  if (d < 1) throw InvalidInputError("erasure_regions: d must be >= 1");
  if (!(epsilon > 0 && epsilon < 1))
    throw InvalidInputError("erasure_regions: epsilon must lie in (0,1)");
  Halfspace sum;
  sum.coeffs.assign(static_cast<size_t>(d), 1.0);
  sum.bound = 1.0 - epsilon;
  sum.tag = "no-feedback sum rate";
  ErasureRegions out{RatePolytope(d, {sum}),
                     PermutationPolytope::erasure_feedback(d, epsilon),
                     SubmodularOracle::cut_erasure(default_ground(static_cast<size_t>(d), "u"), epsilon),
                     (1.0 - epsilon) / (1.0 - std::pow(epsilon, d)),
                     harmonic_gap_factor(d, epsilon)};
  return out;
}

SubmodularOracle mac_erasure_region(int d, double epsilon, std::optional<GroundSet> ground) {
  if (d < 1) throw InvalidInputError("mac_erasure_region: d must be >= 1");
  GroundSet g = ground.value_or(default_ground(static_cast<size_t>(d), "u"));
  if (g.size() != d) throw InvalidInputError("mac_erasure_region: ground size mismatch");
  return SubmodularOracle::cut_erasure(std::move(g), epsilon);
}

namespace {

XChannelRegion build_x_region(const std::vector<std::pair<std::string, std::string>>& edge_pairs,
                              double rate) {
  if (edge_pairs.empty()) throw InvalidInputError("x channel: empty edge set");
  XChannelRegion out;
  out.rate = rate;
  std::map<std::string, std::vector<std::string>> rows, cols;
  for (const auto& [s, t] : edge_pairs) {
    if (s == t) throw InvalidInputError("x channel: source equals sink at " + s);
    const std::string id = "x:" + s + ">" + t;
    out.edges.push_back({id, s, t});
    rows[s].push_back(id);
    cols[t].push_back(id);
  }
  int deg = 1;
  for (const auto& [node, ids] : rows) {
    out.out_caps.emplace(node, SubmodularOracle::uniform_cap(GroundSet(ids), rate));
    deg = std::max(deg, static_cast<int>(ids.size()));
  }
  for (const auto& [node, ids] : cols) {
    out.in_caps.emplace(node, SubmodularOracle::uniform_cap(GroundSet(ids), rate));
    deg = std::max(deg, static_cast<int>(ids.size()));
  }
  out.max_degree = deg;
  return out;
}

}  // namespace

XChannelRegion x_channel_region(const std::vector<std::pair<std::string, std::string>>& edges,
                                double power, const FadingModel& fading) {
  XChannelRegion out = build_x_region(edges, 0.5 * fading.ergodic_capacity(2.0 * power));
  out.cut_comparison_bound =
      fading.ergodic_capacity(fading.a_constant() * out.max_degree * power);
  return out;
}

XChannelRegion x_channel_dof_region(const std::vector<std::pair<std::string, std::string>>& edges) {
  return build_x_region(edges, 0.5);
}

SubmodularOracle ld_region(const std::vector<GfMatrix>& matrices, int q,
                           std::optional<GroundSet> ground) {
  if (matrices.empty()) throw InvalidInputError("ld_region: need at least one matrix");
  GroundSet g = ground.value_or(default_ground(matrices.size(), "u"));
  return SubmodularOracle::rank_gf(std::move(g), q, matrices);
}

SubmodularOracle ld_region_mac(const std::vector<GfMatrix>& matrices, int q,
                               std::optional<GroundSet> ground) {
  std::vector<GfMatrix> t;
  for (const auto& m : matrices) t.push_back(m.transposed());
  return ld_region(t, q, std::move(ground));
}

double ld_x_rate(int q) {
  if (!is_prime(q)) throw InvalidInputError("ld_x_rate: q must be prime");
  return 0.5 * std::log2(static_cast<double>(q));
}

DelayedCsitRegion delayed_csit_bc_dof(int tx_antennas, const std::vector<int>& rx_antennas) {
  if (tx_antennas < 1) throw InvalidInputError("delayed_csit_bc_dof: need >= 1 transmit antenna");
  if (rx_antennas.empty()) throw InvalidInputError("delayed_csit_bc_dof: need >= 1 receiver");
  int total_rx = 0;
  for (int m : rx_antennas) {
    if (m < 1) throw InvalidInputError("delayed_csit_bc_dof: antenna counts must be >= 1");
    total_rx += m;
  }
  DelayedCsitRegion out{std::min(tx_antennas, total_rx), 1.0, RatePolytope(0, {}), RatePolytope(0, {})};
  out.factor = harmonic_number(out.p);

  const int n = total_rx;  // one stream per receive antenna
  std::vector<Halfspace> ach, cut;
  for (int j = 0; j < n; ++j) {
    Halfspace h;
    h.coeffs.assign(static_cast<size_t>(n), 0.0);
    h.coeffs[static_cast<size_t>(j)] = 1.0;
    h.bound = 1.0 / out.factor;
    h.tag = "stream";
    ach.push_back(h);
    h.bound = 1.0;
    cut.push_back(h);
  }
  Halfspace sum;
  sum.coeffs.assign(static_cast<size_t>(n), 1.0);
  sum.bound = out.p / out.factor;
  sum.tag = "sum";
  ach.push_back(sum);
  sum.bound = out.p;
  cut.push_back(sum);
  out.achievable = RatePolytope(n, std::move(ach));
  out.cut = RatePolytope(n, std::move(cut));
  return out;
}

std::vector<double> dof_to_matching_point(const std::vector<double>& dof, int tx_antennas) {
  if (tx_antennas < 1) throw InvalidInputError("dof_to_matching_point: bad antenna count");
  const double h = harmonic_number(tx_antennas);
  std::vector<double> x;
  x.reserve(static_cast<size_t>(tx_antennas) * dof.size());
  for (int i = 0; i < tx_antennas; ++i)
    for (double dj : dof) x.push_back(h * dj / tx_antennas);
  return x;
}

std::vector<double> matching_point_to_dof(const std::vector<double>& x, int tx_antennas,
                                          int receivers) {
  if (static_cast<int>(x.size()) != tx_antennas * receivers)
    throw InvalidInputError("matching_point_to_dof: dimension mismatch");
  const double h = harmonic_number(tx_antennas);
  std::vector<double> dof(static_cast<size_t>(receivers), 0.0);
  for (int i = 0; i < tx_antennas; ++i)
    for (int j = 0; j < receivers; ++j)
      dof[static_cast<size_t>(j)] += x[static_cast<size_t>(i * receivers + j)] / h;
  return dof;
}

//============================================================================
// Compilation
//============================================================================

namespace {

// Normalized view of a color-mode star channel.
struct Star {
  enum Kind { Gaussian, Erasure, LinDet, DelayedCsit } kind = Gaussian;
  std::string color, hub;
  std::vector<std::string> leaves;
  bool uplink = false;  // forward edges run leaves -> hub
  std::vector<double> gains;
  double power = 1;
  double epsilon = 0.5;
  bool feedback = true;
  int q = 2;
  std::vector<GfMatrix> mats;
  int tx_antennas = 1;
  std::vector<int> rx_antennas;

  int degree() const { return static_cast<int>(leaves.size()); }
  int p() const {
    int total = 0;
    for (int m : rx_antennas) total += m;
    return std::min(tx_antennas, total);
  }
};

Star normalize_star(const ChannelSpec& spec) {
  Star s;
  if (const auto* m = std::get_if<GaussianMacSpec>(&spec)) {
    s.kind = Star::Gaussian;
    s.color = m->color;
    s.hub = m->receiver;
    s.leaves = m->sources;
    s.uplink = true;
    s.gains = m->gains;
    s.power = m->power;
  } else if (const auto* b = std::get_if<GaussianBcSpec>(&spec)) {
    s.kind = Star::Gaussian;
    s.color = b->color;
    s.hub = b->transmitter;
    s.leaves = b->receivers;
    s.uplink = false;
    s.gains = b->gains;
    s.power = b->power;
  } else if (const auto* e = std::get_if<ErasureBcSpec>(&spec)) {
    s.kind = Star::Erasure;
    s.color = e->color;
    s.hub = e->transmitter;
    s.leaves = e->receivers;
    s.uplink = false;
    s.epsilon = e->epsilon;
    s.feedback = e->feedback;
  } else if (const auto* lm = std::get_if<LinDetMacSpec>(&spec)) {
    s.kind = Star::LinDet;
    s.color = lm->color;
    s.hub = lm->receiver;
    s.leaves = lm->sources;
    s.uplink = true;
    s.q = lm->q;
    s.mats = lm->matrices;
  } else if (const auto* lb = std::get_if<LinDetBcSpec>(&spec)) {
    s.kind = Star::LinDet;
    s.color = lb->color;
    s.hub = lb->transmitter;
    s.leaves = lb->receivers;
    s.uplink = false;
    s.q = lb->q;
    s.mats = lb->matrices;
  } else if (const auto* d = std::get_if<DelayedCsitBcSpec>(&spec)) {
    s.kind = Star::DelayedCsit;
    s.color = d->color;
    s.hub = d->transmitter;
    s.leaves = d->receivers;
    s.uplink = false;
    s.tx_antennas = d->tx_antennas;
    s.rx_antennas = d->rx_antennas;
  } else {
    throw InvalidInputError("X-channel specs compile in snapshot or antenna mode, not color mode");
  }

  if (s.color.empty()) throw InvalidInputError("channel without a color");
  if (s.leaves.empty()) throw InvalidInputError("channel " + s.color + " has no users");
  std::set<std::string> seen;
  for (const auto& leaf : s.leaves) {
    if (leaf == s.hub) throw InvalidInputError("channel " + s.color + " connects " + s.hub + " to itself");
    if (!seen.insert(leaf).second)
      throw InvalidInputError("channel " + s.color + " lists user " + leaf + " twice");
  }
  const size_t d = s.leaves.size();
  if (s.kind == Star::Gaussian && s.gains.size() != d)
    throw InvalidInputError("channel " + s.color + ": gain count mismatch");
  if (s.kind == Star::LinDet && s.mats.size() != d)
    throw InvalidInputError("channel " + s.color + ": matrix count mismatch");
  if (s.kind == Star::DelayedCsit && s.rx_antennas.size() != d)
    throw InvalidInputError("channel " + s.color + ": antenna count mismatch");
  return s;
}

// Per-vertex-side bookkeeping while laying out channel edges.
struct SidePlan {
  std::vector<std::string> edge_ids;  // ground order
  std::vector<int> leaf_index;        // which leaf each edge talks to
  const Star* star = nullptr;
};

SubmodularOracle star_oracle(const Star& s, const SidePlan& plan) {
  GroundSet g(plan.edge_ids);
  switch (s.kind) {
    case Star::Gaussian: {
      std::vector<double> sq;
      for (int li : plan.leaf_index) sq.push_back(s.gains[static_cast<size_t>(li)] *
                                                  s.gains[static_cast<size_t>(li)]);
      return SubmodularOracle::gaussian_mac_log(std::move(g), std::move(sq), s.power);
    }
    case Star::Erasure:
      if (s.feedback) return SubmodularOracle::cut_erasure(std::move(g), s.epsilon);
      return SubmodularOracle::uniform_cap(std::move(g), 1.0 - s.epsilon);
    case Star::LinDet: {
      std::vector<GfMatrix> mats;
      for (int li : plan.leaf_index) mats.push_back(s.mats[static_cast<size_t>(li)]);
      return SubmodularOracle::rank_gf(std::move(g), s.q, std::move(mats));
    }
    case Star::DelayedCsit: {
      std::vector<double> antennas;
      for (int li : plan.leaf_index)
        antennas.push_back(static_cast<double>(s.rx_antennas[static_cast<size_t>(li)]));
      return SubmodularOracle::truncation(
          SubmodularOracle::modular(std::move(g), std::move(antennas)), s.p());
    }
  }
  throw InvalidInputError("unreachable");
}

CompiledChannel star_loss_factors(const Star& s, int index) {
  CompiledChannel c;
  c.index = index;
  c.label = s.color;
  switch (s.kind) {
    case Star::Gaussian:
      c.kind = s.uplink ? "gaussianMac" : "gaussianBc";
      c.power_scale = s.degree();
      c.rate_scale = 1;
      break;
    case Star::Erasure:
      c.kind = s.feedback ? "erasureBcFb" : "erasureBc";
      c.power_scale = 1;
      c.rate_scale = s.feedback
                         ? harmonic_gap_factor(s.degree(), s.epsilon)
                         : (1.0 - std::pow(s.epsilon, s.degree())) / (1.0 - s.epsilon);
      break;
    case Star::LinDet:
      c.kind = s.uplink ? "linDetMac" : "linDetBc";
      c.power_scale = 1;
      c.rate_scale = 1;
      break;
    case Star::DelayedCsit:
      c.kind = "delayedCsitBc";
      c.power_scale = 1;
      c.rate_scale = harmonic_number(s.p());
      break;
  }
  return c;
}

CompileResult compile_color(const WirelessSpec& spec) {
  std::vector<Star> stars;
  std::set<std::string> colors;
  std::vector<std::string> unpairable;
  for (const auto& ch : spec.channels) {
    stars.push_back(normalize_star(ch));
    if (!colors.insert(stars.back().color).second)
      throw InvalidInputError("duplicate channel color " + stars.back().color);
    if (spec.reciprocal && stars.back().kind == Star::Erasure && !stars.back().feedback)
      unpairable.push_back(stars.back().color);
  }
  if (!unpairable.empty()) {
    std::string msg = "reciprocal compile impossible; channels without a reverse direction:";
    for (const auto& c : unpairable) msg += " " + c;
    throw InvalidInputError(msg);
  }

  // Lay out colored channel edges (forward, plus reverse when reciprocal).
  std::vector<ColoredEdge> colored;
  std::set<std::string> node_set(spec.extra_nodes.begin(), spec.extra_nodes.end());
  if (spec.traffic)
    for (const auto& c : spec.traffic->commodities()) {
      node_set.insert(c.source);
      node_set.insert(c.sink);
    }
  for (const auto& s : stars) {
    node_set.insert(s.hub);
    for (const auto& leaf : s.leaves) node_set.insert(leaf);
    for (const auto& leaf : s.leaves) {
      const std::string fwd_tail = s.uplink ? leaf : s.hub;
      const std::string fwd_head = s.uplink ? s.hub : leaf;
      colored.push_back({s.color + ":" + fwd_tail + ">" + fwd_head, fwd_tail, fwd_head, s.color});
      if (spec.reciprocal)
        colored.push_back({s.color + ":" + fwd_head + ">" + fwd_tail, fwd_head, fwd_tail, s.color});
    }
  }

  std::vector<std::string> nodes(node_set.begin(), node_set.end());
  SplitSkeleton sk = split_by_color(nodes, colored);

  // Channel edges land on the split vertices; collect per-side plans.
  std::vector<Edge> edges;
  std::map<std::pair<std::string, bool>, SidePlan> plans;  // (vertex, in_side)
  std::map<std::string, std::string> edge_channel;
  std::vector<CompiledChannel> compiled;
  for (size_t si = 0; si < stars.size(); ++si) {
    const Star& s = stars[si];
    CompiledChannel cc = star_loss_factors(s, static_cast<int>(si));
    cc.reciprocal = spec.reciprocal;
    for (int li = 0; li < s.degree(); ++li) {
      const std::string& leaf = s.leaves[static_cast<size_t>(li)];
      const std::string hub_v = sk.vertex_of.at({s.hub, s.color});
      const std::string leaf_v = sk.vertex_of.at({leaf, s.color});
      const std::string fwd_tail = s.uplink ? leaf_v : hub_v;
      const std::string fwd_head = s.uplink ? hub_v : leaf_v;
      const std::string fwd_tail_orig = s.uplink ? leaf : s.hub;
      const std::string fwd_head_orig = s.uplink ? s.hub : leaf;
      auto add_edge = [&](const std::string& t_orig, const std::string& h_orig,
                          const std::string& t, const std::string& h) {
        const std::string id = s.color + ":" + t_orig + ">" + h_orig;
        edges.push_back({id, t, h});
        plans[{t, false}].edge_ids.push_back(id);
        plans[{t, false}].leaf_index.push_back(li);
        plans[{t, false}].star = &s;
        plans[{h, true}].edge_ids.push_back(id);
        plans[{h, true}].leaf_index.push_back(li);
        plans[{h, true}].star = &s;
        edge_channel[id] = s.color;
        cc.edges.push_back(id);
      };
      add_edge(fwd_tail_orig, fwd_head_orig, fwd_tail, fwd_head);
      if (spec.reciprocal) add_edge(fwd_head_orig, fwd_tail_orig, fwd_head, fwd_tail);
    }
    compiled.push_back(std::move(cc));
  }

  // Intra-node edges are capacity-free at both endpoints.
  std::map<std::string, std::vector<std::string>> intra_in, intra_out;
  for (const auto& e : sk.intra_edges) {
    edges.push_back(e);
    intra_out[e.tail].push_back(e.id);
    intra_in[e.head].push_back(e.id);
  }

  std::map<std::string, SideCap> in_cap, out_cap;
  for (const auto& [key, plan] : plans) {
    const auto& [vertex, in_side] = key;
    SideCap cap{star_oracle(*plan.star, plan), {}};
    const auto& intra = in_side ? intra_in : intra_out;
    auto it = intra.find(vertex);
    if (it != intra.end()) cap.free_edges = it->second;
    (in_side ? in_cap : out_cap)[vertex] = std::move(cap);
  }

  std::vector<std::string> net_nodes = sk.nodes;
  CompileResult result{PolyNet(std::move(net_nodes), std::move(edges), std::move(in_cap),
                               std::move(out_cap)),
                       std::move(compiled),
                       sk.primary_vertex,
                       std::move(edge_channel),
                       {},
                       std::nullopt,
                       std::nullopt,
                       spec};
  if (spec.traffic) result.traffic = spec.traffic->renamed(sk.primary_vertex);
  if (spec.reciprocal) {
    std::map<std::string, std::string> pairs;
    for (const auto& s : stars)
      for (const auto& leaf : s.leaves) {
        const std::string a = s.color + ":" + (s.uplink ? leaf : s.hub) + ">" +
                              (s.uplink ? s.hub : leaf);
        const std::string b = s.color + ":" + (s.uplink ? s.hub : leaf) + ">" +
                              (s.uplink ? leaf : s.hub);
        pairs[a] = b;
      }
    for (const auto& e : sk.intra_edges)
      if (!pairs.count(e.id)) {
        // intra:v:c1>c2 pairs with intra:v:c2>c1
        for (const auto& other : sk.intra_edges)
          if (other.tail == e.head && other.head == e.tail) pairs[e.id] = other.id;
      }
    result.tau = ReversalMap(pairs);
  }
  return result;
}

const XChannelSpec& single_x_spec(const WirelessSpec& spec) {
  if (spec.channels.size() != 1 || !std::holds_alternative<XChannelSpec>(spec.channels[0]))
    throw InvalidInputError("snapshot/antenna compile expects exactly one X-channel spec");
  return std::get<XChannelSpec>(spec.channels[0]);
}

double x_rate(const XChannelSpec& x) {
  switch (x.flavor) {
    case XFlavor::FadingX:
      if (!x.fading) throw InvalidInputError("fading X channel needs a fading model");
      return 0.5 * x.fading->ergodic_capacity(2.0 * x.power);
    case XFlavor::FixedXdof:
      return 0.5;
    case XFlavor::FadingLdX:
      return ld_x_rate(x.q);
  }
  throw InvalidInputError("unreachable");
}

const char* x_kind_name(XFlavor f) {
  switch (f) {
    case XFlavor::FadingX: return "fadingX";
    case XFlavor::FixedXdof: return "fixedXdof";
    case XFlavor::FadingLdX: return "fadingLdX";
  }
  return "?";
}

CompileResult compile_snapshot(const WirelessSpec& spec) {
  const XChannelSpec& x = single_x_spec(spec);
  if (x.edges.empty()) throw InvalidInputError("snapshot compile: empty edge set");

  std::set<std::pair<std::string, std::string>> pair_set(x.edges.begin(), x.edges.end());
  if (spec.reciprocal)
    for (const auto& [u, v] : x.edges) pair_set.insert({v, u});

  std::set<std::string> node_set(spec.extra_nodes.begin(), spec.extra_nodes.end());
  for (const auto& [u, v] : pair_set) {
    if (u == v) throw InvalidInputError("snapshot compile: self loop at " + u);
    node_set.insert(u);
    node_set.insert(v);
  }
  if (spec.traffic)
    for (const auto& c : spec.traffic->commodities()) {
      node_set.insert(c.source);
      node_set.insert(c.sink);
    }

  const double r = x_rate(x);
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> in_ids, out_ids;
  std::map<std::string, std::string> edge_channel;
  CompiledChannel cc;
  cc.index = 0;
  cc.label = "x";
  cc.kind = x_kind_name(x.flavor);
  cc.reciprocal = spec.reciprocal;
  for (const auto& [u, v] : pair_set) {
    const std::string id = "x:" + u + ">" + v;
    edges.push_back({id, u, v});
    out_ids[u].push_back(id);
    in_ids[v].push_back(id);
    edge_channel[id] = "x";
    cc.edges.push_back(id);
  }

  // Degree: the most neighbors any node talks to or hears from.
  int d = 1;
  {
    std::map<std::string, std::set<std::string>> nb;
    for (const auto& [u, v] : pair_set) {
      nb[u].insert(v);
      nb[v].insert(u);
    }
    for (const auto& [node, s] : nb) d = std::max(d, static_cast<int>(s.size()));
  }
  switch (x.flavor) {
    case XFlavor::FadingX:
      cc.power_scale = x.fading->b_constant() * d * d * d;
      cc.rate_scale = 2;
      break;
    case XFlavor::FixedXdof:
    case XFlavor::FadingLdX:
      cc.power_scale = 1;
      cc.rate_scale = 2;
      break;
  }

  std::map<std::string, SideCap> in_cap, out_cap;
  for (const auto& [node, ids] : in_ids)
    in_cap[node] = SideCap{SubmodularOracle::uniform_cap(GroundSet(ids), r), {}};
  for (const auto& [node, ids] : out_ids)
    out_cap[node] = SideCap{SubmodularOracle::uniform_cap(GroundSet(ids), r), {}};

  std::map<std::string, std::string> node_map;
  for (const auto& n : node_set) node_map[n] = n;

  CompileResult result{PolyNet(std::vector<std::string>(node_set.begin(), node_set.end()),
                               std::move(edges), std::move(in_cap), std::move(out_cap)),
                       {std::move(cc)},
                       std::move(node_map),
                       std::move(edge_channel),
                       {},
                       spec.traffic,
                       std::nullopt,
                       spec};
  if (spec.reciprocal) {
    std::map<std::string, std::string> pairs;
    for (const auto& [u, v] : pair_set) pairs["x:" + u + ">" + v] = "x:" + v + ">" + u;
    result.tau = ReversalMap(pairs);
  }
  return result;
}

CompileResult compile_antenna(const WirelessSpec& spec) {
  const XChannelSpec& x = single_x_spec(spec);
  if (x.edges.empty()) throw InvalidInputError("antenna compile: empty edge set");

  std::set<std::pair<std::string, std::string>> pair_set(x.edges.begin(), x.edges.end());
  if (spec.reciprocal)
    for (const auto& [u, v] : x.edges) pair_set.insert({v, u});

  std::map<std::string, int> counts = spec.antenna_counts;
  std::set<std::string> node_set(spec.extra_nodes.begin(), spec.extra_nodes.end());
  for (const auto& [u, v] : pair_set) {
    node_set.insert(u);
    node_set.insert(v);
  }
  if (spec.traffic)
    for (const auto& c : spec.traffic->commodities()) {
      node_set.insert(c.source);
      node_set.insert(c.sink);
    }
  for (const auto& n : node_set) counts.emplace(n, 1);

  AntennaExpansion ex = expand_antennas(counts);

  const double r = x_rate(x);
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> in_ids, out_ids;
  std::map<std::string, std::string> edge_channel;
  CompiledChannel cc;
  cc.index = 0;
  cc.label = "x";
  cc.kind = x_kind_name(x.flavor);
  cc.reciprocal = spec.reciprocal;
  for (const auto& [u, v] : pair_set)
    for (const auto& ua : ex.antennas_of.at(u))
      for (const auto& va : ex.antennas_of.at(v)) {
        const std::string id = "x:" + ua + ">" + va;
        edges.push_back({id, ua, va});
        out_ids[ua].push_back(id);
        in_ids[va].push_back(id);
        edge_channel[id] = "x";
        cc.edges.push_back(id);
      }

  int d = 1;
  {
    std::map<std::string, std::set<std::string>> nb;
    for (const auto& e : edges) {
      nb[e.tail].insert(e.head);
      nb[e.head].insert(e.tail);
    }
    for (const auto& [node, s] : nb) d = std::max(d, static_cast<int>(s.size()));
  }
  switch (x.flavor) {
    case XFlavor::FadingX:
      cc.power_scale = x.fading.value().b_constant() * d * d * d;
      cc.rate_scale = 2;
      break;
    case XFlavor::FixedXdof:
    case XFlavor::FadingLdX:
      cc.power_scale = 1;
      cc.rate_scale = 2;
      break;
  }

  std::map<std::string, SideCap> in_cap, out_cap;
  std::map<std::string, std::vector<std::string>> intra_in, intra_out;
  for (const auto& e : ex.intra_edges) {
    intra_out[e.tail].push_back(e.id);
    intra_in[e.head].push_back(e.id);
  }
  for (const auto& [node, ids] : in_ids) {
    SideCap cap{SubmodularOracle::uniform_cap(GroundSet(ids), r), {}};
    auto it = intra_in.find(node);
    if (it != intra_in.end()) cap.free_edges = it->second;
    in_cap[node] = std::move(cap);
  }
  for (const auto& [node, ids] : out_ids) {
    SideCap cap{SubmodularOracle::uniform_cap(GroundSet(ids), r), {}};
    auto it = intra_out.find(node);
    if (it != intra_out.end()) cap.free_edges = it->second;
    out_cap[node] = std::move(cap);
  }
  for (const auto& e : ex.intra_edges) edges.push_back(e);

  std::map<std::string, std::string> node_map;
  for (const auto& [orig, list] : ex.antennas_of) node_map[orig] = list.front();

  CompileResult result{PolyNet(ex.nodes, std::move(edges), std::move(in_cap), std::move(out_cap)),
                       {std::move(cc)},
                       node_map,
                       std::move(edge_channel),
                       ex.original_of,
                       std::nullopt,
                       std::nullopt,
                       spec};
  if (spec.traffic) result.traffic = spec.traffic->renamed(node_map);
  if (spec.reciprocal) {
    std::map<std::string, std::string> pairs;
    for (const auto& [u, v] : pair_set)
      for (const auto& ua : ex.antennas_of.at(u))
        for (const auto& va : ex.antennas_of.at(v)) pairs["x:" + ua + ">" + va] = "x:" + va + ">" + ua;
    for (const auto& e : ex.intra_edges)
      for (const auto& other : ex.intra_edges)
        if (other.tail == e.head && other.head == e.tail) pairs[e.id] = other.id;
    result.tau = ReversalMap(pairs);
  }
  return result;
}

}  // namespace

CompileResult compile(const WirelessSpec& spec) {
  if (spec.channels.empty()) throw InvalidInputError("compile: no channels");
  CompileResult result = [&] {
    switch (spec.mode) {
      case CompileMode::Color: return compile_color(spec);
      case CompileMode::Snapshot: return compile_snapshot(spec);
      case CompileMode::Antenna: return compile_antenna(spec);
    }
    throw InvalidInputError("unreachable");
  }();
  result.net.require_consistent();
  return result;
}

//============================================================================
// Wireless cut comparison
//============================================================================

WirelessCutReport wireless_cut_factor_report(const CompileResult& compiled,
                                             const std::set<std::string>& omega) {
  const PolyNet& net = compiled.net;
  CutCertificate cert = cut_cost(net, omega);

  WirelessCutReport report;
  report.poly_cut = cert.cost;
  report.poly_unbounded = cert.unbounded;
  if (cert.unbounded) {
    report.holds = true;  // an unbounded cut dominates any wireless bound
    return report;
  }

  // Crossing edges by channel label.
  std::map<std::string, std::vector<std::string>> by_channel;
  for (const auto& id : cert.crossing) by_channel[compiled.edge_channel.at(id)].push_back(id);

  for (const auto& cc : compiled.channels) {
    auto it = by_channel.find(cc.label);
    if (it == by_channel.end()) continue;
    const auto& crossing = it->second;

    WirelessCutRow row;
    row.channel = cc.label;
    row.crossing = static_cast<int>(crossing.size());
    row.power_scale = cc.power_scale;
    row.rate_scale = cc.rate_scale;

    // Wireless general-distribution cut formula per channel kind. Star
    // channels identify the user of each crossing edge by its non-hub
    // endpoint in original-node terms (edge ids are "color:orig>orig").
    auto leaf_of = [&](const std::string& edge_id, const Star& s) -> int {
      const std::string body = edge_id.substr(cc.label.size() + 1);
      const auto gt = body.find('>');
      std::string a = body.substr(0, gt), b = body.substr(gt + 1);
      const std::string leaf = (a == s.hub) ? b : a;
      for (int i = 0; i < s.degree(); ++i)
        if (s.leaves[static_cast<size_t>(i)] == leaf) return i;
      throw InvalidInputError("edge " + edge_id + " names no user of channel " + cc.label);
    };

    const ChannelSpec& raw = compiled.spec.channels[static_cast<size_t>(cc.index)];
    if (std::holds_alternative<XChannelSpec>(raw)) {
      // Per-node decomposition: the minimizing assignment groups the crossing
      // edges into buckets; each bucket obeys the single-node wireless bound.
      std::set<std::string> buckets;
      for (const auto& id : crossing) buckets.insert(cert.assignment.at(id));
      const XChannelSpec& x = std::get<XChannelSpec>(raw);
      double per_bucket = 0;
      switch (x.flavor) {
        case XFlavor::FadingX: {
          // C(a * d * P') at the power-scaled operating point.
          int deg = 1;
          std::map<std::string, std::set<std::string>> nb;
          for (const auto& [u, v] : x.edges) {
            nb[u].insert(v);
            nb[v].insert(u);
          }
          for (const auto& [node, s] : nb) deg = std::max(deg, static_cast<int>(s.size()));
          per_bucket = x.fading->ergodic_capacity(x.fading->a_constant() * deg * x.power /
                                                  cc.power_scale);
          break;
        }
        case XFlavor::FixedXdof:
          per_bucket = 1.0;
          break;
        case XFlavor::FadingLdX:
          per_bucket = std::log2(static_cast<double>(x.q));
          break;
      }
      row.wireless_bound = per_bucket * static_cast<double>(buckets.size());
    } else {
      const Star s = normalize_star(raw);
      std::set<int> leaves;
      for (const auto& id : crossing) leaves.insert(leaf_of(id, s));
      switch (s.kind) {
        case Star::Gaussian: {
          double amp = 0;
          for (int li : leaves) amp += std::abs(s.gains[static_cast<size_t>(li)]);
          row.wireless_bound = std::log2(1.0 + amp * amp * s.power / cc.power_scale);
          break;
        }
        case Star::Erasure:
          row.wireless_bound = 1.0 - std::pow(s.epsilon, static_cast<int>(leaves.size()));
          break;
        case Star::LinDet: {
          std::vector<const GfMatrix*> sel;
          for (int li : leaves) sel.push_back(&s.mats[static_cast<size_t>(li)]);
          row.wireless_bound = gf_stack_rank(sel, s.q) * std::log2(static_cast<double>(s.q));
          break;
        }
        case Star::DelayedCsit: {
          int antennas = 0;
          for (int li : leaves) antennas += s.rx_antennas[static_cast<size_t>(li)];
          row.wireless_bound = std::min(antennas, s.p());
          break;
        }
      }
    }
    row.implied = row.wireless_bound / row.rate_scale;
    report.implied_wireless_bound += row.implied;
    report.rows.push_back(std::move(row));
  }

  report.holds =
      report.poly_unbounded || report.poly_cut >= report.implied_wireless_bound - 1e-9;
  return report;
}

}  // namespace polyflow
