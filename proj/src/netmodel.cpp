#include "polyflow/netmodel.hpp"

#include <algorithm>

#include "polyflow/polymatroid.hpp"

namespace polyflow {

PolyNet::PolyNet(std::vector<std::string> nodes, std::vector<Edge> edges,
                 std::map<std::string, SideCap> in_cap, std::map<std::string, SideCap> out_cap)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      in_cap_(std::move(in_cap)),
      out_cap_(std::move(out_cap)) {
  for (int i = 0; i < num_nodes(); ++i) {
    auto [it, fresh] = node_idx_.emplace(nodes_[static_cast<size_t>(i)], i);
    if (!fresh) throw InvalidInputError("duplicate node id: " + nodes_[static_cast<size_t>(i)]);
  }
  edge_tail_.resize(static_cast<size_t>(num_edges()));
  edge_head_.resize(static_cast<size_t>(num_edges()));
  in_edges_.resize(static_cast<size_t>(num_nodes()));
  out_edges_.resize(static_cast<size_t>(num_nodes()));
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    auto [it, fresh] = edge_idx_.emplace(ed.id, e);
    if (!fresh) throw InvalidInputError("duplicate edge id: " + ed.id);
    const int t = node_index(ed.tail), h = node_index(ed.head);
    if (t < 0) throw InvalidInputError("edge " + ed.id + " has unknown tail " + ed.tail);
    if (h < 0) throw InvalidInputError("edge " + ed.id + " has unknown head " + ed.head);
    edge_tail_[static_cast<size_t>(e)] = t;
    edge_head_[static_cast<size_t>(e)] = h;
    out_edges_[static_cast<size_t>(t)].push_back(e);
    in_edges_[static_cast<size_t>(h)].push_back(e);
  }
  in_ground_edges_.resize(static_cast<size_t>(num_nodes()));
  out_ground_edges_.resize(static_cast<size_t>(num_nodes()));
  edge_free_at_head_.assign(static_cast<size_t>(num_edges()), 0);
  edge_free_at_tail_.assign(static_cast<size_t>(num_edges()), 0);
  index_side(true);
  index_side(false);
}

void PolyNet::index_side(bool in_side) {
  const auto& caps = in_side ? in_cap_ : out_cap_;
  const char* side_name = in_side ? "inCap" : "outCap";
  auto& ground_edges = in_side ? in_ground_edges_ : out_ground_edges_;
  auto& free_flag = in_side ? edge_free_at_head_ : edge_free_at_tail_;

  for (const auto& [node, cap] : caps) {
    if (node_index(node) < 0)
      violations_.push_back(std::string(side_name) + " names unknown node " + node);
  }

  for (int v = 0; v < num_nodes(); ++v) {
    const std::string& name = nodes_[static_cast<size_t>(v)];
    const auto& incident = in_side ? in_edges_[static_cast<size_t>(v)] : out_edges_[static_cast<size_t>(v)];
    auto it = caps.find(name);
    if (it == caps.end()) {
      // Unconstrained sentinel: every incident edge is free at this side.
      for (int e : incident) free_flag[static_cast<size_t>(e)] = 1;
      continue;
    }
    const SideCap& cap = it->second;
    std::set<int> covered;
    if (cap.oracle.has_value()) {
      auto& aligned = ground_edges[static_cast<size_t>(v)];
      for (const auto& id : cap.oracle->ground().elements()) {
        const int e = edge_index(id);
        const bool incident_here =
            e >= 0 && (in_side ? head_of(e) == v : tail_of(e) == v);
        if (!incident_here) {
          violations_.push_back(side_name + std::string(" oracle at ") + name +
                                " names non-incident edge " + id);
          aligned.push_back(-1);
        } else {
          aligned.push_back(e);
          covered.insert(e);
        }
      }
    }
    for (const auto& id : cap.free_edges) {
      const int e = edge_index(id);
      const bool incident_here = e >= 0 && (in_side ? head_of(e) == v : tail_of(e) == v);
      if (!incident_here) {
        violations_.push_back(side_name + std::string(" free list at ") + name +
                              " names non-incident edge " + id);
        continue;
      }
      if (covered.count(e)) {
        violations_.push_back("edge " + id + " is both ground and free at " + name);
        continue;
      }
      covered.insert(e);
      free_flag[static_cast<size_t>(e)] = 1;
    }
    for (int e : incident)
      if (!covered.count(e))
        violations_.push_back("edge unhoused: " + edges_[static_cast<size_t>(e)].id + " missing from " +
                              side_name + " of " + name);
  }
}

int PolyNet::node_index(const std::string& id) const {
  auto it = node_idx_.find(id);
  return it == node_idx_.end() ? -1 : it->second;
}

int PolyNet::edge_index(const std::string& id) const {
  auto it = edge_idx_.find(id);
  return it == edge_idx_.end() ? -1 : it->second;
}

const SideCap* PolyNet::in_cap(const std::string& node) const {
  auto it = in_cap_.find(node);
  return it == in_cap_.end() ? nullptr : &it->second;
}

const SideCap* PolyNet::out_cap(const std::string& node) const {
  auto it = out_cap_.find(node);
  return it == out_cap_.end() ? nullptr : &it->second;
}

const SideCap* PolyNet::cap(int v, bool in_side) const {
  const std::string& name = nodes_[static_cast<size_t>(v)];
  return in_side ? in_cap(name) : out_cap(name);
}

const std::vector<int>& PolyNet::ground_edges(int v, bool in_side) const {
  return in_side ? in_ground_edges_[static_cast<size_t>(v)] : out_ground_edges_[static_cast<size_t>(v)];
}

bool PolyNet::edge_free_at(int e, bool at_head) const {
  return (at_head ? edge_free_at_head_ : edge_free_at_tail_)[static_cast<size_t>(e)] != 0;
}

void PolyNet::require_consistent() const {
  if (!violations_.empty())
    throw InvalidInputError("inconsistent capacity bookkeeping: " + violations_.front());
}

std::vector<std::string> validate(const PolyNet& net, const ValidateOptions& opts) {
  std::vector<std::string> out = net.capacity_violations();
  if (opts.deep_oracle_checks) {
    for (bool in_side : {true, false}) {
      for (const auto& [node, cap] : in_side ? net.in_caps() : net.out_caps()) {
        if (!cap.oracle.has_value()) continue;
        const auto& f = *cap.oracle;
        if (f.size() > opts.property_cap) continue;  // size permitting only
        const char* side = in_side ? "inCap" : "outCap";
        if (!is_monotone(f, kExactTol, opts.property_cap))
          out.push_back(std::string("not monotone: ") + side + " oracle at " + node);
        else if (!is_submodular(f, kExactTol, opts.property_cap))
          out.push_back(std::string("not submodular: ") + side + " oracle at " + node);
      }
    }
  }
  return out;
}

TrafficPattern TrafficPattern::multiple_unicast(std::vector<Commodity> commodities) {
  if (commodities.empty()) throw InvalidInputError("traffic: need at least one commodity");
  for (const auto& c : commodities) {
    if (c.source == c.sink) throw InvalidInputError("traffic: degenerate commodity at " + c.source);
    if (!(c.demand > 0)) throw InvalidInputError("traffic: demands must be positive");
  }
  TrafficPattern t;
  t.kind_ = TrafficKind::MultipleUnicast;
  t.commodities_ = std::move(commodities);
  return t;
}

TrafficPattern TrafficPattern::broadcast(const std::string& source,
                                         const std::vector<std::string>& sinks) {
  if (sinks.empty()) throw InvalidInputError("broadcast: need at least one sink");
  std::vector<Commodity> cs;
  for (const auto& s : sinks) cs.push_back({source, s, 1.0});
  TrafficPattern t = multiple_unicast(std::move(cs));
  t.kind_ = TrafficKind::Broadcast;
  return t;
}

TrafficPattern TrafficPattern::x_traffic(std::vector<std::string> sources,
                                         std::vector<std::string> sinks) {
  if (sources.empty()) throw InvalidInputError("x traffic: empty source list");
  if (sinks.empty()) throw InvalidInputError("x traffic: empty sink list");
  std::vector<Commodity> cs;
  for (const auto& s : sources)
    for (const auto& t : sinks) cs.push_back({s, t, 1.0});
  TrafficPattern t = multiple_unicast(std::move(cs));
  t.kind_ = TrafficKind::XTraffic;
  t.x_sources_ = std::move(sources);
  t.x_sinks_ = std::move(sinks);
  return t;
}

TrafficPattern TrafficPattern::group(std::vector<std::string> nodes) {
  if (nodes.size() < 2) throw InvalidInputError("group traffic: need at least two nodes");
  std::vector<Commodity> cs;
  for (const auto& s : nodes)
    for (const auto& t : nodes)
      if (s != t) cs.push_back({s, t, 1.0});
  TrafficPattern t = multiple_unicast(std::move(cs));
  t.kind_ = TrafficKind::Group;
  t.group_nodes_ = std::move(nodes);
  return t;
}

TrafficPattern TrafficPattern::renamed(const std::map<std::string, std::string>& node_map) const {
  auto remap = [&](const std::string& n) {
    auto it = node_map.find(n);
    return it == node_map.end() ? n : it->second;
  };
  TrafficPattern t = *this;
  for (auto& c : t.commodities_) {
    c.source = remap(c.source);
    c.sink = remap(c.sink);
  }
  for (auto& n : t.x_sources_) n = remap(n);
  for (auto& n : t.x_sinks_) n = remap(n);
  for (auto& n : t.group_nodes_) n = remap(n);
  return t;
}

ReversalMap::ReversalMap(std::map<std::string, std::string> pairs) {
  for (const auto& [a, b] : pairs) {
    if (a == b) throw InvalidInputError("reversal map: edge paired with itself: " + a);
    tau_[a] = b;
    tau_[b] = a;
  }
  for (const auto& [a, b] : tau_) {
    auto it = tau_.find(b);
    if (it == tau_.end() || it->second != a)
      throw InvalidInputError("reversal map is not an involution at " + a);
  }
}

const std::string& ReversalMap::reverse(const std::string& edge_id) const {
  auto it = tau_.find(edge_id);
  if (it == tau_.end()) throw InvalidInputError("reversal map: no pairing for edge " + edge_id);
  return it->second;
}

std::vector<std::string> ReversalMap::violations(const PolyNet& net) const {
  std::vector<std::string> out;
  for (const auto& e : net.edges())
    if (!tau_.count(e.id)) out.push_back("edge " + e.id + " has no reverse pairing");
  for (const auto& [a, b] : tau_) {
    const int ea = net.edge_index(a), eb = net.edge_index(b);
    if (ea < 0 || eb < 0) {
      out.push_back("pairing names unknown edge: " + (ea < 0 ? a : b));
      continue;
    }
    if (net.tail_of(ea) != net.head_of(eb) || net.head_of(ea) != net.tail_of(eb))
      out.push_back("pairing " + a + " <-> " + b + " does not swap endpoints");
  }
  return out;
}

bool is_bidirected(const PolyNet& net, const ReversalMap& tau, double tol, int degree_cap) {
  {
    auto v = tau.violations(net);
    if (!v.empty()) throw InvalidInputError("is_bidirected: " + v.front());
  }
  net.require_consistent();

  for (int v = 0; v < net.num_nodes(); ++v) {
    const auto& in = net.in_edges(v);
    if (static_cast<int>(in.size()) > degree_cap)
      throw SizeCapError("is_bidirected: degree " + std::to_string(in.size()) + " exceeds cap " +
                         std::to_string(degree_cap));

    // Free status must agree edgewise under tau.
    std::vector<int> rev(in.size());
    for (size_t i = 0; i < in.size(); ++i) {
      const int e = in[i];
      const int re = net.edge_index(tau.reverse(net.edge(e).id));
      rev[i] = re;
      if (net.edge_free_at(e, /*at_head=*/true) != net.edge_free_at(re, /*at_head=*/false))
        return false;
    }

    const SideCap* ic = net.cap(v, true);
    const SideCap* oc = net.cap(v, false);
    const bool in_constrained = ic && ic->oracle.has_value() && ic->oracle->size() > 0;
    const bool out_constrained = oc && oc->oracle.has_value() && oc->oracle->size() > 0;
    if (in_constrained != out_constrained) return false;
    if (!in_constrained) continue;

    const auto& fin = *ic->oracle;
    const auto& fout = *oc->oracle;
    // Position of each constrained in-edge's reverse in the out oracle.
    std::vector<int> pos_map;
    const auto& in_ground = net.ground_edges(v, true);
    for (int e : in_ground) {
      const int re = net.edge_index(tau.reverse(net.edge(e).id));
      const int p = fout.ground().index_of(net.edge(re).id);
      if (p < 0) return false;  // reverse not under the out constraint
      pos_map.push_back(p);
    }
    if (fin.size() != fout.size()) return false;

    const Mask full = fin.ground().full_mask();
    for (Mask s = 0; s <= full; ++s) {
      Mask ts = 0;
      for (int i = 0; i < fin.size(); ++i)
        if (s & (Mask(1) << i)) ts |= Mask(1) << pos_map[static_cast<size_t>(i)];
      if (std::abs(fin.eval(s) - fout.eval(ts)) > tol) return false;
    }
  }
  return true;
}

SuperSourceSink add_super_source_sink(const PolyNet& net, const TrafficPattern& traffic) {
  if (traffic.kind() != TrafficKind::XTraffic)
    throw InvalidInputError("add_super_source_sink expects X traffic");

  const std::string S = "S*", T = "T*";
  if (net.node_index(S) >= 0 || net.node_index(T) >= 0)
    throw InvalidInputError("super node id collides with an existing node");
  for (const auto& n : traffic.x_sources())
    if (net.node_index(n) < 0) throw InvalidInputError("x traffic names unknown source " + n);
  for (const auto& n : traffic.x_sinks())
    if (net.node_index(n) < 0) throw InvalidInputError("x traffic names unknown sink " + n);

  std::vector<std::string> nodes = net.nodes();
  nodes.push_back(S);
  nodes.push_back(T);
  std::vector<Edge> edges = net.edges();
  auto in_caps = net.in_caps();
  auto out_caps = net.out_caps();

  auto add_free_edge = [&](const std::string& id, const std::string& tail,
                           const std::string& head) {
    if (net.edge_index(id) >= 0) throw InvalidInputError("super edge id collides: " + id);
    edges.push_back({id, tail, head});
    // Register as free wherever the touched side carries a constraint.
    auto mark = [&](std::map<std::string, SideCap>& caps, const std::string& node) {
      auto it = caps.find(node);
      if (it != caps.end()) it->second.free_edges.push_back(id);
    };
    mark(out_caps, tail);
    mark(in_caps, head);
  };

  for (const auto& src : traffic.x_sources()) add_free_edge(S + "->" + src, S, src);
  for (const auto& snk : traffic.x_sinks()) add_free_edge(snk + "->" + T, snk, T);

  SuperSourceSink out{PolyNet(std::move(nodes), std::move(edges), std::move(in_caps), std::move(out_caps)),
                      TrafficPattern::multiple_unicast({{S, T, 1.0}}), S, T};
  return out;
}

SplitSkeleton split_by_color(const std::vector<std::string>& nodes,
                             const std::vector<ColoredEdge>& edges) {
  SplitSkeleton sk;
  std::map<std::string, std::set<std::string>> colors;
  for (const auto& e : edges) {
    if (e.color.empty()) throw InvalidInputError("uncolored edge: " + e.id);
    colors[e.tail].insert(e.color);
    colors[e.head].insert(e.color);
  }
  for (const auto& n : nodes) {
    auto it = colors.find(n);
    if (it == colors.end()) {
      // Isolated node: keep a single bare vertex so traffic endpoints resolve.
      sk.nodes.push_back(n);
      sk.primary_vertex[n] = n;
      continue;
    }
    std::vector<std::string> cs(it->second.begin(), it->second.end());
    sk.colors_of[n] = cs;
    for (const auto& c : cs) {
      const std::string id = n + "@" + c;
      sk.nodes.push_back(id);
      sk.vertex_of[{n, c}] = id;
    }
    sk.primary_vertex[n] = n + "@" + cs.front();
    for (const auto& c1 : cs)
      for (const auto& c2 : cs)
        if (c1 != c2)
          sk.intra_edges.push_back({"intra:" + n + ":" + c1 + ">" + c2, n + "@" + c1, n + "@" + c2});
  }
  return sk;
}

AntennaExpansion expand_antennas(const std::map<std::string, int>& antenna_counts) {
  AntennaExpansion ex;
  for (const auto& [node, count] : antenna_counts) {
    if (count < 1) throw InvalidInputError("antenna count must be >= 1 at " + node);
    auto& list = ex.antennas_of[node];
    for (int k = 0; k < count; ++k) {
      const std::string id = count == 1 ? node : node + "#" + std::to_string(k);
      list.push_back(id);
      ex.nodes.push_back(id);
      ex.original_of[id] = node;
    }
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j)
        if (i != j)
          ex.intra_edges.push_back({"intra:" + node + ":" + std::to_string(i) + ">" + std::to_string(j),
                                    list[static_cast<size_t>(i)], list[static_cast<size_t>(j)]});
  }
  return ex;
}

LayeredNet make_layered_unit_network(int k, const std::vector<int>& middle_sizes, double rate) {
  if (k < 1) throw InvalidInputError("layered network: k must be >= 1");
  if (middle_sizes.empty()) throw InvalidInputError("layered network: need at least one middle layer");
  for (int n : middle_sizes)
    if (n < 1) throw InvalidInputError("layered network: layer sizes must be >= 1");

  std::vector<std::vector<std::string>> layers;
  std::vector<std::string> nodes;
  auto add_layer = [&](std::vector<std::string> names) {
    for (const auto& n : names) nodes.push_back(n);
    layers.push_back(std::move(names));
  };
  std::vector<std::string> sources, sinks;
  for (int i = 1; i <= k; ++i) sources.push_back("s" + std::to_string(i));
  add_layer(sources);
  for (size_t l = 0; l < middle_sizes.size(); ++l) {
    std::vector<std::string> layer;
    for (int j = 1; j <= middle_sizes[l]; ++j)
      layer.push_back("m" + std::to_string(l + 1) + "_" + std::to_string(j));
    add_layer(std::move(layer));
  }
  for (int i = 1; i <= k; ++i) sinks.push_back("t" + std::to_string(i));
  add_layer(sinks);

  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> out_ids, in_ids;
  for (size_t l = 0; l + 1 < layers.size(); ++l)
    for (const auto& u : layers[l])
      for (const auto& v : layers[l + 1]) {
        const std::string id = u + "->" + v;
        edges.push_back({id, u, v});
        out_ids[u].push_back(id);
        in_ids[v].push_back(id);
      }

  std::map<std::string, SideCap> in_cap, out_cap;
  for (const auto& [node, ids] : out_ids)
    out_cap[node] = SideCap{SubmodularOracle::uniform_cap(GroundSet(ids), rate), {}};
  for (const auto& [node, ids] : in_ids)
    in_cap[node] = SideCap{SubmodularOracle::uniform_cap(GroundSet(ids), rate), {}};

  std::vector<Commodity> cs;
  for (int i = 0; i < k; ++i) cs.push_back({sources[static_cast<size_t>(i)], sinks[static_cast<size_t>(i)], 1.0});

  std::vector<int> sizes;
  sizes.push_back(k);
  for (int n : middle_sizes) sizes.push_back(n);
  sizes.push_back(k);

  return LayeredNet{PolyNet(std::move(nodes), std::move(edges), std::move(in_cap), std::move(out_cap)),
                    TrafficPattern::multiple_unicast(std::move(cs)), std::move(sizes)};
}

}  // namespace polyflow
