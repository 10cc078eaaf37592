#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polyflow/oracle.hpp"

namespace polyflow {

struct Edge {
  std::string id;
  std::string tail;
  std::string head;
};

// Capacity of one side (incoming or outgoing) of one node. A missing oracle
// is the unconstrained sentinel. Edges listed in `free_edges` are exempt from
// the oracle (infinite capacity at this side); constraints are omissions,
// never big numbers. For a consistent net, ground(oracle) and free_edges
// together cover the incident edges exactly.
struct SideCap {
  std::optional<SubmodularOracle> oracle;
  std::vector<std::string> free_edges;
};

// Directed graph whose node-incident edge sets carry joint submodular
// capacities. Immutable after construction; transforms return new values.
class PolyNet {
 public:
  PolyNet(std::vector<std::string> nodes, std::vector<Edge> edges,
          std::map<std::string, SideCap> in_cap, std::map<std::string, SideCap> out_cap);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }

  int node_index(const std::string& id) const;  // -1 when absent
  int edge_index(const std::string& id) const;
  int tail_of(int e) const { return edge_tail_[static_cast<size_t>(e)]; }
  int head_of(int e) const { return edge_head_[static_cast<size_t>(e)]; }

  const std::vector<int>& in_edges(int v) const { return in_edges_[static_cast<size_t>(v)]; }
  const std::vector<int>& out_edges(int v) const { return out_edges_[static_cast<size_t>(v)]; }

  // nullptr when the side is fully unconstrained.
  const SideCap* in_cap(const std::string& node) const;
  const SideCap* out_cap(const std::string& node) const;
  const SideCap* cap(int v, bool in_side) const;

  // Edge indices aligned with the oracle's ground order; -1 for ground
  // entries that do not name an incident edge (flagged by validate).
  const std::vector<int>& ground_edges(int v, bool in_side) const;

  // True when the edge has no capacity constraint at the given side.
  bool edge_free_at(int e, bool at_head) const;

  const std::map<std::string, SideCap>& in_caps() const { return in_cap_; }
  const std::map<std::string, SideCap>& out_caps() const { return out_cap_; }

  // Structural capacity-bookkeeping violations, computed at construction.
  const std::vector<std::string>& capacity_violations() const { return violations_; }
  // Throws InvalidInputError when the capacity bookkeeping is inconsistent.
  void require_consistent() const;

 private:
  void index_side(bool in_side);

  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, SideCap> in_cap_, out_cap_;

  std::map<std::string, int> node_idx_, edge_idx_;
  std::vector<int> edge_tail_, edge_head_;
  std::vector<std::vector<int>> in_edges_, out_edges_;
  // Per node: ground-aligned edge indices, empty for unconstrained sides.
  std::vector<std::vector<int>> in_ground_edges_, out_ground_edges_;
  std::vector<std::vector<char>> in_free_, out_free_;  // per node, per incident-edge position
  std::vector<char> edge_free_at_head_, edge_free_at_tail_;
  std::vector<std::string> violations_;
};

enum class TrafficKind { MultipleUnicast, Broadcast, XTraffic, Group };

struct Commodity {
  std::string source;
  std::string sink;
  double demand = 1.0;
};

class TrafficPattern {
 public:
  static TrafficPattern multiple_unicast(std::vector<Commodity> commodities);
  static TrafficPattern broadcast(const std::string& source, const std::vector<std::string>& sinks);
  static TrafficPattern x_traffic(std::vector<std::string> sources, std::vector<std::string> sinks);
  static TrafficPattern group(std::vector<std::string> nodes);

  TrafficKind kind() const { return kind_; }
  const std::vector<Commodity>& commodities() const { return commodities_; }
  int size() const { return static_cast<int>(commodities_.size()); }
  const std::vector<std::string>& x_sources() const { return x_sources_; }
  const std::vector<std::string>& x_sinks() const { return x_sinks_; }
  const std::vector<std::string>& group_nodes() const { return group_nodes_; }

  // Remap endpoint node names (used when compiling splits nodes).
  TrafficPattern renamed(const std::map<std::string, std::string>& node_map) const;

 private:
  TrafficKind kind_ = TrafficKind::MultipleUnicast;
  std::vector<Commodity> commodities_;
  std::vector<std::string> x_sources_, x_sinks_, group_nodes_;
};

// Pairing of each edge with its reverse. Supplied, not inferred: with
// parallel edges the pairing would be ambiguous.
class ReversalMap {
 public:
  explicit ReversalMap(std::map<std::string, std::string> pairs);

  const std::string& reverse(const std::string& edge_id) const;
  const std::map<std::string, std::string>& pairs() const { return tau_; }

  // Involution over exactly the net's edges, with swapped endpoints.
  std::vector<std::string> violations(const PolyNet& net) const;

 private:
  std::map<std::string, std::string> tau_;
};

struct ValidateOptions {
  bool deep_oracle_checks = false;  // submodularity/monotonicity, size permitting
  int property_cap = 8;
};

// Full invariant check; returns human-readable violations, empty when ok.
std::vector<std::string> validate(const PolyNet& net, const ValidateOptions& opts = {});

// rho_v^-(E_v) == rho_v^+(tau(E_v)) for every node and subset, within tol.
bool is_bidirected(const PolyNet& net, const ReversalMap& tau, double tol = kExactTol,
                   int degree_cap = 8);

// Super-source/sink reduction for X traffic. New edges are capacity-free.
struct SuperSourceSink {
  PolyNet net;
  TrafficPattern traffic;  // single commodity super_source -> super_sink
  std::string super_source, super_sink;
};
SuperSourceSink add_super_source_sink(const PolyNet& net, const TrafficPattern& traffic);

// Node splitting by color: one vertex per (node, incident color), plus
// capacity-free intra-node edges in both directions between the copies.
struct ColoredEdge {
  std::string id;
  std::string tail;
  std::string head;
  std::string color;
};
struct SplitSkeleton {
  std::vector<std::string> nodes;
  std::vector<Edge> intra_edges;
  std::map<std::pair<std::string, std::string>, std::string> vertex_of;  // (node,color)
  std::map<std::string, std::vector<std::string>> colors_of;             // sorted
  std::map<std::string, std::string> primary_vertex;  // node -> vertex of first color
};
SplitSkeleton split_by_color(const std::vector<std::string>& nodes,
                             const std::vector<ColoredEdge>& edges);

// One graph node per antenna, capacity-free edges among antennas of the same
// original node, and the antenna -> original map for cut interpretation.
struct AntennaExpansion {
  std::vector<std::string> nodes;
  std::vector<Edge> intra_edges;
  std::map<std::string, std::vector<std::string>> antennas_of;
  std::map<std::string, std::string> original_of;
};
AntennaExpansion expand_antennas(const std::map<std::string, int>& antenna_counts);

// Fully connected layered network with unit (or rate-r) coupling constraints
// on every node side; sources in the first layer, sinks in the last.
struct LayeredNet {
  PolyNet net;
  TrafficPattern traffic;
  std::vector<int> sizes;  // n_0 .. n_{L+1} with n_0 = n_{L+1} = k
};
LayeredNet make_layered_unit_network(int k, const std::vector<int>& middle_sizes, double rate = 1.0);

}  // namespace polyflow
