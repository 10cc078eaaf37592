#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polyflow/flowsolve.hpp"
#include "polyflow/netmodel.hpp"

namespace polyflow {

struct CutOptions {
  int assignment_cap = 20;      // exhaustive enumeration up to 2^cap assignments
  bool greedy_fallback = false; // approximate assignments beyond the cap
  int vertex_cap = 18;          // cut enumeration up to 2^cap vertex sets
};

// A vertex bipartition with the crossing edges, the minimizing valid
// assignment of crossing edges to endpoints, and the resulting cost.
struct CutCertificate {
  std::vector<std::string> omega;
  std::vector<std::string> crossing;
  std::map<std::string, std::string> assignment;  // edge -> endpoint charged
  double cost = 0;
  bool unbounded = false;  // every assignment touches a capacity-free side
  bool exact = true;       // false when the greedy fallback produced it
  std::vector<int> separated;  // commodity indices with source in omega only
};

// Exact nu(F) for the cut induced by omega. The assignment minimization is
// exhaustive by default; when every side the crossing edges can be charged to
// is a UniformCap oracle the minimum is found exactly as a weighted bipartite
// vertex cover instead (no cap applies).
CutCertificate cut_cost(const PolyNet& net, const std::set<std::string>& omega,
                        const CutOptions& opts = {}, const TrafficPattern* traffic = nullptr);

struct CutEntry {
  std::uint32_t separated = 0;  // commodity index bitmask
  double bound = 0;
  CutCertificate cert;
};

// The cut-set rate region: one bound per realizable separated set, minimized
// over all vertex bipartitions. Unbounded cuts are excluded (non-binding).
struct CutRegionReport {
  int num_commodities = 0;
  std::vector<CutEntry> entries;  // sorted by separated mask
  bool all_separable = true;      // every commodity has some finite cut

  // Scalar min-cut for single-commodity traffic.
  double scalar_min_cut() const;
  // Support function h_cut(w) = max w.R over the region; +inf if uncovered.
  double support(const std::vector<double>& w) const;
  // Largest lambda with lambda*demand inside every bound.
  double concurrent_upper(const std::vector<double>& demands) const;
};

CutRegionReport min_cut(const PolyNet& net, const TrafficPattern& traffic,
                        const CutOptions& opts = {});

struct GapOptions {
  std::uint64_t seed = 0;
  int random_directions = 100;
  SolveOptions flow;
  CutOptions cut;
};

struct GapReport {
  struct Row {
    std::vector<double> w;
    double h_flow = 0;
    double h_cut = 0;
    double ratio = 1.0;
  };
  double gap = 1.0;  // sup over sampled directions of h_cut / h_flow
  std::vector<Row> rows;
  bool flow_within_cut = true;  // every ratio >= 1 - 1e-6
};

// Estimate the flow-cut gap by support-function sampling over nonnegative
// directions (all unit vectors, the all-ones vector, and seeded uniforms).
GapReport flow_cut_gap(const PolyNet& net, const TrafficPattern& traffic,
                       const GapOptions& opts = {});

struct DecompositionCheck {
  double whole = 0;       // nu(F) on the composed network
  double sum_parts = 0;   // sum over channels of the isolated cut costs
  bool whole_unbounded = false;
  bool parts_unbounded = false;
  bool holds = false;     // whole <= sum_parts
};

// Verify that the composed cut cost is bounded by the sum of per-channel cut
// costs computed in isolation. Every crossing edge must carry a channel label.
DecompositionCheck decomposition_check(const PolyNet& net,
                                       const std::map<std::string, std::string>& edge_channel,
                                       const std::set<std::string>& omega,
                                       const CutOptions& opts = {});

}  // namespace polyflow
