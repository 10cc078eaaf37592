#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyflow/fading.hpp"
#include "polyflow/netmodel.hpp"
#include "polyflow/polymatroid.hpp"

namespace polyflow {

//============================================================================
// Local rate-region builders
//============================================================================

// f(S) = log2(1 + sum_{i in S} |h_i|^2 P); gains are amplitudes |h_i|.
// The dual broadcast channel is operated at this same region.
SubmodularOracle gaussian_mac_region(const std::vector<double>& gains, double power,
                                     std::optional<GroundSet> ground = std::nullopt);

// Cut-set bound evaluated under general input distributions.
double general_cut_bound(const std::vector<double>& gains, Mask subset, double power);
// Cut-set bound under product distributions (the achievable MAC region).
double product_cut_bound(const std::vector<double>& gains, Mask subset, double power);

struct PowerScalingRow {
  Mask subset = 0;
  double general_at_p = 0;    // general-distribution bound at power P
  double product_at_dp = 0;   // product bound at power d*P
};
struct PowerScalingCheck {
  std::vector<PowerScalingRow> rows;  // every nonempty subset
  bool contained = true;              // general(P) <= product(dP) throughout
};
PowerScalingCheck power_scaling_check(const std::vector<double>& gains, double power);

struct ErasureRegions {
  RatePolytope no_fb;        // sum_i R_i <= 1 - eps
  PermutationPolytope fb;    // ACK-feedback achievable region
  SubmodularOracle cut;      // 1 - eps^|S|
  double no_fb_ratio = 0;    // (1-eps)/(1-eps^d)
  double harmonic_factor = 0;
};
ErasureRegions erasure_regions(int d, double epsilon);

// The dual multiple-access erasure channel achieves the broadcast cut-set
// region exactly, which is what makes commensurate feedback possible.
SubmodularOracle mac_erasure_region(int d, double epsilon,
                                    std::optional<GroundSet> ground = std::nullopt);

// Row/column-coupled X-channel region: every node's incident rates sum to at
// most r. Edges are (source, sink) pairs; edge ids are "x:src>snk".
struct XChannelRegion {
  double rate = 0;  // the shared per-node bound r
  std::vector<Edge> edges;
  std::map<std::string, SubmodularOracle> out_caps;  // per source row
  std::map<std::string, SubmodularOracle> in_caps;   // per sink column
  int max_degree = 1;
  double cut_comparison_bound = 0;  // C(a*d*P) for the fading instantiation
};
XChannelRegion x_channel_region(const std::vector<std::pair<std::string, std::string>>& edges,
                                double power, const FadingModel& fading);
// Degrees-of-freedom variant: r = 1/2, no power parameter.
XChannelRegion x_channel_dof_region(const std::vector<std::pair<std::string, std::string>>& edges);

// f(K) = rank over GF(q) of the receivers' stacked matrices, in bits
// (scaled by log2 q). Matrices are in the broadcast orientation; the dual
// MAC shares the region, so ld_region_mac transposes and delegates.
SubmodularOracle ld_region(const std::vector<GfMatrix>& matrices, int q,
                           std::optional<GroundSet> ground = std::nullopt);
SubmodularOracle ld_region_mac(const std::vector<GfMatrix>& matrices, int q,
                               std::optional<GroundSet> ground = std::nullopt);
// Per-user rate of the fading linear-deterministic X scheme.
double ld_x_rate(int q);

struct DelayedCsitRegion {
  int p = 1;             // min(transmit antennas, total receive antennas)
  double factor = 1;     // H_p, the achievable-to-cut gap
  RatePolytope achievable;  // over single-antenna streams
  RatePolytope cut;
};
DelayedCsitRegion delayed_csit_bc_dof(int tx_antennas, const std::vector<int>& rx_antennas);

// The Appendix-style correspondence between per-receiver DOF points and the
// matching polytope of the complete l x m bipartite graph.
std::vector<double> dof_to_matching_point(const std::vector<double>& dof, int tx_antennas);
std::vector<double> matching_point_to_dof(const std::vector<double>& x, int tx_antennas,
                                          int receivers);

//============================================================================
// Wireless network compilation
//============================================================================

struct GaussianMacSpec {
  std::string color, receiver;
  std::vector<std::string> sources;
  std::vector<double> gains;  // amplitudes per source
  double power = 1;
};
struct GaussianBcSpec {
  std::string color, transmitter;
  std::vector<std::string> receivers;
  std::vector<double> gains;
  double power = 1;
};
struct ErasureBcSpec {
  std::string color, transmitter;
  std::vector<std::string> receivers;
  double epsilon = 0.5;
  bool feedback = true;  // ACK feedback present (commensurate reverse links)
};
struct LinDetMacSpec {
  std::string color, receiver;
  std::vector<std::string> sources;
  int q = 2;
  std::vector<GfMatrix> matrices;  // broadcast orientation, one per source
};
struct LinDetBcSpec {
  std::string color, transmitter;
  std::vector<std::string> receivers;
  int q = 2;
  std::vector<GfMatrix> matrices;
};
struct DelayedCsitBcSpec {
  std::string color, transmitter;
  std::vector<std::string> receivers;
  int tx_antennas = 1;
  std::vector<int> rx_antennas;
};

enum class XFlavor { FadingX, FixedXdof, FadingLdX };
struct XChannelSpec {
  XFlavor flavor = XFlavor::FadingX;
  std::vector<std::pair<std::string, std::string>> edges;  // directed
  double power = 1;
  std::optional<FadingModel> fading;  // FadingX only
  int q = 2;                          // FadingLdX only
};

using ChannelSpec = std::variant<GaussianMacSpec, GaussianBcSpec, ErasureBcSpec, LinDetMacSpec,
                                 LinDetBcSpec, DelayedCsitBcSpec, XChannelSpec>;

enum class CompileMode { Color, Snapshot, Antenna };

struct WirelessSpec {
  CompileMode mode = CompileMode::Color;
  bool reciprocal = false;
  std::vector<ChannelSpec> channels;
  std::map<std::string, int> antenna_counts;  // antenna mode only
  std::vector<std::string> extra_nodes;       // nodes with no channel (endpoints)
  std::optional<TrafficPattern> traffic;
};

struct CompiledChannel {
  int index = 0;
  std::string label;  // the edge_channel key; color name in color mode
  std::string kind;
  std::vector<std::string> edges;
  double power_scale = 1;  // achievable covers cut at power P / power_scale ...
  double rate_scale = 1;   // ... shrunk by rate_scale
  bool reciprocal = false;
};

struct CompileResult {
  PolyNet net;
  std::vector<CompiledChannel> channels;
  std::map<std::string, std::string> node_map;        // original -> compiled vertex
  std::map<std::string, std::string> edge_channel;    // edge id -> channel label
  std::map<std::string, std::string> antenna_original;
  std::optional<TrafficPattern> traffic;  // endpoints renamed to compiled vertices
  std::optional<ReversalMap> tau;         // present when compiled reciprocal
  WirelessSpec spec;                      // the compiled description
};

CompileResult compile(const WirelessSpec& spec);

//============================================================================
// Wireless-side cut comparison
//============================================================================

struct WirelessCutRow {
  std::string channel;
  int crossing = 0;
  double wireless_bound = 0;  // general-distribution cut at power P/power_scale
  double power_scale = 1;
  double rate_scale = 1;
  double implied = 0;  // wireless_bound / rate_scale
};

struct WirelessCutReport {
  double poly_cut = 0;
  bool poly_unbounded = false;
  double implied_wireless_bound = 0;  // sum over channels
  std::vector<WirelessCutRow> rows;
  bool holds = false;  // poly_cut >= implied (the layering comparison)
};

WirelessCutReport wireless_cut_factor_report(const CompileResult& compiled,
                                             const std::set<std::string>& omega);

}  // namespace polyflow
