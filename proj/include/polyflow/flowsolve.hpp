#pragma once

#include <limits>
#include <string>
#include <vector>

#include "polyflow/lp.hpp"
#include "polyflow/netmodel.hpp"

namespace polyflow {

struct SolveOptions {
  int degree_cap = 12;  // per-node subset constraints enumerated up to 2^cap
  bool lazy = false;    // separate violated subset constraints instead
  double tol = kLpTol;
  LpOptions lp;
};

struct LpStats {
  int num_vars = 0;
  int num_rows = 0;
  LpStatus status = LpStatus::Optimal;
  double solve_seconds = 0;
};

struct FlowSolution {
  std::vector<std::vector<double>> flow;  // [commodity][edge]
  std::vector<double> rates;              // per-commodity achieved rate
  double lambda = 0;                      // concurrency factor (concurrent solves)
  double objective = 0;
  double dual_value = 0;
  LpStats stats;

  double flow_on(int commodity, int edge) const {
    return flow[static_cast<size_t>(commodity)][static_cast<size_t>(edge)];
  }
  double edge_load(int edge) const {
    double s = 0;
    for (const auto& f : flow) s += f[static_cast<size_t>(edge)];
    return s;
  }
};

// Maximize lambda such that rate_i = lambda * demand_i is routable.
FlowSolution max_concurrent_flow(const PolyNet& net, const TrafficPattern& traffic,
                                 const SolveOptions& opts = {});

// Maximize sum_i weights_i * rate_i over routable rate tuples.
FlowSolution max_weighted_sum(const PolyNet& net, const TrafficPattern& traffic,
                              const std::vector<double>& weights, const SolveOptions& opts = {});

struct BindingConstraint {
  std::string node;
  bool in_side = true;
  std::vector<std::string> subset;
  double bound = 0;
  double dual = 0;
};

struct Feasibility {
  bool feasible = false;
  double lambda = 0;  // routable fraction of the demanded tuple
  std::vector<BindingConstraint> binding;
};

// Is the rate tuple routable? On failure the binding constraints aggregate
// into the violated inequality (dual weights sum the subset bounds to a
// number smaller than the demanded load).
Feasibility feasible(const PolyNet& net, const TrafficPattern& traffic,
                     const std::vector<double>& rates, const SolveOptions& opts = {});

// The closed-form equal-split routing for fully connected layered networks
// with unit node constraints: feasible iff sum_i R_i <= min(n_l, n_{l+1})
// for every hop and R_i <= 1.
struct LayeredFlowResult {
  bool feasible = false;
  std::string reason;                     // first violated bound when infeasible
  std::vector<std::vector<double>> flow;  // [commodity][edge] on the canonical layered net
};
LayeredFlowResult symmetric_layered_flow(const std::vector<int>& sizes,
                                         const std::vector<double>& rates);

// Re-verify a solution against the net from scratch: conservation, every
// subset capacity constraint, and strong duality. Empty result means clean.
std::vector<std::string> check_solution(const PolyNet& net, const TrafficPattern& traffic,
                                        const FlowSolution& sol, double tol = kLpTol);

}  // namespace polyflow
