#include "polyflow/flowsolve.hpp"

#include <chrono>
#include <cmath>
#include <set>

namespace polyflow {

namespace {

struct CapRowInfo {
  int row = -1;
  int node = -1;
  bool in_side = true;
  Mask mask = 0;
  double rho = 0;
};

// Objective selector for the shared LP builder.
enum class FlowObjective { Concurrent, WeightedSum };

struct FlowLp {
  LinearProgram lp;
  std::vector<CapRowInfo> cap_rows;
  int num_commodities = 0;
  int num_edges = 0;
  int extra_var = -1;  // lambda, or the first of k rate variables

  int flow_var(int commodity, int edge) const { return commodity * num_edges + edge; }
};

void check_endpoints(const PolyNet& net, const TrafficPattern& traffic) {
  for (const auto& c : traffic.commodities()) {
    if (net.node_index(c.source) < 0)
      throw InvalidInputError("traffic names unknown node " + c.source);
    if (net.node_index(c.sink) < 0) throw InvalidInputError("traffic names unknown node " + c.sink);
  }
}

// Tabulate the oracle and keep only subset constraints that are not implied
// by a superset with an equal-or-smaller bound (loads are nonnegative).
std::vector<std::pair<Mask, double>> pruned_subset_bounds(const SubmodularOracle& f) {
  const int n = f.size();
  const Mask full = f.ground().full_mask();
  std::vector<double> val(static_cast<size_t>(full) + 1);
  for (Mask s = 0; s <= full; ++s) val[s] = f.eval(s);

  // min_super[s] = min f over strict supersets of s.
  std::vector<double> min_super(static_cast<size_t>(full) + 1,
                                std::numeric_limits<double>::infinity());
  // Iterate masks in decreasing popcount order via plain descending masks:
  // any superset t of s obtained by adding one bit satisfies t > s, so a
  // descending sweep sees supersets first.
  for (Mask s = full; s-- > 0;) {
    for (int b = 0; b < n; ++b) {
      const Mask t = s | (Mask(1) << b);
      if (t == s) continue;
      min_super[s] = std::min(min_super[s], std::min(val[t], min_super[t]));
    }
  }

  std::vector<std::pair<Mask, double>> out;
  for (Mask s = 1; s <= full; ++s)
    if (val[s] < min_super[s] - 1e-12) out.emplace_back(s, val[s]);
  return out;
}

using ExtraMasks = std::map<std::pair<int, bool>, std::set<Mask>>;

FlowLp build_flow_lp(const PolyNet& net, const TrafficPattern& traffic,
                     const std::vector<double>& demand_or_weights, FlowObjective objective,
                     const SolveOptions& opts, const ExtraMasks* extra_masks = nullptr) {
  net.require_consistent();
  check_endpoints(net, traffic);

  FlowLp b;
  b.num_commodities = traffic.size();
  b.num_edges = net.num_edges();

  for (int i = 0; i < b.num_commodities; ++i)
    for (int e = 0; e < b.num_edges; ++e) {
      (void)e;
      b.lp.add_variable(0.0);
    }

  if (objective == FlowObjective::Concurrent) {
    b.extra_var = b.lp.add_variable(1.0);  // lambda
  } else {
    b.extra_var = b.lp.num_vars();
    for (int i = 0; i < b.num_commodities; ++i)
      b.lp.add_variable(demand_or_weights[static_cast<size_t>(i)]);
  }

  // Flow conservation, with the source row tying net outflow to the rate.
  for (int i = 0; i < b.num_commodities; ++i) {
    const auto& c = traffic.commodities()[static_cast<size_t>(i)];
    const int s = net.node_index(c.source), t = net.node_index(c.sink);
    for (int v = 0; v < net.num_nodes(); ++v) {
      if (v == t) continue;  // sink balance is implied
      const int row = b.lp.add_row('=', 0.0);
      for (int e : net.in_edges(v)) b.lp.add_term(row, b.flow_var(i, e), v == s ? -1.0 : 1.0);
      for (int e : net.out_edges(v)) b.lp.add_term(row, b.flow_var(i, e), v == s ? 1.0 : -1.0);
      if (v == s) {
        if (objective == FlowObjective::Concurrent)
          b.lp.add_term(row, b.extra_var, -demand_or_weights[static_cast<size_t>(i)]);
        else
          b.lp.add_term(row, b.extra_var + i, -1.0);
      }
    }
  }

  // Joint capacity constraints per node side.
  for (int v = 0; v < net.num_nodes(); ++v) {
    for (bool in_side : {true, false}) {
      const SideCap* cap = net.cap(v, in_side);
      if (!cap || !cap->oracle.has_value() || cap->oracle->size() == 0) continue;
      const auto& f = *cap->oracle;
      const auto& ground = net.ground_edges(v, in_side);

      std::vector<std::pair<Mask, double>> bounds;
      if (f.size() <= opts.degree_cap) {
        bounds = pruned_subset_bounds(f);
      } else if (!opts.lazy) {
        throw SizeCapError("node " + net.nodes()[static_cast<size_t>(v)] + " has degree " +
                           std::to_string(f.size()) + " above the enumeration cap " +
                           std::to_string(opts.degree_cap) + "; enable lazy separation");
      } else {
        // Seed with singletons and the full set; the separation loop keeps
        // appending violated subsets it discovers.
        for (int i = 0; i < f.size(); ++i) bounds.emplace_back(Mask(1) << i, f.eval(Mask(1) << i));
        bounds.emplace_back(f.ground().full_mask(), f.eval(f.ground().full_mask()));
        if (extra_masks) {
          auto it = extra_masks->find({v, in_side});
          if (it != extra_masks->end())
            for (Mask s : it->second) bounds.emplace_back(s, f.eval(s));
        }
      }

      for (const auto& [mask, rho] : bounds) {
        const int row = b.lp.add_row('<', rho);
        for (int p = 0; p < f.size(); ++p)
          if (mask & (Mask(1) << p)) {
            const int e = ground[static_cast<size_t>(p)];
            for (int i = 0; i < b.num_commodities; ++i) b.lp.add_term(row, b.flow_var(i, e), 1.0);
          }
        b.cap_rows.push_back({row, v, in_side, mask, rho});
      }
    }
  }
  return b;
}

// Brute-force separation: most violated subset at one node side.
Mask most_violated_mask(const SubmodularOracle& f, const std::vector<int>& ground,
                        const std::vector<double>& loads) {
  const Mask full = f.ground().full_mask();
  double worst = 1e-9;
  Mask worst_mask = 0;
  for (Mask s = 1; s <= full; ++s) {
    double load = 0;
    for (int p = 0; p < f.size(); ++p)
      if (s & (Mask(1) << p)) load += loads[static_cast<size_t>(ground[static_cast<size_t>(p)])];
    const double gap = load - f.eval(s);
    if (gap > worst) {
      worst = gap;
      worst_mask = s;
    }
  }
  return worst_mask;
}

struct SolveInternals {
  FlowSolution sol;
  FlowLp build;
  LpSolution lp_sol;
};

SolveInternals solve_flow(const PolyNet& net, const TrafficPattern& traffic,
                          const std::vector<double>& demand_or_weights, FlowObjective objective,
                          const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();

  ExtraMasks extra;
  FlowLp b = build_flow_lp(net, traffic, demand_or_weights, objective, opts, &extra);
  LpSolution sol = solve_lp(b.lp, opts.lp);

  if (opts.lazy && sol.status == LpStatus::Optimal) {
    std::vector<double> loads(static_cast<size_t>(net.num_edges()), 0.0);
    for (int round = 0; round < 256; ++round) {
      for (int e = 0; e < net.num_edges(); ++e) {
        double l = 0;
        for (int i = 0; i < traffic.size(); ++i) l += sol.x[static_cast<size_t>(b.flow_var(i, e))];
        loads[static_cast<size_t>(e)] = l;
      }
      bool added = false;
      for (int v = 0; v < net.num_nodes(); ++v)
        for (bool in_side : {true, false}) {
          const SideCap* cap = net.cap(v, in_side);
          if (!cap || !cap->oracle.has_value() || cap->oracle->size() == 0) continue;
          if (cap->oracle->size() <= opts.degree_cap) continue;  // fully enumerated already
          const Mask m = most_violated_mask(*cap->oracle, net.ground_edges(v, in_side), loads);
          if (m != 0 && extra[{v, in_side}].insert(m).second) added = true;
        }
      if (!added) break;
      b = build_flow_lp(net, traffic, demand_or_weights, objective, opts, &extra);
      sol = solve_lp(b.lp, opts.lp);
      if (sol.status != LpStatus::Optimal) break;
    }
  }

  SolveInternals res;
  FlowSolution& out = res.sol;
  out.stats.num_vars = b.lp.num_vars();
  out.stats.num_rows = b.lp.num_rows();
  out.stats.status = sol.status;
  out.stats.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (sol.status == LpStatus::IterationLimit)
    throw SolverError("flow LP hit the iteration limit (" + std::to_string(out.stats.num_rows) +
                      " rows, " + std::to_string(out.stats.num_vars) + " vars)");
  if (sol.status == LpStatus::Unbounded) {
    out.objective = std::numeric_limits<double>::infinity();
    out.lambda = out.objective;
    res.build = std::move(b);
    res.lp_sol = std::move(sol);
    return res;
  }
  if (sol.status != LpStatus::Optimal)
    throw SolverError("flow LP unexpectedly infeasible");

  out.flow.assign(static_cast<size_t>(traffic.size()),
                  std::vector<double>(static_cast<size_t>(net.num_edges()), 0.0));
  for (int i = 0; i < traffic.size(); ++i)
    for (int e = 0; e < net.num_edges(); ++e)
      out.flow[static_cast<size_t>(i)][static_cast<size_t>(e)] =
          sol.x[static_cast<size_t>(b.flow_var(i, e))];
  out.objective = sol.objective;
  out.dual_value = sol.dual_objective(b.lp);
  out.rates.resize(static_cast<size_t>(traffic.size()));
  if (objective == FlowObjective::Concurrent) {
    out.lambda = sol.x[static_cast<size_t>(b.extra_var)];
    for (int i = 0; i < traffic.size(); ++i)
      out.rates[static_cast<size_t>(i)] = out.lambda * demand_or_weights[static_cast<size_t>(i)];
  } else {
    for (int i = 0; i < traffic.size(); ++i)
      out.rates[static_cast<size_t>(i)] = sol.x[static_cast<size_t>(b.extra_var + i)];
  }
  res.build = std::move(b);
  res.lp_sol = std::move(sol);
  return res;
}

}  // namespace

FlowSolution max_concurrent_flow(const PolyNet& net, const TrafficPattern& traffic,
                                 const SolveOptions& opts) {
  std::vector<double> demands;
  for (const auto& c : traffic.commodities()) demands.push_back(c.demand);
  return solve_flow(net, traffic, demands, FlowObjective::Concurrent, opts).sol;
}

FlowSolution max_weighted_sum(const PolyNet& net, const TrafficPattern& traffic,
                              const std::vector<double>& weights, const SolveOptions& opts) {
  if (static_cast<int>(weights.size()) != traffic.size())
    throw InvalidInputError("max_weighted_sum: weight vector size mismatch");
  return solve_flow(net, traffic, weights, FlowObjective::WeightedSum, opts).sol;
}

Feasibility feasible(const PolyNet& net, const TrafficPattern& traffic,
                     const std::vector<double>& rates, const SolveOptions& opts) {
  if (static_cast<int>(rates.size()) != traffic.size())
    throw InvalidInputError("feasible: rate vector size mismatch");
  for (double r : rates)
    if (r < 0) throw InvalidInputError("feasible: rates must be >= 0");

  Feasibility out;
  double total = 0;
  for (double r : rates) total += r;
  if (total <= opts.tol) {
    out.feasible = true;
    out.lambda = std::numeric_limits<double>::infinity();
    return out;
  }

  // Routable iff the demanded tuple admits concurrency factor >= 1.
  SolveInternals res = solve_flow(net, traffic, rates, FlowObjective::Concurrent, opts);
  if (res.sol.stats.status == LpStatus::Unbounded) {
    out.feasible = true;
    out.lambda = std::numeric_limits<double>::infinity();
    return out;
  }

  out.lambda = res.sol.objective;
  out.feasible = out.lambda >= 1.0 - opts.tol;
  if (!out.feasible) {
    // The optimal duals aggregate capacity bounds into sum_i alpha_i R_i <=
    // lambda* < 1 (demands scaled to the requested rates); report the rows
    // with positive weight as the violated aggregated constraint.
    for (const auto& cr : res.build.cap_rows) {
      const double y = res.lp_sol.y[static_cast<size_t>(cr.row)];
      if (std::abs(y) < 1e-9) continue;
      BindingConstraint bc;
      bc.node = net.nodes()[static_cast<size_t>(cr.node)];
      bc.in_side = cr.in_side;
      const auto& ground = net.ground_edges(cr.node, cr.in_side);
      for (int p = 0; p < static_cast<int>(ground.size()); ++p)
        if (cr.mask & (Mask(1) << p))
          bc.subset.push_back(net.edge(ground[static_cast<size_t>(p)]).id);
      bc.bound = cr.rho;
      bc.dual = y;
      out.binding.push_back(std::move(bc));
    }
  }
  return out;
}

LayeredFlowResult symmetric_layered_flow(const std::vector<int>& sizes,
                                         const std::vector<double>& rates) {
  if (sizes.size() < 3)
    throw InvalidInputError("symmetric_layered_flow: need source, middle, and sink layers");
  const int k = sizes.front();
  if (sizes.back() != k || k < 1)
    throw InvalidInputError("symmetric_layered_flow: first and last layer sizes must equal k");
  if (static_cast<int>(rates.size()) != k)
    throw InvalidInputError("symmetric_layered_flow: rate vector size mismatch");
  for (int n : sizes)
    if (n < 1) throw InvalidInputError("symmetric_layered_flow: layer sizes must be >= 1");
  for (double r : rates)
    if (r < 0) throw InvalidInputError("symmetric_layered_flow: rates must be >= 0");

  LayeredFlowResult out;
  double sum = 0;
  for (double r : rates) sum += r;
  for (int i = 0; i < k; ++i)
    if (rates[static_cast<size_t>(i)] > 1.0 + kExactTol) {
      out.reason = "R_" + std::to_string(i + 1) + " exceeds the unit per-commodity bound";
      return out;
    }
  const int hops = static_cast<int>(sizes.size()) - 1;
  for (int l = 0; l < hops; ++l) {
    const double bound = std::min(sizes[static_cast<size_t>(l)], sizes[static_cast<size_t>(l + 1)]);
    if (sum > bound + kExactTol) {
      out.reason = "sum rate " + std::to_string(sum) + " exceeds min(n_" + std::to_string(l) +
                   ", n_" + std::to_string(l + 1) + ") = " + std::to_string(bound);
      return out;
    }
  }

  // Materialize the equal-split flow on the canonical layered network: the
  // incoming flow at each relay is divided equally among its out-edges.
  std::vector<int> middle(sizes.begin() + 1, sizes.end() - 1);
  LayeredNet inst = make_layered_unit_network(k, middle);
  const PolyNet& net = inst.net;
  out.flow.assign(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(net.num_edges()), 0.0));

  const int L = static_cast<int>(middle.size());
  auto layer_name = [&](int l, int j) {  // l in 1..L
    return "m" + std::to_string(l) + "_" + std::to_string(j + 1);
  };
  for (int i = 0; i < k; ++i) {
    const double r = rates[static_cast<size_t>(i)];
    if (r == 0) continue;
    const std::string s = "s" + std::to_string(i + 1), t = "t" + std::to_string(i + 1);
    const int n1 = middle[0], nL = middle[static_cast<size_t>(L - 1)];
    for (int j = 0; j < n1; ++j)
      out.flow[static_cast<size_t>(i)][static_cast<size_t>(net.edge_index(s + "->" + layer_name(1, j)))] = r / n1;
    for (int l = 1; l < L; ++l) {
      const int na = middle[static_cast<size_t>(l - 1)], nb = middle[static_cast<size_t>(l)];
      for (int a = 0; a < na; ++a)
        for (int bn = 0; bn < nb; ++bn)
          out.flow[static_cast<size_t>(i)][static_cast<size_t>(
              net.edge_index(layer_name(l, a) + "->" + layer_name(l + 1, bn)))] = r / (na * nb);
    }
    for (int j = 0; j < nL; ++j)
      out.flow[static_cast<size_t>(i)][static_cast<size_t>(net.edge_index(layer_name(L, j) + "->" + t))] = r / nL;
  }
  out.feasible = true;
  return out;
}

std::vector<std::string> check_solution(const PolyNet& net, const TrafficPattern& traffic,
                                        const FlowSolution& sol, double tol) {
  std::vector<std::string> out;
  for (int i = 0; i < traffic.size(); ++i) {
    const auto& c = traffic.commodities()[static_cast<size_t>(i)];
    const int s = net.node_index(c.source), t = net.node_index(c.sink);
    for (int v = 0; v < net.num_nodes(); ++v) {
      double in = 0, flow_out = 0;
      for (int e : net.in_edges(v)) in += sol.flow_on(i, e);
      for (int e : net.out_edges(v)) flow_out += sol.flow_on(i, e);
      if (v == s) {
        if (std::abs(flow_out - in - sol.rates[static_cast<size_t>(i)]) > tol)
          out.push_back("source balance violated for commodity " + std::to_string(i));
      } else if (v == t) {
        if (std::abs(in - flow_out - sol.rates[static_cast<size_t>(i)]) > tol)
          out.push_back("sink balance violated for commodity " + std::to_string(i));
      } else if (std::abs(in - flow_out) > tol) {
        out.push_back("conservation violated for commodity " + std::to_string(i) + " at " +
                      net.nodes()[static_cast<size_t>(v)]);
      }
    }
    for (int e = 0; e < net.num_edges(); ++e)
      if (sol.flow_on(i, e) < -tol)
        out.push_back("negative flow for commodity " + std::to_string(i));
  }

  for (int v = 0; v < net.num_nodes(); ++v)
    for (bool in_side : {true, false}) {
      const SideCap* cap = net.cap(v, in_side);
      if (!cap || !cap->oracle.has_value() || cap->oracle->size() == 0) continue;
      const auto& f = *cap->oracle;
      const auto& ground = net.ground_edges(v, in_side);
      const Mask full = f.ground().full_mask();
      for (Mask s = 1; s <= full; ++s) {
        double load = 0;
        for (int p = 0; p < f.size(); ++p)
          if (s & (Mask(1) << p)) load += sol.edge_load(ground[static_cast<size_t>(p)]);
        if (load > f.eval(s) + tol) {
          out.push_back("capacity violated at " + net.nodes()[static_cast<size_t>(v)] +
                        (in_side ? " (in)" : " (out)"));
          break;
        }
      }
    }

  if (std::isfinite(sol.objective) && std::abs(sol.objective - sol.dual_value) > tol)
    out.push_back("strong duality gap " + std::to_string(std::abs(sol.objective - sol.dual_value)));
  return out;
}

}  // namespace polyflow
