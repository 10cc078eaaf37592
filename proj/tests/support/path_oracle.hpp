#pragma once

// Test-only concurrent-flow oracle: enumerate simple paths per commodity and
// solve the path-formulation LP with the naive simplex. Independent of the
// edge-formulation solver in the library.

#include <functional>
#include <optional>
#include <vector>

#include "polyflow/netmodel.hpp"
#include "support/naive_simplex.hpp"

namespace polyflow::testing {

inline std::vector<std::vector<int>> enumerate_simple_paths(const PolyNet& net, int s, int t,
                                                            int max_paths) {
  std::vector<std::vector<int>> paths;
  std::vector<int> stack;
  std::vector<char> visited(static_cast<size_t>(net.num_nodes()), 0);
  std::function<void(int)> dfs = [&](int v) {
    if (static_cast<int>(paths.size()) >= max_paths) return;
    if (v == t) {
      paths.push_back(stack);
      return;
    }
    visited[static_cast<size_t>(v)] = 1;
    for (int e : net.out_edges(v)) {
      const int h = net.head_of(e);
      if (visited[static_cast<size_t>(h)]) continue;
      stack.push_back(e);
      dfs(h);
      stack.pop_back();
    }
    visited[static_cast<size_t>(v)] = 0;
  };
  dfs(s);
  return paths;
}

// Max concurrent flow via the path LP; nullopt when the path cap is hit.
inline std::optional<double> path_lp_concurrent(const PolyNet& net, const TrafficPattern& traffic,
                                                int max_paths_per_commodity = 64) {
  LinearProgram lp;
  std::vector<std::vector<std::vector<int>>> paths;  // [commodity][path] -> edges
  std::vector<std::vector<int>> path_vars;
  for (const auto& c : traffic.commodities()) {
    auto ps = enumerate_simple_paths(net, net.node_index(c.source), net.node_index(c.sink),
                                     max_paths_per_commodity + 1);
    if (static_cast<int>(ps.size()) > max_paths_per_commodity) return std::nullopt;
    std::vector<int> vars;
    for (size_t p = 0; p < ps.size(); ++p) vars.push_back(lp.add_variable(0.0));
    paths.push_back(std::move(ps));
    path_vars.push_back(std::move(vars));
  }
  const int lambda = lp.add_variable(1.0);

  for (int i = 0; i < traffic.size(); ++i) {
    const int row = lp.add_row('=', 0.0);
    for (int v : path_vars[static_cast<size_t>(i)]) lp.add_term(row, v, 1.0);
    lp.add_term(row, lambda, -traffic.commodities()[static_cast<size_t>(i)].demand);
  }

  // Every subset constraint at every node side; a simple path crosses at most
  // one edge of any one-side subset, so coefficients are 0/1.
  for (int v = 0; v < net.num_nodes(); ++v)
    for (bool in_side : {true, false}) {
      const SideCap* cap = net.cap(v, in_side);
      if (!cap || !cap->oracle.has_value() || cap->oracle->size() == 0) continue;
      const auto& f = *cap->oracle;
      const auto& ground = net.ground_edges(v, in_side);
      const Mask full = f.ground().full_mask();
      for (Mask s = 1; s <= full; ++s) {
        const int row = lp.add_row('<', f.eval(s));
        for (int i = 0; i < traffic.size(); ++i)
          for (size_t p = 0; p < paths[static_cast<size_t>(i)].size(); ++p) {
            bool uses = false;
            for (int e : paths[static_cast<size_t>(i)][p]) {
              for (int q = 0; q < f.size(); ++q)
                if ((s & (Mask(1) << q)) && ground[static_cast<size_t>(q)] == e) uses = true;
              if (uses) break;
            }
            if (uses) lp.add_term(row, path_vars[static_cast<size_t>(i)][p], 1.0);
          }
      }
    }

  return naive_lp_max(lp);
}

}  // namespace polyflow::testing
