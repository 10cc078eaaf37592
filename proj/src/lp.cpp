#include "polyflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace polyflow {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "cap-exceeded";
  }
  return "?";
}

namespace {

// Dense two-phase tableau simplex. Maximization form internally.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const LpOptions& opts) : opts_(opts) {
    n_ = lp.num_vars();
    m_ = lp.num_rows();
    flipped_.assign(static_cast<size_t>(m_), false);

    // Column layout: structural | one slack/surplus per inequality | one
    // artificial per '='/'>' row. unit_col_[i] is the +e_i column of row i.
    std::vector<char> sense(static_cast<size_t>(m_));
    std::vector<double> rhs(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows()[static_cast<size_t>(i)];
      sense[static_cast<size_t>(i)] = row.sense;
      rhs[static_cast<size_t>(i)] = row.rhs;
      if (row.rhs < 0) {
        flipped_[static_cast<size_t>(i)] = true;
        rhs[static_cast<size_t>(i)] = -row.rhs;
        sense[static_cast<size_t>(i)] = row.sense == '<' ? '>' : (row.sense == '>' ? '<' : '=');
      }
    }

    slack_col_.assign(static_cast<size_t>(m_), -1);
    art_col_.assign(static_cast<size_t>(m_), -1);
    int col = n_;
    for (int i = 0; i < m_; ++i)
      if (sense[static_cast<size_t>(i)] != '=') slack_col_[static_cast<size_t>(i)] = col++;
    for (int i = 0; i < m_; ++i)
      if (sense[static_cast<size_t>(i)] != '<') art_col_[static_cast<size_t>(i)] = col++;
    cols_ = col;
    stride_ = cols_ + 1;  // rhs in the last column

    t_.assign(static_cast<size_t>(m_) * stride_, 0.0);
    basis_.assign(static_cast<size_t>(m_), -1);
    active_.assign(static_cast<size_t>(m_), true);

    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows()[static_cast<size_t>(i)];
      const double sgn = flipped_[static_cast<size_t>(i)] ? -1.0 : 1.0;
      double* tr = row_ptr(i);
      for (const auto& [v, c] : row.terms) tr[v] += sgn * c;
      tr[cols_] = rhs[static_cast<size_t>(i)];
      if (slack_col_[static_cast<size_t>(i)] >= 0)
        tr[slack_col_[static_cast<size_t>(i)]] = sense[static_cast<size_t>(i)] == '<' ? 1.0 : -1.0;
      if (art_col_[static_cast<size_t>(i)] >= 0) tr[art_col_[static_cast<size_t>(i)]] = 1.0;
      basis_[static_cast<size_t>(i)] =
          sense[static_cast<size_t>(i)] == '<' ? slack_col_[static_cast<size_t>(i)]
                                               : art_col_[static_cast<size_t>(i)];
    }

    cost_.assign(static_cast<size_t>(cols_), 0.0);
    const double dir = lp.maximize() ? 1.0 : -1.0;
    for (int j = 0; j < n_; ++j) cost_[static_cast<size_t>(j)] = dir * lp.objective()[static_cast<size_t>(j)];

    is_art_.assign(static_cast<size_t>(cols_), 0);
    for (int i = 0; i < m_; ++i)
      if (art_col_[static_cast<size_t>(i)] >= 0) is_art_[static_cast<size_t>(art_col_[static_cast<size_t>(i)])] = 1;
  }

  LpSolution run(const LinearProgram& lp) {
    LpSolution sol;

    // Phase 1: maximize -(sum of artificials).
    bool need_phase1 = false;
    std::vector<double> phase1_cost(static_cast<size_t>(cols_), 0.0);
    for (int i = 0; i < m_; ++i)
      if (art_col_[static_cast<size_t>(i)] >= 0) {
        phase1_cost[static_cast<size_t>(art_col_[static_cast<size_t>(i)])] = -1.0;
        need_phase1 = true;
      }
    if (need_phase1) {
      rebuild_reduced(phase1_cost);
      const LpStatus s1 = iterate(phase1_cost, /*allow_artificial=*/true, sol.iterations);
      if (s1 == LpStatus::IterationLimit) {
        sol.status = s1;
        return sol;
      }
      const double infeas = -objective_value(phase1_cost);
      if (infeas > 1e-7) {
        sol.status = LpStatus::Infeasible;
        extract_duals(phase1_cost, sol);
        sol.objective = 0;
        return sol;
      }
      purge_artificials();
    }

    // Phase 2 on the real costs.
    rebuild_reduced(cost_);
    const LpStatus s2 = iterate(cost_, /*allow_artificial=*/false, sol.iterations);
    if (s2 != LpStatus::Optimal) {
      sol.status = s2;
      return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(static_cast<size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i)
      if (active_[static_cast<size_t>(i)] && basis_[static_cast<size_t>(i)] < n_)
        sol.x[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = row_ptr(i)[cols_];
    double obj = 0;
    for (int j = 0; j < n_; ++j) obj += lp.objective()[static_cast<size_t>(j)] * sol.x[static_cast<size_t>(j)];
    sol.objective = obj;
    extract_duals(cost_, sol);
    if (!lp.maximize())
      for (double& v : sol.y) v = -v;
    return sol;
  }

 private:
  double* row_ptr(int i) { return t_.data() + static_cast<size_t>(i) * stride_; }

  double objective_value(const std::vector<double>& cost) const {
    double v = 0;
    for (int i = 0; i < m_; ++i)
      if (active_[static_cast<size_t>(i)])
        v += cost[static_cast<size_t>(basis_[static_cast<size_t>(i)])] *
             t_[static_cast<size_t>(i) * stride_ + static_cast<size_t>(cols_)];
    return v;
  }

  void rebuild_reduced(const std::vector<double>& cost) {
    reduced_ = cost;
    for (int i = 0; i < m_; ++i) {
      if (!active_[static_cast<size_t>(i)]) continue;
      const double cb = cost[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
      if (cb == 0.0) continue;
      const double* tr = t_.data() + static_cast<size_t>(i) * stride_;
      for (int j = 0; j < cols_; ++j) reduced_[static_cast<size_t>(j)] -= cb * tr[j];
    }
  }

  void pivot(int prow, int pcol) {
    double* pr = row_ptr(prow);
    const double pv = pr[pcol];
    for (int j = 0; j <= cols_; ++j) pr[j] /= pv;
    pr[pcol] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == prow || !active_[static_cast<size_t>(i)]) continue;
      double* tr = row_ptr(i);
      const double f = tr[pcol];
      if (std::abs(f) < 1e-13) {
        tr[pcol] = 0.0;
        continue;
      }
      for (int j = 0; j <= cols_; ++j) tr[j] -= f * pr[j];
      tr[pcol] = 0.0;
    }
    const double rf = reduced_[static_cast<size_t>(pcol)];
    if (std::abs(rf) > 0.0) {
      for (int j = 0; j < cols_; ++j) reduced_[static_cast<size_t>(j)] -= rf * pr[j];
      reduced_[static_cast<size_t>(pcol)] = 0.0;
    }
    basis_[static_cast<size_t>(prow)] = pcol;
  }

  bool is_artificial(int col) const { return is_art_[static_cast<size_t>(col)] != 0; }

  LpStatus iterate(const std::vector<double>& cost, bool allow_artificial, int& iterations) {
    const double tol = opts_.tol;
    bool bland = false;
    int stall = 0;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<char> banned(static_cast<size_t>(cols_), 0);
    if (!allow_artificial)
      for (int i = 0; i < m_; ++i)
        if (art_col_[static_cast<size_t>(i)] >= 0) banned[static_cast<size_t>(art_col_[static_cast<size_t>(i)])] = 1;

    const int stall_limit = 4 * (m_ + cols_) + 64;
    for (;;) {
      if (iterations++ > opts_.max_iterations) return LpStatus::IterationLimit;

      int enter = -1;
      if (!bland) {
        double bestr = tol;
        for (int j = 0; j < cols_; ++j)
          if (!banned[static_cast<size_t>(j)] && reduced_[static_cast<size_t>(j)] > bestr) {
            bestr = reduced_[static_cast<size_t>(j)];
            enter = j;
          }
      } else {
        for (int j = 0; j < cols_; ++j)
          if (!banned[static_cast<size_t>(j)] && reduced_[static_cast<size_t>(j)] > tol) {
            enter = j;
            break;
          }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (!active_[static_cast<size_t>(i)]) continue;
        const double* tr = t_.data() + static_cast<size_t>(i) * stride_;
        if (tr[enter] <= tol) continue;
        const double ratio = tr[cols_] / tr[enter];
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
          // Tie break: kick artificials first, then lowest basis index.
          const int bl = basis_[static_cast<size_t>(leave)];
          const int bi = basis_[static_cast<size_t>(i)];
          const bool leave_art = is_artificial(bl), i_art = is_artificial(bi);
          if ((i_art && !leave_art) || (i_art == leave_art && bi < bl)) leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;

      pivot(leave, enter);

      const double obj = objective_value(cost);
      if (obj > best + 1e-12) {
        best = obj;
        stall = 0;
      } else if (++stall > stall_limit) {
        bland = true;
      }
    }
  }

  // After phase 1: pivot zero-valued artificials out of the basis, or retire
  // their rows entirely when the row is dependent on the others.
  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!active_[static_cast<size_t>(i)]) continue;
      if (!is_artificial(basis_[static_cast<size_t>(i)])) continue;
      double* tr = row_ptr(i);
      int pcol = -1;
      for (int j = 0; j < cols_ && pcol < 0; ++j)
        if (!is_artificial(j) && std::abs(tr[j]) > 1e-9) pcol = j;
      if (pcol >= 0) {
        pivot(i, pcol);
      } else {
        active_[static_cast<size_t>(i)] = false;  // redundant constraint
      }
    }
  }

  void extract_duals(const std::vector<double>& cost, LpSolution& sol) {
    rebuild_reduced(cost);
    sol.y.assign(static_cast<size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      if (!active_[static_cast<size_t>(i)]) continue;
      const int unit = art_col_[static_cast<size_t>(i)] >= 0 ? art_col_[static_cast<size_t>(i)]
                                                             : slack_col_[static_cast<size_t>(i)];
      double yi = cost[static_cast<size_t>(unit)] - reduced_[static_cast<size_t>(unit)];
      if (flipped_[static_cast<size_t>(i)]) yi = -yi;
      sol.y[static_cast<size_t>(i)] = yi;
    }
  }

  LpOptions opts_;
  int n_ = 0, m_ = 0, cols_ = 0;
  size_t stride_ = 0;
  std::vector<double> t_;
  std::vector<double> reduced_;
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<int> slack_col_, art_col_;
  std::vector<char> active_, is_art_;
  std::vector<bool> flipped_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts) {
  Tableau t(lp, opts);
  return t.run(lp);
}

}  // namespace polyflow
