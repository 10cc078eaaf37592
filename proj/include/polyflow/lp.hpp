#pragma once

#include <vector>

#include "polyflow/errors.hpp"

namespace polyflow {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* lp_status_name(LpStatus s);

// max (or min) c.x subject to sparse rows a.x {<=,=,>=} b and x >= 0.
// The solver is pluggable behind this interface; the bundled implementation
// is a dense two-phase primal simplex with a Bland anti-cycling fallback,
// which is exact enough (residuals ~1e-10) at the desk scales used here.
class LinearProgram {
 public:
  int add_variable(double objective_coef = 0.0) {
    objective_.push_back(objective_coef);
    return static_cast<int>(objective_.size()) - 1;
  }
  int add_row(char sense, double rhs) {
    rows_.push_back(Row{{}, sense, rhs});
    return static_cast<int>(rows_.size()) - 1;
  }
  void add_term(int row, int var, double coef) {
    rows_[static_cast<size_t>(row)].terms.emplace_back(var, coef);
  }
  void set_objective(int var, double coef) { objective_[static_cast<size_t>(var)] = coef; }
  void set_maximize(bool maximize) { maximize_ = maximize; }

  int num_vars() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  struct Row {
    std::vector<std::pair<int, double>> terms;
    char sense;  // '<', '=', '>'
    double rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  bool maximize() const { return maximize_; }

 private:
  bool maximize_ = true;
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

struct LpOptions {
  int max_iterations = 200000;
  double tol = 1e-9;
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0;
  std::vector<double> x;  // primal values, size num_vars
  std::vector<double> y;  // duals per original row; Farkas-style phase-1 duals when infeasible
  int iterations = 0;

  double dual_objective(const LinearProgram& lp) const {
    double v = 0;
    for (size_t i = 0; i < y.size(); ++i) v += y[i] * lp.rows()[i].rhs;
    return v;
  }
};

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

}  // namespace polyflow
