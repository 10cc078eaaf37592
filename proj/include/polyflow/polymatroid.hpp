#pragma once

#include <string>
#include <vector>

#include "polyflow/config.hpp"
#include "polyflow/oracle.hpp"

namespace polyflow {

// Exhaustive checks of the defining inequalities over all subset pairs.
// Throw SizeCapError above `cap` elements.
bool is_submodular(const SubmodularOracle& f, double tol = kExactTol, int cap = 8);
bool is_monotone(const SubmodularOracle& f, double tol = kExactTol, int cap = 8);

struct GreedyResult {
  std::vector<double> x;  // a vertex of the polymatroid maximizing w.x
  double value = 0;
};

// Edmonds' greedy algorithm: sort elements by descending weight (ties by
// index), assign prefix marginals to elements with positive weight.
GreedyResult greedy_linear_opt(const SubmodularOracle& f, const std::vector<double>& weights);

// A = sum_{i=1..d} (eps^{i-1} - eps^i) / (1 - eps^i). Always <= H_d.
double harmonic_gap_factor(int d, double epsilon);

// H_d = sum_{i=1..d} 1/i.
double harmonic_number(int d);

struct MembershipResult {
  bool inside = true;
  Mask violating = 0;    // maximally violated subset when !inside
  double violation = 0;  // x(S) - f(S) for that subset
};

// Exhaustive test of x >= 0 and x(S) <= f(S) for every subset.
MembershipResult membership(const std::vector<double>& x, const SubmodularOracle& f,
                            double tol = kExactTol, int cap = 16);

// Standard chain formula; agrees with f on 0/1 indicators.
double lovasz_extension(const SubmodularOracle& f, const std::vector<double>& x);

// The region { x : sum_i x_{pi(i)} / w_i <= 1 for every permutation pi }.
// For the feedback erasure instantiation w_i = 1 - eps^i.
class PermutationPolytope {
 public:
  PermutationPolytope(std::vector<double> w);
  static PermutationPolytope erasure_feedback(int d, double epsilon);

  int dimension() const { return static_cast<int>(w_.size()); }
  const std::vector<double>& coefficients() const { return w_; }

  bool contains(const std::vector<double>& x, double tol = kExactTol, int cap = 8) const;

 private:
  std::vector<double> w_;
};

struct Halfspace {
  std::vector<double> coeffs;  // all >= 0, so the region is down-closed
  double bound = 0;            // >= 0, so the region contains the origin
  std::string tag;
};

// Generic container for down-closed rate regions given by halfspaces.
class RatePolytope {
 public:
  RatePolytope(int dimension, std::vector<Halfspace> halfspaces);

  int dimension() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return hs_; }

  bool contains(const std::vector<double>& x, double tol = kExactTol) const;

 private:
  int dim_;
  std::vector<Halfspace> hs_;
};

// All vertices of { x >= 0 : halfspace constraints }, by enumeration of basis
// subsets. Exact at desk scale (dimension <= ~10); duplicates merged.
std::vector<std::vector<double>> enumerate_vertices(const RatePolytope& p, double tol = 1e-7);

}  // namespace polyflow
