#pragma once

#include <vector>

#include "polyflow/errors.hpp"

namespace polyflow {

struct FadingPoint {
  double value = 0;  // coefficient h
  double prob = 0;
};

// Symmetric fading distribution of the channel coefficient h, with the
// derived constant a = exp(-E[ln |h|^2]) and the ergodic capacity evaluator
// C(P) = E[1/2 log2(1 + |h|^2 P)]. Regions must be reproducible bit-for-bit,
// so Rayleigh uses a fixed 64-point Gauss-Laguerre rule, never sampling.
class FadingModel {
 public:
  static FadingModel discrete_symmetric(std::vector<FadingPoint> points);
  // |h|^2 ~ Exp(1) (unit-variance complex Gaussian h).
  static FadingModel rayleigh_unit_variance();

  bool is_rayleigh() const { return rayleigh_; }
  const std::vector<FadingPoint>& points() const { return points_; }

  double a_constant() const { return a_; }
  double b_constant() const { return a_ / 2.0; }
  double ergodic_capacity(double power) const;

 private:
  FadingModel() = default;
  bool rayleigh_ = false;
  std::vector<FadingPoint> points_;
  double a_ = 1.0;
};

// Nodes and weights of the n-point Gauss-Laguerre rule (weight e^-x on
// [0, inf)), computed once by Newton iteration on the recurrence.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLaguerreRule& gauss_laguerre_64();

}  // namespace polyflow
