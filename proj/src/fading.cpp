#include "polyflow/fading.hpp"

#include <cmath>
#include <map>

namespace polyflow {

namespace {

GaussLaguerreRule compute_gauss_laguerre(int n) {
  GaussLaguerreRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  double z = 0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[static_cast<size_t>(i - 2)]);
    }
    double pp = 0, p2 = 0;
    for (int it = 0; it < 64; ++it) {
      double p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
      }
      pp = n * (p1 - p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[static_cast<size_t>(i)] = z;
    rule.weights[static_cast<size_t>(i)] = -1.0 / (pp * n * p2);
  }
  return rule;
}

// exp(Euler-Mascheroni gamma): the exact value of exp(-E ln X) for X~Exp(1).
constexpr double kExpGamma = 1.7810724179901979852;

}  // namespace

const GaussLaguerreRule& gauss_laguerre_64() {
  static const GaussLaguerreRule rule = compute_gauss_laguerre(64);
  return rule;
}

FadingModel FadingModel::discrete_symmetric(std::vector<FadingPoint> points) {
  if (points.empty()) throw InvalidInputError("fading: empty support");
  double total = 0;
  std::map<double, double> prob_of;
  for (const auto& p : points) {
    if (!(p.prob > 0)) throw InvalidInputError("fading: probabilities must be positive");
    if (std::abs(p.value) < 1e-300)
      throw InvalidInputError("fading: zero coefficient makes a = exp(-E ln |h|^2) infinite");
    total += p.prob;
    prob_of[p.value] += p.prob;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInputError("fading: probabilities must sum to 1");
  for (const auto& [v, pr] : prob_of) {
    auto it = prob_of.find(-v);
    if (it == prob_of.end() || std::abs(it->second - pr) > 1e-12)
      throw InvalidInputError("fading: distribution must be symmetric about 0");
  }

  FadingModel m;
  m.points_ = std::move(points);
  double mean_log = 0;
  for (const auto& p : m.points_) mean_log += p.prob * std::log(p.value * p.value);
  m.a_ = std::exp(-mean_log);
  return m;
}

FadingModel FadingModel::rayleigh_unit_variance() {
  FadingModel m;
  m.rayleigh_ = true;
  m.a_ = kExpGamma;
  return m;
}

double FadingModel::ergodic_capacity(double power) const {
  if (!(power > 0)) throw InvalidInputError("ergodic_capacity: power must be > 0");
  if (rayleigh_) {
    const auto& rule = gauss_laguerre_64();
    double c = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      c += rule.weights[i] * 0.5 * std::log2(1.0 + rule.nodes[i] * power);
    return c;
  }
  double c = 0;
  for (const auto& p : points_) c += p.prob * 0.5 * std::log2(1.0 + p.value * p.value * power);
  return c;
}

}  // namespace polyflow
