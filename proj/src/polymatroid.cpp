#include "polyflow/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyflow {

namespace {

void require_property_cap(const SubmodularOracle& f, int cap, const char* what) {
  if (f.size() > cap)
    throw SizeCapError(std::string(what) + ": ground set of size " + std::to_string(f.size()) +
                       " exceeds exhaustive-check cap " + std::to_string(cap));
}

std::vector<double> tabulate(const SubmodularOracle& f) {
  const Mask full = f.ground().full_mask();
  std::vector<double> t(static_cast<size_t>(full) + 1);
  for (Mask s = 0; s <= full; ++s) t[s] = f.eval(s);
  return t;
}

}  // namespace

bool is_submodular(const SubmodularOracle& f, double tol, int cap) {
  require_property_cap(f, cap, "is_submodular");
  const auto t = tabulate(f);
  const Mask full = f.ground().full_mask();
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = a; b <= full; ++b)
      if (t[a] + t[b] < t[a | b] + t[a & b] - tol) return false;
  return true;
}

bool is_monotone(const SubmodularOracle& f, double tol, int cap) {
  require_property_cap(f, cap, "is_monotone");
  const auto t = tabulate(f);
  const Mask full = f.ground().full_mask();
  if (std::abs(t[0]) > tol) return false;
  for (Mask s = 0; s <= full; ++s)
    for (int i = 0; i < f.size(); ++i) {
      const Mask with = s | (Mask(1) << i);
      if (with != s && t[s] > t[with] + tol) return false;
    }
  return true;
}

GreedyResult greedy_linear_opt(const SubmodularOracle& f, const std::vector<double>& weights) {
  if (static_cast<int>(weights.size()) != f.size())
    throw InvalidInputError("greedy_linear_opt: weight vector size mismatch");
  for (double w : weights)
    if (!std::isfinite(w)) throw InvalidInputError("greedy_linear_opt: weights must be finite");

  std::vector<int> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[static_cast<size_t>(a)] > weights[static_cast<size_t>(b)]; });

  GreedyResult res;
  res.x.assign(weights.size(), 0.0);
  Mask prefix = 0;
  double prev = 0.0;
  for (int i : order) {
    if (weights[static_cast<size_t>(i)] <= 0) break;
    prefix |= Mask(1) << i;
    const double cur = f.eval(prefix);
    res.x[static_cast<size_t>(i)] = cur - prev;
    res.value += weights[static_cast<size_t>(i)] * (cur - prev);
    prev = cur;
  }
  return res;
}

double harmonic_number(int d) {
  double h = 0;
  for (int i = 1; i <= d; ++i) h += 1.0 / i;
  return h;
}

double harmonic_gap_factor(int d, double epsilon) {
  if (d < 1) throw InvalidInputError("harmonic_gap_factor: d must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidInputError("harmonic_gap_factor: epsilon must lie in (0,1)");
  double a = 0;
  double pow_prev = 1.0;  // eps^{i-1}
  for (int i = 1; i <= d; ++i) {
    const double pow_cur = pow_prev * epsilon;
    a += (pow_prev - pow_cur) / (1.0 - pow_cur);
    pow_prev = pow_cur;
  }
  return a;
}

MembershipResult membership(const std::vector<double>& x, const SubmodularOracle& f,
                            double tol, int cap) {
  if (static_cast<int>(x.size()) != f.size())
    throw InvalidInputError("membership: point dimension mismatch");
  if (f.size() > cap)
    throw SizeCapError("membership: ground set exceeds enumeration cap " + std::to_string(cap));

  MembershipResult res;
  for (int i = 0; i < f.size(); ++i)
    if (x[static_cast<size_t>(i)] < -tol) {
      res.inside = false;
      res.violating = Mask(1) << i;
      res.violation = -x[static_cast<size_t>(i)];
      return res;
    }

  const Mask full = f.ground().full_mask();
  double worst = tol;
  for (Mask s = 1; s <= full; ++s) {
    double load = 0;
    for (int i = 0; i < f.size(); ++i)
      if (s & (Mask(1) << i)) load += x[static_cast<size_t>(i)];
    const double gap = load - f.eval(s);
    if (gap > worst) {
      worst = gap;
      res.inside = false;
      res.violating = s;
      res.violation = gap;
    }
  }
  return res;
}

double lovasz_extension(const SubmodularOracle& f, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != f.size())
    throw InvalidInputError("lovasz_extension: point dimension mismatch");
  for (double v : x)
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      throw InvalidInputError("lovasz_extension: components must lie in [0,1]");

  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[static_cast<size_t>(a)] > x[static_cast<size_t>(b)]; });

  double total = 0;
  Mask prefix = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    prefix |= Mask(1) << order[k];
    const double cur = x[static_cast<size_t>(order[k])];
    const double next = (k + 1 < order.size()) ? x[static_cast<size_t>(order[k + 1])] : 0.0;
    if (cur - next != 0.0) total += (cur - next) * f.eval(prefix);
  }
  return total;
}

PermutationPolytope::PermutationPolytope(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw InvalidInputError("permutation polytope needs dimension >= 1");
  for (double v : w_)
    if (!(v > 0)) throw InvalidInputError("permutation polytope coefficients must be positive");
}

PermutationPolytope PermutationPolytope::erasure_feedback(int d, double epsilon) {
  if (d < 1) throw InvalidInputError("erasure_feedback: d must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidInputError("erasure_feedback: epsilon must lie in (0,1)");
  std::vector<double> w(static_cast<size_t>(d));
  double p = 1.0;
  for (int i = 1; i <= d; ++i) {
    p *= epsilon;
    w[static_cast<size_t>(i - 1)] = 1.0 - p;  // strictly increasing in i
  }
  return PermutationPolytope(std::move(w));
}

bool PermutationPolytope::contains(const std::vector<double>& x, double tol, int cap) const {
  if (static_cast<int>(x.size()) != dimension())
    throw InvalidInputError("permutation membership: dimension mismatch");
  if (dimension() > cap)
    throw SizeCapError("permutation membership: dimension exceeds cap " + std::to_string(cap));
  for (double v : x)
    if (v < -tol) return false;

  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double lhs = 0;
    for (size_t i = 0; i < x.size(); ++i) lhs += x[static_cast<size_t>(perm[i])] / w_[i];
    if (lhs > 1.0 + tol) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

RatePolytope::RatePolytope(int dimension, std::vector<Halfspace> halfspaces)
    : dim_(dimension), hs_(std::move(halfspaces)) {
  for (const auto& h : hs_) {
    if (static_cast<int>(h.coeffs.size()) != dim_)
      throw InvalidInputError("rate polytope: halfspace dimension mismatch");
    if (h.bound < 0) throw InvalidInputError("rate polytope: bounds must be >= 0");
    for (double c : h.coeffs)
      if (c < 0) throw InvalidInputError("rate polytope: coefficients must be >= 0");
  }
}

bool RatePolytope::contains(const std::vector<double>& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_)
    throw InvalidInputError("rate polytope: point dimension mismatch");
  for (double v : x)
    if (v < -tol) return false;
  for (const auto& h : hs_) {
    double lhs = 0;
    for (int i = 0; i < dim_; ++i) lhs += h.coeffs[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    if (lhs > h.bound + tol) return false;
  }
  return true;
}

namespace {

// Solve the d x d system by Gaussian elimination; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::abs(a[static_cast<size_t>(pivot)][static_cast<size_t>(col)]))
        pivot = r;
    if (std::abs(a[static_cast<size_t>(pivot)][static_cast<size_t>(col)]) < 1e-11) return false;
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
    std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                            a[static_cast<size_t>(col)][static_cast<size_t>(col)];
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c)
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            factor * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
      b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(col)];
    }
  }
  out.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = b[static_cast<size_t>(i)] / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
  return true;
}

}  // namespace

std::vector<std::vector<double>> enumerate_vertices(const RatePolytope& p, double tol) {
  const int d = p.dimension();
  // Row list: the halfspaces followed by the nonnegativity constraints -x_i <= 0.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& h : p.halfspaces()) {
    rows.push_back(h.coeffs);
    rhs.push_back(h.bound);
  }
  for (int i = 0; i < d; ++i) {
    std::vector<double> r(static_cast<size_t>(d), 0.0);
    r[static_cast<size_t>(i)] = -1.0;
    rows.push_back(std::move(r));
    rhs.push_back(0.0);
  }
  const int m = static_cast<int>(rows.size());
  if (m < d) return {};

  std::vector<std::vector<double>> vertices;
  std::vector<int> pick(static_cast<size_t>(d));
  std::iota(pick.begin(), pick.end(), 0);

  auto try_basis = [&](const std::vector<int>& idx) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i : idx) {
      a.push_back(rows[static_cast<size_t>(i)]);
      b.push_back(rhs[static_cast<size_t>(i)]);
    }
    std::vector<double> x;
    if (!solve_square(std::move(a), std::move(b), x)) return;
    for (int r = 0; r < m; ++r) {
      double lhs = 0;
      for (int c = 0; c < d; ++c)
        lhs += rows[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
      if (lhs > rhs[static_cast<size_t>(r)] + tol) return;
    }
    for (const auto& v : vertices) {
      double dist = 0;
      for (int c = 0; c < d; ++c) dist = std::max(dist, std::abs(v[static_cast<size_t>(c)] - x[static_cast<size_t>(c)]));
      if (dist <= tol) return;  // duplicate
    }
    vertices.push_back(std::move(x));
  };

  // Enumerate all d-subsets of rows.
  while (true) {
    try_basis(pick);
    int i = d - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == m - d + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < d; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }

  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

}  // namespace polyflow
