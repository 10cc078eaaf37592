#include "polyflow/oracle.hpp"

#include <cmath>
#include <utility>

namespace polyflow {

GroundSet::GroundSet(std::vector<std::string> elements, int cap)
    : elements_(std::move(elements)) {
  if (static_cast<int>(elements_.size()) > cap)
    throw SizeCapError("ground set of size " + std::to_string(elements_.size()) +
                       " exceeds cap " + std::to_string(cap));
  for (int i = 0; i < static_cast<int>(elements_.size()); ++i) {
    auto [it, fresh] = index_.emplace(elements_[static_cast<size_t>(i)], i);
    if (!fresh) throw InvalidInputError("duplicate ground element id: " + elements_[static_cast<size_t>(i)]);
  }
}

int GroundSet::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

Mask GroundSet::mask_of(const std::vector<std::string>& ids) const {
  Mask m = 0;
  for (const auto& id : ids) {
    int i = index_of(id);
    if (i < 0) throw InvalidInputError("element id not in ground set: " + id);
    m |= Mask(1) << i;
  }
  return m;
}

std::vector<std::string> GroundSet::ids_of(Mask m) const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i)
    if (m & (Mask(1) << i)) out.push_back(elements_[static_cast<size_t>(i)]);
  return out;
}

const char* family_name(OracleFamily f) {
  switch (f) {
    case OracleFamily::Modular: return "modular";
    case OracleFamily::CutErasure: return "cutErasure";
    case OracleFamily::GaussianMacLog: return "gaussianMacLog";
    case OracleFamily::RankGf: return "rankGf";
    case OracleFamily::UniformCap: return "uniformCap";
    case OracleFamily::Scaled: return "scaled";
    case OracleFamily::Truncation: return "truncation";
    case OracleFamily::Table: return "table";
  }
  return "?";
}

namespace {

void require_size(const GroundSet& g, size_t n, const char* what) {
  if (static_cast<size_t>(g.size()) != n)
    throw InvalidInputError(std::string(what) + ": expected " + std::to_string(g.size()) +
                            " per-element parameters, got " + std::to_string(n));
}

}  // namespace

SubmodularOracle SubmodularOracle::modular(GroundSet g, std::vector<double> weights) {
  require_size(g, weights.size(), "modular");
  for (double w : weights)
    if (!(w >= 0) || !std::isfinite(w)) throw InvalidInputError("modular: weights must be finite and >= 0");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::Modular;
  d->ground = std::move(g);
  d->weights = std::move(weights);
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::cut_erasure(GroundSet g, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidInputError("cutErasure: epsilon must lie in (0,1)");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::CutErasure;
  d->ground = std::move(g);
  d->epsilon = epsilon;
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::gaussian_mac_log(GroundSet g, std::vector<double> gains_sq,
                                                    double power, double log_base) {
  require_size(g, gains_sq.size(), "gaussianMacLog");
  for (double x : gains_sq)
    if (!(x >= 0) || !std::isfinite(x)) throw InvalidInputError("gaussianMacLog: gains must be finite and >= 0");
  if (!(power > 0) || !std::isfinite(power)) throw InvalidInputError("gaussianMacLog: power must be > 0");
  if (!(log_base > 1)) throw InvalidInputError("gaussianMacLog: log base must exceed 1");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::GaussianMacLog;
  d->ground = std::move(g);
  d->gains_sq = std::move(gains_sq);
  d->power = power;
  d->log_base = log_base;
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::rank_gf(GroundSet g, int q, std::vector<GfMatrix> mats) {
  require_size(g, mats.size(), "rankGf");
  if (!is_prime(q)) throw InvalidInputError("rankGf: q must be prime");
  int cols = mats.empty() ? 0 : mats[0].cols;
  for (auto& m : mats) {
    if (m.cols != cols) throw InvalidInputError("rankGf: matrices must share the column dimension");
    m = gf_reduce(std::move(m), q);
  }
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::RankGf;
  d->ground = std::move(g);
  d->q = q;
  d->mats = std::move(mats);
  // Rank evaluations run inside exhaustive pair checks, so tabulate the small
  // grounds once up front.
  if (d->ground.size() <= 10) {
    const Mask full = d->ground.full_mask();
    d->rank_cache.resize(static_cast<size_t>(full) + 1, 0.0);
    for (Mask s = 1; s <= full; ++s) {
      std::vector<const GfMatrix*> sel;
      for (int i = 0; i < d->ground.size(); ++i)
        if (s & (Mask(1) << i)) sel.push_back(&d->mats[static_cast<size_t>(i)]);
      d->rank_cache[s] = static_cast<double>(gf_stack_rank(sel, q));
    }
  }
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::uniform_cap(GroundSet g, double rate) {
  if (!(rate >= 0) || !std::isfinite(rate)) throw InvalidInputError("uniformCap: rate must be finite and >= 0");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::UniformCap;
  d->ground = std::move(g);
  d->rate = rate;
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::scaled(SubmodularOracle inner, double factor) {
  if (!(factor >= 0) || !std::isfinite(factor)) throw InvalidInputError("scaled: factor must be finite and >= 0");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::Scaled;
  d->ground = inner.ground();
  d->factor = factor;
  d->inner = inner.d_;
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::truncation(SubmodularOracle inner, double cap) {
  if (!(cap >= 0) || !std::isfinite(cap)) throw InvalidInputError("truncation: cap must be finite and >= 0");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::Truncation;
  d->ground = inner.ground();
  d->cap = cap;
  d->inner = inner.d_;
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::table(GroundSet g, std::vector<double> values) {
  const size_t want = size_t(1) << g.size();
  if (values.size() != want)
    throw InvalidInputError("table: expected " + std::to_string(want) + " values, got " +
                            std::to_string(values.size()));
  if (values[0] != 0.0) throw InvalidInputError("table: f(empty) must be 0");
  auto d = std::make_shared<Data>();
  d->family = OracleFamily::Table;
  d->ground = std::move(g);
  d->values = std::move(values);
  return SubmodularOracle(std::move(d));
}

SubmodularOracle SubmodularOracle::inner() const {
  if (!d_->inner) throw InvalidInputError("oracle family has no inner oracle");
  return SubmodularOracle(d_->inner);
}

double SubmodularOracle::eval_data(const Data& d, Mask s) {
  if (s == 0) return 0.0;
  switch (d.family) {
    case OracleFamily::Modular: {
      double sum = 0;
      for (int i = 0; i < d.ground.size(); ++i)
        if (s & (Mask(1) << i)) sum += d.weights[static_cast<size_t>(i)];
      return sum;
    }
    case OracleFamily::CutErasure:
      return 1.0 - std::pow(d.epsilon, popcount(s));
    case OracleFamily::GaussianMacLog: {
      double snr = 0;
      for (int i = 0; i < d.ground.size(); ++i)
        if (s & (Mask(1) << i)) snr += d.gains_sq[static_cast<size_t>(i)];
      return std::log1p(snr * d.power) / std::log(d.log_base);
    }
    case OracleFamily::RankGf: {
      double rank;
      if (!d.rank_cache.empty()) {
        rank = d.rank_cache[s];
      } else {
        std::vector<const GfMatrix*> sel;
        for (int i = 0; i < d.ground.size(); ++i)
          if (s & (Mask(1) << i)) sel.push_back(&d.mats[static_cast<size_t>(i)]);
        rank = static_cast<double>(gf_stack_rank(sel, d.q));
      }
      return rank * std::log2(static_cast<double>(d.q));
    }
    case OracleFamily::UniformCap:
      return d.rate;
    case OracleFamily::Scaled:
      return d.factor * eval_data(*d.inner, s);
    case OracleFamily::Truncation:
      return std::min(d.cap, eval_data(*d.inner, s));
    case OracleFamily::Table:
      return d.values[s];
  }
  return 0.0;
}

double SubmodularOracle::eval(Mask s) const {
  if (s > ground().full_mask()) throw InvalidInputError("subset mask outside the ground set");
  return eval_data(*d_, s);
}

}  // namespace polyflow
