#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polyflow/config.hpp"
#include "polyflow/errors.hpp"
#include "polyflow/gf.hpp"

namespace polyflow {

// Subsets of a ground set are bitmasks over the ground ordering.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

// Ordered set of opaque element ids (edge ids in practice). The ordering is
// fixed at construction and defines the bitmask semantics of every subset.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> elements, int cap = kDefaultGroundCap);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element(int i) const { return elements_[static_cast<size_t>(i)]; }

  // -1 when the id is not a member.
  int index_of(const std::string& id) const;

  Mask full_mask() const { return size() == 0 ? 0 : (Mask(1) << size()) - 1; }

  // Throws InvalidInputError on unknown ids.
  Mask mask_of(const std::vector<std::string>& ids) const;

  std::vector<std::string> ids_of(Mask m) const;

  bool operator==(const GroundSet& o) const { return elements_ == o.elements_; }

 private:
  std::vector<std::string> elements_;
  std::map<std::string, int> index_;
};

enum class OracleFamily {
  Modular,
  CutErasure,
  GaussianMacLog,
  RankGf,
  UniformCap,
  Scaled,
  Truncation,
  Table,
};

const char* family_name(OracleFamily f);

// A monotone submodular set function f with f(empty) = 0, given by a named
// family plus parameters. Immutable after construction; eval is pure, so
// concurrent use is safe.
class SubmodularOracle {
 public:
  static SubmodularOracle modular(GroundSet g, std::vector<double> weights);
  static SubmodularOracle cut_erasure(GroundSet g, double epsilon);
  static SubmodularOracle gaussian_mac_log(GroundSet g, std::vector<double> gains_sq,
                                           double power, double log_base = 2.0);
  static SubmodularOracle rank_gf(GroundSet g, int q, std::vector<GfMatrix> mats);
  static SubmodularOracle uniform_cap(GroundSet g, double rate);
  static SubmodularOracle scaled(SubmodularOracle inner, double factor);
  static SubmodularOracle truncation(SubmodularOracle inner, double cap);
  // Explicit 2^n table, indexed by mask. Validation is opt-in: test fixtures
  // deliberately include invalid tables.
  static SubmodularOracle table(GroundSet g, std::vector<double> values);

  double eval(Mask s) const;
  double eval_ids(const std::vector<std::string>& ids) const { return eval(ground().mask_of(ids)); }

  const GroundSet& ground() const { return d_->ground; }
  int size() const { return d_->ground.size(); }
  OracleFamily family() const { return d_->family; }

  // Parameter access (for serialization and reporting). Only the fields of
  // the active family are meaningful.
  const std::vector<double>& weights() const { return d_->weights; }
  double epsilon() const { return d_->epsilon; }
  const std::vector<double>& gains_sq() const { return d_->gains_sq; }
  double power() const { return d_->power; }
  double log_base() const { return d_->log_base; }
  int q() const { return d_->q; }
  const std::vector<GfMatrix>& matrices() const { return d_->mats; }
  double rate() const { return d_->rate; }
  double factor() const { return d_->factor; }
  double cap() const { return d_->cap; }
  const std::vector<double>& table_values() const { return d_->values; }
  bool has_inner() const { return d_->inner != nullptr; }
  SubmodularOracle inner() const;

 private:
  struct Data {
    OracleFamily family = OracleFamily::Modular;
    GroundSet ground;
    std::vector<double> weights;
    double epsilon = 0;
    std::vector<double> gains_sq;
    double power = 0;
    double log_base = 2.0;
    int q = 0;
    std::vector<GfMatrix> mats;
    std::vector<double> rank_cache;  // per-mask ranks when the ground is small
    double rate = 0;
    double factor = 1;
    double cap = 0;
    std::vector<double> values;
    std::shared_ptr<const Data> inner;
  };

  explicit SubmodularOracle(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static double eval_data(const Data& d, Mask s);

  std::shared_ptr<const Data> d_;
};

}  // namespace polyflow
