#pragma once

#include <cstdint>
#include <random>

namespace polyflow {

// Thin wrapper over mt19937_64 producing portable draws. The standard
// distributions are implementation-defined, which would break byte-identical
// reports across toolchains, so the few draws we need are spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  int below(int n) {
    return n <= 1 ? 0 : static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
  }

  Rng fork(std::uint64_t stream) { return Rng(gen_() ^ (stream * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace polyflow
