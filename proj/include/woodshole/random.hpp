#pragma once

#include <cstdint>
#include <random>

#include "woodshole/polyalg.hpp"

namespace woodshole {

// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Seeded source of the random quantities used across the library. Built on
// mt19937_64 with explicit transforms so output is reproducible across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double gaussian();
  // Standard complex Gaussian: E|z|^2 = 1.
  Complex complex_gaussian();
  Complex unit_complex();
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace woodshole
