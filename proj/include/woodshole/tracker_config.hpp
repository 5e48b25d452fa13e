#pragma once

#include <cstddef>
#include <cstdint>

#include "woodshole/polyalg.hpp"

namespace woodshole {

struct PathTrackerConfig {
  double initial_step = 0.05;
  double min_step = 1e-7;
  double max_step = 0.1;
  double corrector_tol = 1e-10;
  int corrector_max_iters = 3;
  double step_shrink = 0.5;
  double step_grow = 1.25;
  int grow_after = 5;
  double divergence_norm = 1e8;
  // Drives gamma and the start-system constants.
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  // Upper bound on the Bezout number of a single solve.
  std::size_t max_paths = 100000;

  // Throws InputError when the step parameters are inconsistent.
  void validate() const;

  PathTrackerConfig with_seed(std::uint64_t s) const {
    PathTrackerConfig c = *this;
    c.seed = s;
    return c;
  }
};

// Unit-modulus constant used in the gamma trick for a given seed.
Complex gamma_for_seed(std::uint64_t seed);

}  // namespace woodshole
