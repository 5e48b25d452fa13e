#pragma once

#include <cstdint>

#include "woodshole/projgeom.hpp"
#include "woodshole/tracker_config.hpp"
#include "woodshole/vector_field.hpp"

namespace woodshole {

// Degree-d endomorphism of P^n with independent standard complex Gaussian
// coefficients on every monomial.
ProjEndo random_endomorphism(int n, int d, std::uint64_t seed);

struct RandomField {
  PlaneVectorField field;
  int rejections = 0;
};

inline constexpr int kMaxFieldRejections = 100;

// Degree-d field with Gaussian coefficients. Draws that are dicritic, have a
// zero with |det Dv| <= 1e-6, or repeated singularities at infinity are
// resampled; NumericalError after kMaxFieldRejections consecutive rejections.
RandomField random_vector_field(int d, std::uint64_t seed, const PathTrackerConfig& cfg = {});

}  // namespace woodshole
