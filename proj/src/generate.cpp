#include "woodshole/generate.hpp"

#include <cmath>
#include <string>

#include "woodshole/error.hpp"
#include "woodshole/foliation.hpp"
#include "woodshole/random.hpp"
#include "woodshole/solver.hpp"

namespace woodshole {

namespace {

MultiPoly gaussian_form(int vars, int d, Rng& rng, bool dense_below) {
  std::vector<std::pair<Exponent, Complex>> terms;
  for (int k = dense_below ? 0 : d; k <= d; ++k) {
    for (const Exponent& e : monomials_of_degree(vars, k)) terms.emplace_back(e, rng.complex_gaussian());
  }
  return MultiPoly(vars, terms);
}

bool acceptable(const PlaneVectorField& v, const PathTrackerConfig& cfg) {
  if (v.is_dicritic()) return false;
  try {
    infinity_singularities(v);
    const VfZeroSet zeros = vf_zeros(v, cfg);
    if (zeros.degenerate) return false;
    for (const VfZero& z : zeros.zeros) {
      if (!(std::abs(z.det) > 1e-6)) return false;
    }
  } catch (const HypothesisError&) {
    return false;
  } catch (const NumericalError&) {
    return false;
  }
  return true;
}

}  // namespace

ProjEndo random_endomorphism(int n, int d, std::uint64_t seed) {
  if (n < 1 || n > kMaxProjectiveDim) throw InputError("n must be between 1 and 3");
  if (d < 1 || d > 3) throw InputError("d must be between 1 and 3");
  Rng rng(seed);
  std::vector<MultiPoly> comps;
  for (int i = 0; i <= n; ++i) comps.push_back(gaussian_form(n + 1, d, rng, false));
  return ProjEndo(std::move(comps));
}

RandomField random_vector_field(int d, std::uint64_t seed, const PathTrackerConfig& cfg) {
  if (d < 1 || d > 3) throw InputError("d must be between 1 and 3");
  Rng rng(seed);
  for (int rejections = 0; rejections < kMaxFieldRejections; ++rejections) {
    PlaneVectorField v(gaussian_form(2, d, rng, true), gaussian_form(2, d, rng, true));
    if (acceptable(v, cfg)) return {std::move(v), rejections};
  }
  throw NumericalError("random field rejected " + std::to_string(kMaxFieldRejections) + " consecutive draws");
}

}  // namespace woodshole
