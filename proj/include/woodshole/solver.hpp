#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "woodshole/homotopy.hpp"
#include "woodshole/linalg.hpp"
#include "woodshole/polyalg.hpp"
#include "woodshole/projgeom.hpp"
#include "woodshole/tracker_config.hpp"
#include "woodshole/vector_field.hpp"

namespace woodshole {

enum class Execution { kSerial, kParallel };

struct AffineSolutionSet {
  // Finite nonsingular solutions in canonical order.
  std::vector<CVector> solutions;
  int paths_tracked = 0;
  int paths_diverged = 0;
  // Paths that neither converged nor diverged, plus endpoints that landed on
  // an already-found solution (path jumping).
  int failures = 0;
  // Paths ending on a singular root (degenerate input).
  int singular_endpoints = 0;
  // Seed of the attempt that produced this set.
  std::uint64_t seed = 0;
  int attempts = 0;
};

// Total-degree homotopy solve of a square system. Retries once with a fresh
// gamma when any path fails; throws NumericalError if the retry fails too.
AffineSolutionSet solve_square(std::span<const MultiPoly> system, const PathTrackerConfig& cfg,
                               Execution exec = Execution::kParallel);

// Single attempt, no retry, never throws on path failures.
AffineSolutionSet solve_square_once(std::span<const MultiPoly> system,
                                    const PathTrackerConfig& cfg,
                                    Execution exec = Execution::kParallel);

// Lexicographic by (real, imaginary) parts rounded to 1e-9.
bool canonical_less(const CVector& a, const CVector& b);

// Fixed points of f, merged across charts, refined in the best chart.
// Throws HypothesisError on base points, NumericalError when all points are
// transversal but their count differs from 1 + d + ... + d^n.
std::vector<FixedPointRecord> fixed_points(const ProjEndo& f, const PathTrackerConfig& cfg = {});

// Fixed-point system of f in one chart: F_j - x_j F_chart, j != chart.
std::vector<MultiPoly> fixed_point_system(const ProjEndo& f, int chart);

struct VfZero {
  CVector point;
  CMatrix dv;
  Complex det;
};

struct VfZeroSet {
  std::vector<VfZero> zeros;
  int expected = 0;  // d^2
  // Fewer than d^2 finite simple zeros were found.
  bool degenerate = false;
  std::string diagnostic;
};

VfZeroSet vf_zeros(const PlaneVectorField& v, const PathTrackerConfig& cfg = {});

struct UnivariateRoots {
  std::vector<Complex> roots;
  // Two roots closer than 1e-8.
  bool repeated = false;
};

// Aberth iteration followed by Newton polishing.
UnivariateRoots univariate_roots(const MultiPoly& p);

}  // namespace woodshole
