#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "woodshole/linalg.hpp"
#include "woodshole/polyalg.hpp"
#include "woodshole/projgeom.hpp"
#include "woodshole/report.hpp"
#include "woodshole/tracker_config.hpp"
#include "woodshole/vector_field.hpp"

namespace woodshole {

class Rng;

// f_v = [x0^d : P~ + x0^(d-1) x1 : Q~ + x0^(d-1) x2], with P~, Q~ the
// homogenizations in x0. Throws HypothesisError when f_v has base points.
ProjEndo build_fv(const PlaneVectorField& v, const PathTrackerConfig& cfg = {});

struct FxiMap {
  ProjEndo map;
  // x0 divides the first component, so the line at infinity is totally invariant.
  bool line_invariant = false;
};

// f_xi = [P0 : P1 : P2] for a homogeneous field on C^3.
FxiMap build_fxi(const MultiPoly& p0, const MultiPoly& p1, const MultiPoly& p2,
                 const PathTrackerConfig& cfg = {});

// Adds g times the radial field: F_i + g x_i. The induced foliation does not
// change. g must be homogeneous of degree d - 1 (or zero).
ProjEndo radial_modify(const ProjEndo& f, const MultiPoly& g, const PathTrackerConfig& cfg = {});

// Homogeneous form of degree d - 1 in x0, x1, x2 with Gaussian coefficients.
MultiPoly random_radial_form(int d, Rng& rng);

struct SingularityRecord {
  enum class Kind { kAffine, kInfinity };
  Kind kind = Kind::kAffine;
  ProjPoint point = ProjPoint::normalize(CVector::Unit(3, 0));
  // Affine singularities: (x, y). Empty for points on the line at infinity.
  CVector affine;
  // Points at infinity: homogeneous index of the chart used (1 for x1 != 0,
  // 2 for x2 != 0) and the chart coordinate along the line.
  int chart = 0;
  Complex w;
  // Dv for affine points; for points at infinity, the linearization of the
  // chart generator in (u, w) coordinates, lower triangular.
  CMatrix linearization;
  Complex lambda_tangent;
  Complex lambda_normal;
  Complex det;
  Complex tr;
  Complex bb;
  Complex cs;
};

// Zeros of v with their linearizations and Baum-Bott indices.
std::vector<SingularityRecord> affine_singularities(const PlaneVectorField& v,
                                                    const PathTrackerConfig& cfg = {});

// Singularities of the induced foliation on the line at infinity.
std::vector<SingularityRecord> infinity_singularities(const PlaneVectorField& v);

// Euler-Jacobi: sum of 1/det Dv over the d^2 zeros vanishes (d >= 2).
VerificationEntry verify_ej1(const PlaneVectorField& v, const PathTrackerConfig& cfg, double tol);
// Euler-Jacobi: sum of tr Dv / det Dv over the d^2 zeros vanishes (d >= 2).
VerificationEntry verify_ej2(const PlaneVectorField& v, const PathTrackerConfig& cfg, double tol);
// Sum of Baum-Bott indices over all d^2 + d + 1 singularities is (d + 2)^2.
VerificationEntry verify_bb(const PlaneVectorField& v, const PathTrackerConfig& cfg, double tol);
// Sum of Camacho-Sad indices along the line at infinity is 1.
VerificationEntry verify_cs(const PlaneVectorField& v, double tol);

struct LineFixedPoint {
  ProjPoint point;  // on the line at infinity in P^2
  Complex mu_tangent;
  Complex mu_normal;
};

// Fixed points of f restricted to the line x0 = 0, with the multipliers of
// Df along and across the line.
std::vector<LineFixedPoint> line_fixed_points(const ProjEndo& f, const PathTrackerConfig& cfg = {});

// Holomorphic Lefschetz on the line (sum 1/(1 - mu_t) = 1) and Woods Hole
// with the conormal sheaf (sum mu_n/(1 - mu_t) = 0) for f = f_v + g * radial.
// A random g of degree d - 1 is drawn from cfg.seed when none is given.
std::pair<VerificationEntry, VerificationEntry> verify_cs_woodshole(
    const PlaneVectorField& v, const std::optional<MultiPoly>& g, const PathTrackerConfig& cfg,
    double tol);

// max over affine zeros of |Dv(p) - (Df_v(p) - I)| entrywise.
double check_DvDf(const PlaneVectorField& v, const PathTrackerConfig& cfg = {});

}  // namespace woodshole
