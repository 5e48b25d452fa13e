#pragma once

#include <optional>
#include <span>
#include <vector>

#include "woodshole/linalg.hpp"
#include "woodshole/polyalg.hpp"
#include "woodshole/tracker_config.hpp"

namespace woodshole {

// Largest projective dimension handled.
inline constexpr int kMaxProjectiveDim = 3;

// Point of P^n with unit-norm coordinates and canonical phase: the first
// coordinate of maximal modulus is real and non-negative.
class ProjPoint {
 public:
  static ProjPoint normalize(const CVector& raw);
  static ProjPoint normalize(std::span<const Complex> raw);

  const CVector& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  // Index of the coordinate of maximal modulus; the best-conditioned chart.
  int best_chart() const;
  // Affine coordinates in the given chart (chart coordinate set to 1 and removed).
  CVector affine(int chart) const;

 private:
  explicit ProjPoint(CVector coords) : coords_(std::move(coords)) {}
  CVector coords_;
};

inline ProjPoint normalize(const CVector& raw) { return ProjPoint::normalize(raw); }

// Sine of the Fubini-Study angle between two points.
double proj_distance(const ProjPoint& p, const ProjPoint& q);

// Lifts an affine point of chart `chart` to P^n.
ProjPoint lift_from_chart(const CVector& affine, int chart);

// Endomorphism of P^n given by n+1 homogeneous polynomials of common degree.
class ProjEndo {
 public:
  explicit ProjEndo(std::vector<MultiPoly> components);

  int dim() const { return static_cast<int>(components_.size()) - 1; }
  int degree() const { return degree_; }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& component(int i) const { return components_.at(i); }
  // partial(component(i), j)
  const MultiPoly& component_partial(int i, int j) const;
  double coefficient_scale() const { return scale_; }

  // Unset until check_morphism has been run on this value.
  std::optional<bool> morphism() const { return morphism_; }
  ProjEndo with_morphism_flag(bool is_morphism) const;

  // Component values at a homogeneous coordinate vector.
  CVector evaluate(const CVector& x) const;

  friend bool operator==(const ProjEndo& a, const ProjEndo& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<MultiPoly> components_;
  std::vector<MultiPoly> partials_;
  int degree_ = 0;
  double scale_ = 0.0;
  std::optional<bool> morphism_;
};

ProjPoint apply(const ProjEndo& f, const ProjPoint& p);

// Jacobian of the affine map g_j = F_j / F_chart (j != chart) in chart
// coordinates at p. Requires |p_chart| > 0.1 and F_chart(p) bounded away from 0.
CMatrix affine_jacobian(const ProjEndo& f, const ProjPoint& p, int chart);

// Same map, evaluated at an affine point of the chart without the
// chart-conditioning requirement.
CMatrix affine_jacobian_at(const ProjEndo& f, const CVector& affine, int chart);

// True iff the components have no common zero in P^n. Solves n random
// linear combinations of the components in every chart and inspects the
// remaining values at every endpoint.
bool check_morphism(const ProjEndo& f, const PathTrackerConfig& cfg = {});

struct FixedPointRecord {
  ProjPoint point;
  int chart = 0;
  CMatrix jacobian;
  Complex det_i_minus_j;
  double newton_residual = 0.0;
  bool transversal = false;
};

// |det(I - J)| above this marks a transversal fixed point.
inline constexpr double kTransversalityThreshold = 1e-8;

}  // namespace woodshole
