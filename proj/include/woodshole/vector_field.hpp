#pragma once

#include "woodshole/polyalg.hpp"

namespace woodshole {

// Polynomial vector field P d/dx + Q d/dy on C^2.
class PlaneVectorField {
 public:
  PlaneVectorField(MultiPoly p, MultiPoly q);

  const MultiPoly& P() const { return p_; }
  const MultiPoly& Q() const { return q_; }
  // max(deg P, deg Q); MultiPoly::kZeroDegree when both vanish.
  int degree() const { return degree_; }
  // Homogeneous degree-d parts (zero if a component has lower degree).
  const MultiPoly& top_p() const { return top_p_; }
  const MultiPoly& top_q() const { return top_q_; }
  // x*q_d - y*p_d vanishes identically: the line at infinity is not invariant.
  bool is_dicritic() const { return dicritic_; }

 private:
  MultiPoly p_, q_;
  int degree_;
  MultiPoly top_p_, top_q_;
  bool dicritic_;
};

// The same field written in swapped coordinates: (Q(y,x), P(y,x)).
PlaneVectorField swap_axes(const PlaneVectorField& v);

struct InfinityChartParts {
  MultiPoly pstar;  // u^d P(1/u, w/u)
  MultiPoly qstar;  // u^d Q(1/u, w/u)
};

// Chart x1 != 0 with coordinates u = x0/x1, w = x2/x1. Near the line at
// infinity the foliation is generated by (-u*Pstar, Qstar - w*Pstar).
InfinityChartParts infinity_chart_parts(const PlaneVectorField& v);

}  // namespace woodshole
