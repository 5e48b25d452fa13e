#include "woodshole/vector_field.hpp"

#include <algorithm>

#include "woodshole/error.hpp"

namespace woodshole {

namespace {

// Relative cutoff for the symbolic dicriticity test.
constexpr double kDicriticCutoff = 1e-12;

}  // namespace

PlaneVectorField::PlaneVectorField(MultiPoly p, MultiPoly q)
    : p_(std::move(p)),
      q_(std::move(q)),
      degree_(std::max(p_.total_degree(), q_.total_degree())),
      top_p_(2),
      top_q_(2),
      dicritic_(false) {
  if (p_.num_vars() != 2 || q_.num_vars() != 2) {
    throw InputError("vector field components must be polynomials in x, y");
  }
  if (degree_ == MultiPoly::kZeroDegree) return;
  top_p_ = p_.homogeneous_part(degree_);
  top_q_ = q_.homogeneous_part(degree_);
  const MultiPoly x = MultiPoly::variable(2, 0);
  const MultiPoly y = MultiPoly::variable(2, 1);
  const MultiPoly radial_defect = x * top_q_ - y * top_p_;
  const double scale = std::max(top_p_.coefficient_scale(), top_q_.coefficient_scale());
  dicritic_ = radial_defect.coefficient_scale() <= kDicriticCutoff * scale;
}

PlaneVectorField swap_axes(const PlaneVectorField& v) {
  return PlaneVectorField(swap_variables(v.Q(), 0, 1), swap_variables(v.P(), 0, 1));
}

InfinityChartParts infinity_chart_parts(const PlaneVectorField& v) {
  const int d = std::max(v.degree(), 0);
  // x^a y^b -> u^(d-a-b) w^b
  auto transform = [d](const MultiPoly& f) {
    std::vector<std::pair<Exponent, Complex>> out;
    for (const auto& [e, c] : f.terms()) {
      out.push_back({{d - e[0] - e[1], e[1]}, c});
    }
    return MultiPoly(2, out);
  };
  return {transform(v.P()), transform(v.Q())};
}

}  // namespace woodshole
