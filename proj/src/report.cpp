#include "woodshole/report.hpp"

#include <algorithm>
#include <cmath>

namespace woodshole {

VerificationEntry make_entry(std::string relation, std::string variant, std::vector<PointTerm> terms,
                             Complex rhs, double tol) {
  VerificationEntry e;
  e.relation = std::move(relation);
  e.variant = std::move(variant);
  e.rhs = rhs;
  Complex sum = 0.0;
  for (const PointTerm& t : terms) sum += t.value;
  e.lhs = sum;
  e.terms = std::move(terms);
  e.residual = std::abs(e.lhs - e.rhs);
  e.tolerance = tol * std::max(1.0, std::abs(rhs));
  e.pass = e.residual <= e.tolerance;
  return e;
}

bool VerificationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const VerificationEntry& e) { return e.pass; });
}

}  // namespace woodshole
