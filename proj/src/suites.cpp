#include "woodshole/suites.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "woodshole/error.hpp"
#include "woodshole/foliation.hpp"
#include "woodshole/io.hpp"
#include "woodshole/solver.hpp"

namespace woodshole {

namespace {

std::vector<Complex> coords_of(const ProjPoint& p) {
  return std::vector<Complex>(p.coords().data(), p.coords().data() + p.coords().size());
}

void require_transversal(const std::vector<FixedPointRecord>& points) {
  for (const FixedPointRecord& rec : points) {
    if (!rec.transversal) {
      throw HypothesisError("map is not transversal: a fixed point has |det(I - J)| <= 1e-8");
    }
  }
}

std::string with_prefix(const std::string& prefix, const std::string& variant) {
  return prefix.empty() ? variant : prefix + ", " + variant;
}

}  // namespace

std::optional<VerifyTarget> parse_target(const std::string& name) {
  if (name == "lefschetz") return VerifyTarget::kLefschetz;
  if (name == "guillot") return VerifyTarget::kGuillot;
  if (name == "ej") return VerifyTarget::kEulerJacobi;
  if (name == "baum-bott") return VerifyTarget::kBaumBott;
  if (name == "camacho-sad") return VerifyTarget::kCamachoSad;
  if (name == "cs-woodshole") return VerifyTarget::kCsWoodsHole;
  if (name == "all") return VerifyTarget::kAll;
  return std::nullopt;
}

std::string target_name(VerifyTarget t) {
  switch (t) {
    case VerifyTarget::kLefschetz: return "lefschetz";
    case VerifyTarget::kGuillot: return "guillot";
    case VerifyTarget::kEulerJacobi: return "ej";
    case VerifyTarget::kBaumBott: return "baum-bott";
    case VerifyTarget::kCamachoSad: return "camacho-sad";
    case VerifyTarget::kCsWoodsHole: return "cs-woodshole";
    case VerifyTarget::kAll: return "all";
  }
  return "unknown";
}

bool target_takes_endomorphism(VerifyTarget t) {
  return t == VerifyTarget::kLefschetz || t == VerifyTarget::kGuillot;
}

std::vector<VerificationEntry> lefschetz_entries(const ProjEndo& f, const std::vector<FixedPointRecord>& points,
                                                 double tol, const std::string& prefix) {
  require_transversal(points);
  std::vector<VerificationEntry> out;
  for (int k = 0; k <= f.dim(); ++k) {
    std::vector<PointTerm> terms;
    for (const FixedPointRecord& rec : points) {
      terms.push_back({"fixed", coords_of(rec.point), woods_hole_term(rec.jacobian, k)});
    }
    out.push_back(make_entry(relation::kLefschetz, with_prefix(prefix, "k=" + std::to_string(k)), std::move(terms),
                             lefschetz_rhs(f.dim(), f.degree(), k), tol));
  }
  return out;
}

std::vector<VerificationEntry> guillot_entries(const ProjEndo& f, const std::vector<FixedPointRecord>& points,
                                               const std::vector<InvariantPolySpec>& invariants, double tol,
                                               const std::string& prefix) {
  require_transversal(points);
  const std::vector<InvariantPolySpec> specs = invariants.empty() ? default_invariants(f.dim()) : invariants;
  std::vector<VerificationEntry> out;
  for (const InvariantPolySpec& b : specs) {
    if (b.n() != f.dim()) {
      throw InputError("invariant polynomial is for n = " + std::to_string(b.n()) + ", map acts on P^" +
                       std::to_string(f.dim()));
    }
    std::vector<PointTerm> terms;
    for (const FixedPointRecord& rec : points) {
      terms.push_back({"fixed", coords_of(rec.point), guillot_lhs_term(rec.jacobian, b)});
    }
    out.push_back(make_entry(relation::kGuillot, with_prefix(prefix, "B=" + b.label()), std::move(terms),
                             guillot_rhs(b, f.degree()), tol));
  }
  return out;
}

VerificationReport verify_endomorphism(VerifyTarget target, const ProjEndo& f, const SuiteOptions& opts) {
  if (!target_takes_endomorphism(target)) {
    throw InputError("target " + target_name(target) + " expects a vector-field file");
  }
  VerificationReport report;
  report.command = "verify " + target_name(target);
  report.seed = opts.tracker.seed;
  report.tol = opts.tol;
  const std::vector<FixedPointRecord> points = fixed_points(f, opts.tracker);
  report.notes.push_back("fixed points: " + std::to_string(points.size()) + " (expected " +
                         std::to_string(fixed_point_count(f.dim(), f.degree())) + ")");
  report.entries = target == VerifyTarget::kLefschetz ? lefschetz_entries(f, points, opts.tol)
                                                      : guillot_entries(f, points, opts.invariants, opts.tol);
  return report;
}

VerificationReport verify_vector_field(VerifyTarget target, const PlaneVectorField& v, const SuiteOptions& opts) {
  if (target_takes_endomorphism(target)) {
    throw InputError("target " + target_name(target) + " expects an endomorphism file");
  }
  VerificationReport report;
  report.command = "verify " + target_name(target);
  report.seed = opts.tracker.seed;
  report.tol = opts.tol;
  auto& entries = report.entries;
  const bool all = target == VerifyTarget::kAll;
  if (all && v.is_dicritic()) throw HypothesisError("field is dicritic: the line at infinity is not invariant");

  if (target == VerifyTarget::kEulerJacobi || all) {
    if (all && v.degree() < 2) {
      report.notes.push_back("Euler-Jacobi skipped: the relations require degree d >= 2");
    } else {
      entries.push_back(verify_ej1(v, opts.tracker, opts.tol));
      entries.push_back(verify_ej2(v, opts.tracker, opts.tol));
    }
  }
  if (target == VerifyTarget::kBaumBott || all) entries.push_back(verify_bb(v, opts.tracker, opts.tol));
  if (target == VerifyTarget::kCamachoSad || all) entries.push_back(verify_cs(v, opts.tol));
  if (target == VerifyTarget::kCsWoodsHole || all) {
    auto [structure, conormal] = verify_cs_woodshole(v, opts.radial, opts.tracker, opts.tol);
    entries.push_back(std::move(structure));
    entries.push_back(std::move(conormal));
  }
  if (all) {
    const ProjEndo fv = build_fv(v, opts.tracker);
    const std::vector<FixedPointRecord> points = fixed_points(fv, opts.tracker);
    report.notes.push_back("f_v fixed points: " + std::to_string(points.size()) + " (expected " +
                           std::to_string(fixed_point_count(2, fv.degree())) + ")");
    std::ostringstream dev;
    dev << "max |Dv - (Df_v - I)| over affine zeros: " << std::setprecision(3) << std::scientific
        << check_DvDf(v, opts.tracker);
    report.notes.push_back(dev.str());
    for (auto& e : lefschetz_entries(fv, points, opts.tol, "f_v")) entries.push_back(std::move(e));
    for (auto& e : guillot_entries(fv, points, opts.invariants, opts.tol, "f_v")) entries.push_back(std::move(e));
  }
  return report;
}

FixedPointSummary summarize_fixed_points(const ProjEndo& f, const PathTrackerConfig& cfg) {
  FixedPointSummary s;
  s.points = fixed_points(f, cfg);
  s.expected = fixed_point_count(f.dim(), f.degree());
  s.all_transversal = std::all_of(s.points.begin(), s.points.end(), [](const auto& r) { return r.transversal; });
  s.census_pass = s.all_transversal && static_cast<long long>(s.points.size()) == s.expected;
  return s;
}

nlohmann::json fixed_points_to_json(const FixedPointSummary& s, std::uint64_t seed) {
  using nlohmann::json;
  json points = json::array();
  for (const FixedPointRecord& rec : s.points) {
    json coords = json::array();
    for (Complex z : coords_of(rec.point)) coords.push_back(io::complex_to_json(z));
    json sigmas = json::array();
    for (int k = 0; k <= rec.jacobian.rows(); ++k) sigmas.push_back(io::complex_to_json(sigma_k(rec.jacobian, k)));
    points.push_back(json{{"point", coords},
                          {"chart", rec.chart},
                          {"sigma", sigmas},
                          {"det_I_minus_J", io::complex_to_json(rec.det_i_minus_j)},
                          {"transversal", rec.transversal}});
  }
  return json{{"command", "fixed-points"},
              {"seed", seed},
              {"points", points},
              {"census", json{{"found", s.points.size()}, {"expected", s.expected}, {"pass", s.census_pass}}}};
}

std::string fixed_points_to_text(const FixedPointSummary& s) {
  std::ostringstream os;
  os << std::setprecision(8);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const FixedPointRecord& rec = s.points[i];
    os << "[" << i << "] (";
    const auto c = coords_of(rec.point);
    for (std::size_t j = 0; j < c.size(); ++j) os << (j ? ", " : "") << c[j];
    os << ")  chart " << rec.chart << "\n     sigma:";
    for (int k = 0; k <= rec.jacobian.rows(); ++k) os << " " << sigma_k(rec.jacobian, k);
    os << "\n     det(I-J): " << rec.det_i_minus_j << (rec.transversal ? "" : "  NON-TRANSVERSAL") << "\n";
  }
  os << "census: " << s.points.size() << " fixed points, expected " << s.expected << "  "
     << (s.census_pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace woodshole
