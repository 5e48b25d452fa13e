#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "woodshole/indices.hpp"
#include "woodshole/projgeom.hpp"
#include "woodshole/report.hpp"
#include "woodshole/tracker_config.hpp"
#include "woodshole/vector_field.hpp"

namespace woodshole {

inline constexpr double kDefaultTolerance = 1e-6;

struct SuiteOptions {
  double tol = kDefaultTolerance;
  PathTrackerConfig tracker;
  // Empty: every monic sigma-monomial of weighted degree <= n.
  std::vector<InvariantPolySpec> invariants;
  // Radial factor for the line checks; a random one is drawn when empty.
  std::optional<MultiPoly> radial;
};

enum class VerifyTarget { kLefschetz, kGuillot, kEulerJacobi, kBaumBott, kCamachoSad, kCsWoodsHole, kAll };

std::optional<VerifyTarget> parse_target(const std::string& name);
std::string target_name(VerifyTarget t);
// Lefschetz and Guillot take an endomorphism file; the rest a vector field.
bool target_takes_endomorphism(VerifyTarget t);

std::vector<VerificationEntry> lefschetz_entries(const ProjEndo& f, const std::vector<FixedPointRecord>& points,
                                                 double tol, const std::string& prefix = "");
std::vector<VerificationEntry> guillot_entries(const ProjEndo& f, const std::vector<FixedPointRecord>& points,
                                               const std::vector<InvariantPolySpec>& invariants, double tol,
                                               const std::string& prefix = "");

VerificationReport verify_endomorphism(VerifyTarget target, const ProjEndo& f, const SuiteOptions& opts);
VerificationReport verify_vector_field(VerifyTarget target, const PlaneVectorField& v, const SuiteOptions& opts);

struct FixedPointSummary {
  std::vector<FixedPointRecord> points;
  long long expected = 0;
  bool census_pass = false;
  bool all_transversal = false;
};

FixedPointSummary summarize_fixed_points(const ProjEndo& f, const PathTrackerConfig& cfg);
nlohmann::json fixed_points_to_json(const FixedPointSummary& s, std::uint64_t seed);
std::string fixed_points_to_text(const FixedPointSummary& s);

}  // namespace woodshole
