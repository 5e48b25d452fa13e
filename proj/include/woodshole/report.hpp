#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "woodshole/polyalg.hpp"

namespace woodshole {

// Relation names as they appear in reports.
namespace relation {
inline constexpr const char* kLefschetz = "Generalized Lefschetz";
inline constexpr const char* kGuillot = "Guillot's relations";
inline constexpr const char* kBaumBott = "Baum-Bott";
inline constexpr const char* kEulerJacobi1 = "Euler-Jacobi 1";
inline constexpr const char* kEulerJacobi2 = "Euler-Jacobi 2";
inline constexpr const char* kCamachoSad = "Camacho-Sad";
}  // namespace relation

struct PointTerm {
  std::string kind;            // "fixed", "affine", "infinity", "line"
  std::vector<Complex> point;  // normalized projective or affine coordinates
  Complex value;
};

struct VerificationEntry {
  std::string relation;
  std::string variant;  // e.g. "k=1", "B=sigma1^2", "conormal sheaf of L"
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<PointTerm> terms;
};

// Sums the terms in order, sets lhs, residual = |lhs - rhs|, tolerance =
// tol * max(1, |rhs|) and pass.
VerificationEntry make_entry(std::string relation, std::string variant, std::vector<PointTerm> terms,
                             Complex rhs, double tol);

struct VerificationReport {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<VerificationEntry> entries;
  std::vector<std::string> notes;
  // Excluded from the machine-readable report unless requested, so reports
  // stay byte-identical across runs.
  std::optional<double> wall_time;

  bool all_pass() const;
};

}  // namespace woodshole
