#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "woodshole/linalg.hpp"
#include "woodshole/polyalg.hpp"
#include "woodshole/tracker_config.hpp"

namespace woodshole {

// A square polynomial system flattened for repeated evaluation of values and
// Jacobian. Immutable after construction.
class PolySystem {
 public:
  explicit PolySystem(std::span<const MultiPoly> polys);

  int size() const { return static_cast<int>(values_.size()); }
  int num_vars() const { return num_vars_; }
  const std::vector<int>& degrees() const { return degrees_; }
  double coefficient_scale() const { return scale_; }

  void evaluate(const CVector& x, CVector& values) const;
  void evaluate(const CVector& x, CVector& values, CMatrix& jacobian) const;

 private:
  struct Flat {
    std::vector<Complex> coefficients;
    std::vector<int> exponents;  // num_vars entries per term
  };
  Complex evaluate_flat(const Flat& f, const std::vector<Complex>& powers) const;
  void fill_powers(const CVector& x, std::vector<Complex>& powers) const;

  int num_vars_ = 0;
  int max_degree_ = 0;
  double scale_ = 0.0;
  std::vector<int> degrees_;
  std::vector<Flat> values_;
  std::vector<Flat> partials_;  // row-major: partials_[i * num_vars + j]
};

// H(x, t) = (1 - t) * gamma * G(x) + t * F(x) with G_i = x_i^deg(F_i) - c_i.
class TotalDegreeHomotopy {
 public:
  TotalDegreeHomotopy(const PolySystem& target, std::uint64_t seed);

  const PolySystem& target() const { return *target_; }
  Complex gamma() const { return gamma_; }
  const std::vector<Complex>& start_constants() const { return constants_; }
  // Bezout number of the target.
  std::size_t num_paths() const { return num_paths_; }
  // Start roots enumerated in mixed radix over the per-variable root indices.
  CVector start_point(std::size_t index) const;

  void evaluate(const CVector& x, double t, CVector& h, CMatrix& hx) const;
  void evaluate(const CVector& x, double t, CVector& h, CMatrix& hx, CVector& ht) const;

 private:
  const PolySystem* target_;
  Complex gamma_;
  std::vector<Complex> constants_;
  std::size_t num_paths_ = 0;
};

struct PathEndpoint {
  enum class Status { kReachedEnd, kDiverged, kFailed };
  Status status = Status::kFailed;
  CVector x;
  double t = 0.0;
  int steps = 0;
  int rejected_steps = 0;
};

// Euler predictor, Newton corrector, adaptive step size.
PathEndpoint track_path(const TotalDegreeHomotopy& homotopy, const CVector& start,
                        const PathTrackerConfig& cfg);

// Tracks every start root. Paths are independent; the OpenMP version
// distributes them across threads and writes each endpoint into its own slot,
// so both functions return bit-identical results.
std::vector<PathEndpoint> track_all_paths(const TotalDegreeHomotopy& homotopy,
                                          const PathTrackerConfig& cfg);
std::vector<PathEndpoint> track_all_paths_serial(const TotalDegreeHomotopy& homotopy,
                                                 const PathTrackerConfig& cfg);

struct NewtonResult {
  CVector x;
  bool converged = false;
  // Reciprocal condition estimate of the Jacobian at the final iterate.
  double rcond = 0.0;
  // ||F(x)|| before each iteration and after the last one.
  std::vector<double> residuals;
};

// Newton's method on the target system alone.
NewtonResult newton_polish(const PolySystem& system, const CVector& start,
                           int max_iters = 12);

}  // namespace woodshole
