#include "woodshole/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "woodshole/error.hpp"
#include "woodshole/random.hpp"

namespace woodshole {

namespace {

// Below this reciprocal condition number a step's linear solve is rejected.
constexpr double kSingularRcond = 1e-14;
constexpr int kMaxStepsPerPath = 200000;

}  // namespace

void PathTrackerConfig::validate() const {
  if (!(min_step > 0.0 && min_step < initial_step && initial_step < 1.0)) {
    throw InputError("tracker steps must satisfy 0 < min_step < initial_step < 1");
  }
  if (!(max_step >= initial_step)) throw InputError("max_step must be at least initial_step");
  if (!(corrector_tol > 0.0)) throw InputError("corrector tolerance must be positive");
  if (corrector_max_iters < 1) throw InputError("corrector needs at least one iteration");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw InputError("step_shrink must lie in (0, 1)");
  if (!(step_grow >= 1.0)) throw InputError("step_grow must be at least 1");
  if (grow_after < 1) throw InputError("grow_after must be positive");
  if (!(divergence_norm > 1.0)) throw InputError("divergence_norm must exceed 1");
}

Complex gamma_for_seed(std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  return rng.unit_complex();
}

PolySystem::PolySystem(std::span<const MultiPoly> polys) {
  if (polys.empty()) throw InputError("empty polynomial system");
  num_vars_ = polys.front().num_vars();
  for (const MultiPoly& p : polys) {
    if (p.num_vars() != num_vars_) throw InputError("system components disagree on variable count");
  }
  auto flatten = [this](const MultiPoly& p) {
    Flat f;
    for (const auto& [e, c] : p.terms()) {
      f.coefficients.push_back(c);
      f.exponents.insert(f.exponents.end(), e.begin(), e.end());
      for (int k : e) max_degree_ = std::max(max_degree_, k);
    }
    return f;
  };
  for (const MultiPoly& p : polys) {
    degrees_.push_back(std::max(p.total_degree(), 0));
    scale_ = std::max(scale_, p.coefficient_scale());
    values_.push_back(flatten(p));
    for (int j = 0; j < num_vars_; ++j) partials_.push_back(flatten(partial(p, j)));
  }
}

void PolySystem::fill_powers(const CVector& x, std::vector<Complex>& powers) const {
  const int stride = max_degree_ + 1;
  powers.resize(static_cast<std::size_t>(num_vars_) * stride);
  for (int v = 0; v < num_vars_; ++v) {
    Complex* row = powers.data() + static_cast<std::size_t>(v) * stride;
    row[0] = 1.0;
    for (int k = 1; k <= max_degree_; ++k) row[k] = row[k - 1] * x[v];
  }
}

Complex PolySystem::evaluate_flat(const Flat& f, const std::vector<Complex>& powers) const {
  const int stride = max_degree_ + 1;
  Complex sum = 0.0;
  const int* e = f.exponents.data();
  for (const Complex& c : f.coefficients) {
    Complex term = c;
    for (int v = 0; v < num_vars_; ++v, ++e) {
      if (*e != 0) term *= powers[static_cast<std::size_t>(v) * stride + *e];
    }
    sum += term;
  }
  return sum;
}

void PolySystem::evaluate(const CVector& x, CVector& values) const {
  std::vector<Complex> powers;
  fill_powers(x, powers);
  values.resize(size());
  for (int i = 0; i < size(); ++i) values[i] = evaluate_flat(values_[i], powers);
}

void PolySystem::evaluate(const CVector& x, CVector& values, CMatrix& jacobian) const {
  std::vector<Complex> powers;
  fill_powers(x, powers);
  values.resize(size());
  jacobian.resize(size(), num_vars_);
  for (int i = 0; i < size(); ++i) {
    values[i] = evaluate_flat(values_[i], powers);
    for (int j = 0; j < num_vars_; ++j) {
      jacobian(i, j) = evaluate_flat(partials_[static_cast<std::size_t>(i) * num_vars_ + j], powers);
    }
  }
}

TotalDegreeHomotopy::TotalDegreeHomotopy(const PolySystem& target, std::uint64_t seed)
    : target_(&target), gamma_(gamma_for_seed(seed)) {
  if (target.size() != target.num_vars()) throw InputError("homotopy target must be square");
  Rng rng(mix_seed(seed ^ 0xc0ffee123456789ULL));
  num_paths_ = 1;
  for (int i = 0; i < target.size(); ++i) {
    constants_.push_back(rng.unit_complex());
    num_paths_ *= static_cast<std::size_t>(target.degrees()[i]);
  }
}

CVector TotalDegreeHomotopy::start_point(std::size_t index) const {
  const auto& deg = target_->degrees();
  CVector x(target_->size());
  for (int i = 0; i < target_->size(); ++i) {
    const std::size_t k = index % static_cast<std::size_t>(deg[i]);
    index /= static_cast<std::size_t>(deg[i]);
    const double angle = (std::arg(constants_[i]) + 2.0 * std::numbers::pi * static_cast<double>(k)) /
                         static_cast<double>(deg[i]);
    x[i] = std::polar(std::pow(std::abs(constants_[i]), 1.0 / deg[i]), angle);
  }
  return x;
}

void TotalDegreeHomotopy::evaluate(const CVector& x, double t, CVector& h, CMatrix& hx) const {
  target_->evaluate(x, h, hx);
  const auto& deg = target_->degrees();
  const Complex a = (1.0 - t) * gamma_;
  h *= t;
  hx *= t;
  for (int i = 0; i < target_->size(); ++i) {
    const Complex xd1 = std::pow(x[i], deg[i] - 1);
    h[i] += a * (xd1 * x[i] - constants_[i]);
    hx(i, i) += a * static_cast<double>(deg[i]) * xd1;
  }
}

void TotalDegreeHomotopy::evaluate(const CVector& x, double t, CVector& h, CMatrix& hx,
                                   CVector& ht) const {
  target_->evaluate(x, h, hx);
  const auto& deg = target_->degrees();
  const Complex a = (1.0 - t) * gamma_;
  ht = h;
  h *= t;
  hx *= t;
  for (int i = 0; i < target_->size(); ++i) {
    const Complex xd1 = std::pow(x[i], deg[i] - 1);
    const Complex g = xd1 * x[i] - constants_[i];
    h[i] += a * g;
    ht[i] -= gamma_ * g;
    hx(i, i) += a * static_cast<double>(deg[i]) * xd1;
  }
}

PathEndpoint track_path(const TotalDegreeHomotopy& homotopy, const CVector& start,
                        const PathTrackerConfig& cfg) {
  const int n = static_cast<int>(start.size());
  PathEndpoint out;
  out.x = start;
  CVector h(n), ht(n), xp(n);
  CMatrix hx(n, n);
  Eigen::PartialPivLU<CMatrix> lu(n);

  double t = 0.0;
  double dt = cfg.initial_step;
  int streak = 0;
  while (t < 1.0) {
    if (out.steps + out.rejected_steps > kMaxStepsPerPath) {
      out.status = PathEndpoint::Status::kFailed;
      out.t = t;
      return out;
    }
    const bool last = dt >= 1.0 - t;
    const double step = last ? 1.0 - t : dt;
    const double t1 = last ? 1.0 : t + step;

    bool ok = false;
    homotopy.evaluate(out.x, t, h, hx, ht);
    lu.compute(hx);
    if (lu.rcond() > kSingularRcond) {
      xp = out.x - step * lu.solve(ht);
      for (int k = 0; k < cfg.corrector_max_iters; ++k) {
        homotopy.evaluate(xp, t1, h, hx);
        lu.compute(hx);
        if (!(lu.rcond() > kSingularRcond)) break;
        const CVector dx = lu.solve(h);
        xp -= dx;
        if (dx.norm() <= cfg.corrector_tol * std::max(1.0, xp.norm())) {
          ok = xp.allFinite();
          break;
        }
      }
    }

    if (ok) {
      out.x = xp;
      t = t1;
      ++out.steps;
      if (++streak >= cfg.grow_after) {
        dt = std::min(dt * cfg.step_grow, cfg.max_step);
        streak = 0;
      }
      if (out.x.norm() > cfg.divergence_norm) {
        out.status = PathEndpoint::Status::kDiverged;
        out.t = t;
        return out;
      }
    } else {
      ++out.rejected_steps;
      streak = 0;
      dt *= cfg.step_shrink;
      if (dt < cfg.min_step) {
        // Step underflow far from the origin means the path is heading to
        // infinity faster than the tracker can follow.
        out.status = out.x.norm() > std::sqrt(cfg.divergence_norm)
                         ? PathEndpoint::Status::kDiverged
                         : PathEndpoint::Status::kFailed;
        out.t = t;
        return out;
      }
    }
  }
  out.status = PathEndpoint::Status::kReachedEnd;
  out.t = 1.0;
  return out;
}

std::vector<PathEndpoint> track_all_paths_serial(const TotalDegreeHomotopy& homotopy,
                                                 const PathTrackerConfig& cfg) {
  std::vector<PathEndpoint> out(homotopy.num_paths());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = track_path(homotopy, homotopy.start_point(i), cfg);
  }
  return out;
}

std::vector<PathEndpoint> track_all_paths(const TotalDegreeHomotopy& homotopy,
                                          const PathTrackerConfig& cfg) {
  const auto count = static_cast<std::ptrdiff_t>(homotopy.num_paths());
  std::vector<PathEndpoint> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = track_path(homotopy, homotopy.start_point(k), cfg);
  }
  return out;
}

NewtonResult newton_polish(const PolySystem& system, const CVector& start, int max_iters) {
  const int n = system.num_vars();
  NewtonResult out;
  out.x = start;
  CVector f(n);
  CMatrix jac(n, n);
  Eigen::PartialPivLU<CMatrix> lu(n);
  int extra = 0;
  for (int it = 0; it < max_iters; ++it) {
    system.evaluate(out.x, f, jac);
    out.residuals.push_back(f.norm());
    lu.compute(jac);
    out.rcond = lu.rcond();
    if (!(out.rcond > 0.0)) return out;
    const CVector dx = lu.solve(f);
    if (!dx.allFinite()) return out;
    out.x -= dx;
    const double scale = std::max(1.0, out.x.norm());
    if (dx.norm() <= 1e-15 * scale) {
      out.converged = true;
      break;
    }
    // Once converged, two more iterations finish the polish.
    if (out.converged && ++extra >= 2) break;
    if (dx.norm() <= 1e-11 * scale) out.converged = true;
  }
  system.evaluate(out.x, f, jac);
  out.residuals.push_back(f.norm());
  lu.compute(jac);
  out.rcond = lu.rcond();
  return out;
}

}  // namespace woodshole
