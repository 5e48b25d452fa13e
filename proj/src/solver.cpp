#include "woodshole/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "woodshole/error.hpp"
#include "woodshole/indices.hpp"
#include "woodshole/random.hpp"

namespace woodshole {

namespace {

constexpr double kDuplicateDistance = 1e-6;
constexpr double kNonsingularRcond = 1e-10;
constexpr double kMergeDistance = 1e-6;
constexpr double kMultipleRootRelDeriv = 1e-7;

std::int64_t rounded(double v) { return static_cast<std::int64_t>(std::llround(v * 1e9)); }

std::string count_summary(const AffineSolutionSet& s);

// Every fixed point lies in several charts, so a chart whose paths fail even
// after a retry still contributes its good solutions; completeness is judged
// on the merged census instead.
AffineSolutionSet solve_chart(std::span<const MultiPoly> system, const PathTrackerConfig& cfg) {
  AffineSolutionSet first = solve_square_once(system, cfg, Execution::kParallel);
  if (first.failures == 0) return first;
  AffineSolutionSet second = solve_square_once(system, cfg.with_seed(mix_seed(cfg.seed)), Execution::kParallel);
  second.attempts = 2;
  return second.failures <= first.failures ? second : first;
}

std::string count_summary(const AffineSolutionSet& s) {
  return std::to_string(s.solutions.size()) + " finite, " + std::to_string(s.paths_diverged) +
         " diverged, " + std::to_string(s.singular_endpoints) + " singular, " +
         std::to_string(s.failures) + " failed of " + std::to_string(s.paths_tracked) + " paths";
}

}  // namespace

bool canonical_less(const CVector& a, const CVector& b) {
  const auto n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ar = rounded(a[i].real()), br = rounded(b[i].real());
    if (ar != br) return ar < br;
    const auto ai = rounded(a[i].imag()), bi = rounded(b[i].imag());
    if (ai != bi) return ai < bi;
  }
  return a.size() < b.size();
}

AffineSolutionSet solve_square_once(std::span<const MultiPoly> system, const PathTrackerConfig& cfg,
                                    Execution exec) {
  cfg.validate();
  if (system.empty()) throw InputError("empty polynomial system");
  const int n = system.front().num_vars();
  if (static_cast<int>(system.size()) != n) {
    throw InputError("system is not square: " + std::to_string(system.size()) + " equations in " +
                     std::to_string(n) + " unknowns");
  }
  double bezout = 1.0;
  for (const MultiPoly& p : system) {
    if (p.is_zero()) throw InputError("system has an identically zero equation");
    bezout *= std::max(p.total_degree(), 0);
  }
  if (bezout > static_cast<double>(cfg.max_paths)) {
    throw InputError("Bezout number " + std::to_string(static_cast<long long>(bezout)) +
                     " exceeds the path limit " + std::to_string(cfg.max_paths));
  }

  const PolySystem target(system);
  const TotalDegreeHomotopy homotopy(target, cfg.seed);
  const std::vector<PathEndpoint> endpoints = exec == Execution::kParallel
                                                  ? track_all_paths(homotopy, cfg)
                                                  : track_all_paths_serial(homotopy, cfg);

  AffineSolutionSet out;
  out.seed = cfg.seed;
  out.attempts = 1;
  out.paths_tracked = static_cast<int>(endpoints.size());
  const double far = std::sqrt(cfg.divergence_norm);
  const double scale = std::max(target.coefficient_scale(), 1e-300);

  std::vector<CVector> finite;
  for (const PathEndpoint& e : endpoints) {
    if (e.status == PathEndpoint::Status::kDiverged) {
      ++out.paths_diverged;
      continue;
    }
    if (e.status == PathEndpoint::Status::kFailed) {
      // A path stalling just before t = 1 with a small residual is heading
      // into a singular root.
      CVector f;
      target.evaluate(e.x, f);
      if (e.t > 0.999 && f.norm() <= 1e-5 * scale * std::max(1.0, e.x.norm())) {
        ++out.singular_endpoints;
      } else {
        ++out.failures;
      }
      continue;
    }
    const NewtonResult polish = newton_polish(target, e.x);
    if (polish.converged && polish.rcond > kNonsingularRcond && polish.x.allFinite()) {
      finite.push_back(polish.x);
    } else if (e.x.norm() > far) {
      ++out.paths_diverged;
    } else if (!polish.residuals.empty() &&
               polish.residuals.back() <= 1e-6 * scale * std::max(1.0, e.x.norm())) {
      ++out.singular_endpoints;
    } else {
      ++out.failures;
    }
  }

  std::sort(finite.begin(), finite.end(), canonical_less);
  for (const CVector& x : finite) {
    const bool duplicate = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const CVector& y) {
      return (x - y).norm() <= kDuplicateDistance * std::max(1.0, x.norm());
    });
    if (duplicate) {
      ++out.failures;
    } else {
      out.solutions.push_back(x);
    }
  }
  return out;
}

AffineSolutionSet solve_square(std::span<const MultiPoly> system, const PathTrackerConfig& cfg,
                               Execution exec) {
  AffineSolutionSet first = solve_square_once(system, cfg, exec);
  if (first.failures == 0) return first;
  AffineSolutionSet second = solve_square_once(system, cfg.with_seed(mix_seed(cfg.seed)), exec);
  second.attempts = 2;
  if (second.failures == 0) return second;
  throw NumericalError("path tracking failed after retry with a fresh gamma (" +
                       count_summary(second) + ")");
}

std::vector<MultiPoly> fixed_point_system(const ProjEndo& f, int chart) {
  const int n = f.dim();
  if (chart < 0 || chart > n) throw InputError("chart index out of range");
  const MultiPoly denom = dehomogenize_chart(f.component(chart), chart);
  std::vector<MultiPoly> out;
  for (int j = 0, k = 0; j <= n; ++j) {
    if (j == chart) continue;
    const MultiPoly xj = MultiPoly::variable(n, k++);
    out.push_back(dehomogenize_chart(f.component(j), chart) - xj * denom);
  }
  return out;
}

std::vector<FixedPointRecord> fixed_points(const ProjEndo& f, const PathTrackerConfig& cfg) {
  const int n = f.dim();
  const int d = f.degree();
  const bool is_morphism = f.morphism().has_value() ? *f.morphism() : check_morphism(f, cfg);
  if (!is_morphism) throw HypothesisError("map has a base point; it is not a morphism of P^n");

  std::vector<std::vector<MultiPoly>> systems;
  for (int chart = 0; chart <= n; ++chart) {
    systems.push_back(fixed_point_system(f, chart));
    for (const MultiPoly& p : systems.back()) {
      if (p.is_zero()) {
        throw HypothesisError("fixed points are not isolated (fixed-point equation vanishes in chart " +
                              std::to_string(chart) + ")");
      }
    }
  }

  std::vector<ProjPoint> points;
  std::string chart_failures;
  for (int chart = 0; chart <= n; ++chart) {
    const AffineSolutionSet sols =
        solve_chart(systems[chart], cfg.with_seed(mix_seed(cfg.seed + static_cast<unsigned>(chart))));
    if (sols.failures > 0) {
      chart_failures += " chart " + std::to_string(chart) + ": " + count_summary(sols) + ";";
    }
    for (const CVector& x : sols.solutions) {
      const ProjPoint p = lift_from_chart(x, chart);
      const bool seen = std::any_of(points.begin(), points.end(), [&](const ProjPoint& q) {
        return proj_distance(p, q) < kMergeDistance;
      });
      if (!seen) points.push_back(p);
    }
  }

  std::vector<PolySystem> compiled;
  for (const auto& s : systems) compiled.emplace_back(s);

  std::vector<FixedPointRecord> out;
  bool all_transversal = true;
  for (const ProjPoint& p0 : points) {
    const int chart = p0.best_chart();
    const NewtonResult polish = newton_polish(compiled[chart], p0.affine(chart));
    const CVector affine = polish.x.allFinite() ? polish.x : p0.affine(chart);
    FixedPointRecord rec{lift_from_chart(affine, chart), chart, {}, {}, 0.0, false};
    CVector residual;
    compiled[chart].evaluate(rec.point.affine(chart), residual);
    rec.newton_residual = residual.norm();
    rec.jacobian = affine_jacobian(f, rec.point, chart);
    rec.det_i_minus_j = det_i_minus(rec.jacobian);
    rec.transversal = std::abs(rec.det_i_minus_j) > kTransversalityThreshold;
    all_transversal = all_transversal && rec.transversal;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const FixedPointRecord& a, const FixedPointRecord& b) {
    return canonical_less(a.point.coords(), b.point.coords());
  });

  const long long expected = fixed_point_count(n, d);
  if (all_transversal && static_cast<long long>(out.size()) != expected) {
    throw NumericalError("found " + std::to_string(out.size()) + " transversal fixed points, expected " +
                         std::to_string(expected) + " (map is non-transversal or points were missed)" +
                         (chart_failures.empty() ? "" : "; path failures in" + chart_failures));
  }
  return out;
}

VfZeroSet vf_zeros(const PlaneVectorField& v, const PathTrackerConfig& cfg) {
  const int d = v.degree();
  if (d == MultiPoly::kZeroDegree) throw InputError("vector field is identically zero");
  if (d < 1) throw InputError("vector field must have degree at least 1");
  if (v.P().is_zero() || v.Q().is_zero()) {
    throw HypothesisError("a vector field component vanishes identically; zeros are not isolated");
  }
  const MultiPoly system[] = {v.P(), v.Q()};
  const AffineSolutionSet sols = solve_square(system, cfg);

  VfZeroSet out;
  out.expected = d * d;
  const MultiPoly px = partial(v.P(), 0), py = partial(v.P(), 1);
  const MultiPoly qx = partial(v.Q(), 0), qy = partial(v.Q(), 1);
  for (const CVector& x : sols.solutions) {
    std::span<const Complex> xs(x.data(), 2);
    VfZero z{x, CMatrix(2, 2), {}};
    z.dv << eval(px, xs), eval(py, xs), eval(qx, xs), eval(qy, xs);
    z.det = z.dv.determinant();
    out.zeros.push_back(std::move(z));
  }
  if (static_cast<int>(out.zeros.size()) < out.expected) {
    out.degenerate = true;
    out.diagnostic = "found " + std::to_string(out.zeros.size()) + " simple zeros, expected " +
                     std::to_string(out.expected) + " (" + std::to_string(sols.singular_endpoints) +
                     " paths ended on singular zeros, " + std::to_string(sols.paths_diverged) +
                     " diverged)";
  }
  return out;
}

UnivariateRoots univariate_roots(const MultiPoly& p) {
  if (p.num_vars() != 1) throw InputError("univariate root finding needs a one-variable polynomial");
  if (p.is_zero() || p.total_degree() < 1) throw InputError("polynomial must have degree at least 1");

  int degree = p.total_degree();
  std::vector<Complex> a(static_cast<std::size_t>(degree) + 1);
  for (const auto& [e, c] : p.terms()) a[static_cast<std::size_t>(e[0])] = c;
  const double scale = p.coefficient_scale();
  while (degree > 0 && std::abs(a[static_cast<std::size_t>(degree)]) < kRelativeZero * scale) {
    a.pop_back();
    --degree;
  }

  UnivariateRoots out;
  int zero_roots = 0;
  while (zero_roots < degree && a[static_cast<std::size_t>(zero_roots)] == Complex(0.0)) ++zero_roots;
  out.roots.assign(static_cast<std::size_t>(zero_roots), Complex(0.0));
  std::vector<Complex> c(a.begin() + zero_roots, a.end());
  const int m = degree - zero_roots;

  auto horner = [&c](Complex z, Complex& value, Complex& deriv) {
    value = c.back();
    deriv = 0.0;
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
      deriv = deriv * z + value;
      value = value * z + *it;
    }
  };

  if (m == 1) {
    out.roots.push_back(-c[0] / c[1]);
  } else if (m > 1) {
    const double radius = std::pow(std::abs(c[0]) / std::abs(c[static_cast<std::size_t>(m)]), 1.0 / m);
    std::vector<Complex> z(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / m + 0.4);
    }
    for (int iter = 0; iter < 500; ++iter) {
      bool done = true;
      for (int i = 0; i < m; ++i) {
        Complex value, deriv;
        horner(z[static_cast<std::size_t>(i)], value, deriv);
        if (value == Complex(0.0)) continue;
        const Complex ratio = value / deriv;
        Complex repulsion = 0.0;
        for (int j = 0; j < m; ++j) {
          if (j != i) repulsion += 1.0 / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
        }
        const Complex w = ratio / (1.0 - ratio * repulsion);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
        z[static_cast<std::size_t>(i)] -= w;
        if (std::abs(w) > 1e-15 * std::max(1.0, std::abs(z[static_cast<std::size_t>(i)]))) done = false;
      }
      if (done) break;
    }
    for (Complex& root : z) {
      for (int k = 0; k < 3; ++k) {
        Complex value, deriv;
        horner(root, value, deriv);
        if (deriv == Complex(0.0)) break;
        const Complex step = value / deriv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        root -= step;
      }
      out.roots.push_back(root);
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), [](Complex a1, Complex b1) {
    CVector va(1), vb(1);
    va[0] = a1;
    vb[0] = b1;
    return canonical_less(va, vb);
  });
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
      if (std::abs(out.roots[i] - out.roots[j]) < 1e-8) out.repeated = true;
    }
  }
  // A multiple root splits into a cluster of width ~eps^(1/m), usually wider
  // than 1e-8, so also flag roots where p' is negligible against the terms of p.
  if (zero_roots > 1) out.repeated = true;
  for (Complex root : out.roots) {
    if (m < 2 || root == Complex(0.0)) continue;
    Complex value, deriv;
    horner(root, value, deriv);
    double magnitude = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) magnitude += std::abs(c[k]) * std::pow(std::abs(root), double(k));
    if (std::abs(deriv) * std::max(1.0, std::abs(root)) <= kMultipleRootRelDeriv * magnitude) out.repeated = true;
  }
  return out;
}

}  // namespace woodshole
