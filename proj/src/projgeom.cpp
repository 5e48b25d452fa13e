#include "woodshole/projgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "woodshole/error.hpp"
#include "woodshole/homotopy.hpp"
#include "woodshole/random.hpp"

namespace woodshole {

namespace {

constexpr double kZeroVector = 1e-300;
// Coordinates within this relative band of the maximum count as tied.
constexpr double kPhaseTie = 1e-12;

}  // namespace

ProjPoint ProjPoint::normalize(const CVector& raw) {
  if (raw.size() < 2) throw InputError("projective point needs at least two coordinates");
  if (!raw.allFinite()) throw NumericalError("projective point has non-finite coordinates");
  const double max_mod = raw.cwiseAbs().maxCoeff();
  if (!(max_mod > kZeroVector)) throw InputError("cannot normalize the zero vector");
  CVector v = raw / max_mod;
  int lead = 0;
  const double top = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= top * (1.0 - kPhaseTie)) {
      lead = i;
      break;
    }
  }
  const Complex phase = std::conj(v[lead]) / std::abs(v[lead]);
  v *= phase / v.norm();
  v[lead] = Complex(std::abs(v[lead]), 0.0);
  return ProjPoint(std::move(v));
}

ProjPoint ProjPoint::normalize(std::span<const Complex> raw) {
  CVector v(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) v[static_cast<Eigen::Index>(i)] = raw[i];
  return normalize(v);
}

int ProjPoint::best_chart() const {
  Eigen::Index idx = 0;
  coords_.cwiseAbs().maxCoeff(&idx);
  return static_cast<int>(idx);
}

CVector ProjPoint::affine(int chart) const {
  if (chart < 0 || chart > dim()) throw InputError("chart index out of range");
  if (coords_[chart] == Complex(0.0)) throw NumericalError("point lies outside the requested chart");
  CVector out(dim());
  for (int i = 0, k = 0; i <= dim(); ++i) {
    if (i != chart) out[k++] = coords_[i] / coords_[chart];
  }
  return out;
}

double proj_distance(const ProjPoint& p, const ProjPoint& q) {
  if (p.dim() != q.dim()) throw InputError("projective points of different dimension");
  // Norm of the part of q orthogonal to p; equals sqrt(1 - |<p,q>|^2) but
  // keeps full relative precision for nearby points.
  const Complex inner = p.coords().dot(q.coords());
  const double d = (q.coords() - inner * p.coords()).norm();
  return std::clamp(d, 0.0, 1.0);
}

ProjPoint lift_from_chart(const CVector& affine, int chart) {
  const auto n = affine.size();
  if (chart < 0 || chart > n) throw InputError("chart index out of range");
  CVector x(n + 1);
  for (Eigen::Index i = 0, k = 0; i <= n; ++i) {
    x[i] = (i == chart) ? Complex(1.0) : affine[k++];
  }
  return ProjPoint::normalize(x);
}

ProjEndo::ProjEndo(std::vector<MultiPoly> components) : components_(std::move(components)) {
  const int count = static_cast<int>(components_.size());
  if (count < 2 || count > kMaxProjectiveDim + 1) {
    throw InputError("endomorphism needs between 2 and " + std::to_string(kMaxProjectiveDim + 1) +
                     " components, got " + std::to_string(count));
  }
  degree_ = MultiPoly::kZeroDegree;
  for (const MultiPoly& c : components_) {
    if (c.num_vars() != count) {
      throw InputError("endomorphism component has " + std::to_string(c.num_vars()) +
                       " variables, expected " + std::to_string(count));
    }
    if (!c.is_homogeneous()) throw InputError("endomorphism component is not homogeneous");
    if (c.is_zero()) continue;
    if (degree_ == MultiPoly::kZeroDegree) {
      degree_ = c.total_degree();
    } else if (c.total_degree() != degree_) {
      throw InputError("endomorphism components have different degrees");
    }
    scale_ = std::max(scale_, c.coefficient_scale());
  }
  if (degree_ == MultiPoly::kZeroDegree) throw InputError("all endomorphism components vanish");
  if (degree_ < 1) throw InputError("endomorphism degree must be at least 1");
  for (const MultiPoly& c : components_) {
    for (int j = 0; j < count; ++j) partials_.push_back(partial(c, j));
  }
}

const MultiPoly& ProjEndo::component_partial(int i, int j) const {
  const int count = dim() + 1;
  if (i < 0 || i >= count || j < 0 || j >= count) throw InputError("partial index out of range");
  return partials_[static_cast<std::size_t>(i) * count + j];
}

ProjEndo ProjEndo::with_morphism_flag(bool is_morphism) const {
  ProjEndo out = *this;
  out.morphism_ = is_morphism;
  return out;
}

CVector ProjEndo::evaluate(const CVector& x) const {
  if (x.size() != dim() + 1) throw InputError("point dimension does not match endomorphism");
  std::span<const Complex> xs(x.data(), static_cast<std::size_t>(x.size()));
  CVector out(dim() + 1);
  for (int i = 0; i <= dim(); ++i) out[i] = woodshole::eval(components_[i], xs);
  return out;
}

ProjPoint apply(const ProjEndo& f, const ProjPoint& p) {
  const CVector image = f.evaluate(p.coords());
  if (!(image.cwiseAbs().maxCoeff() > 1e-12 * f.coefficient_scale())) {
    throw NumericalError("all components vanish numerically: point is near a base point");
  }
  return ProjPoint::normalize(image);
}

CMatrix affine_jacobian_at(const ProjEndo& f, const CVector& affine, int chart) {
  const int n = f.dim();
  if (affine.size() != n) throw InputError("affine point dimension does not match endomorphism");
  if (chart < 0 || chart > n) throw InputError("chart index out of range");
  CVector x(n + 1);
  for (int i = 0, k = 0; i <= n; ++i) x[i] = (i == chart) ? Complex(1.0) : affine[k++];
  std::span<const Complex> xs(x.data(), static_cast<std::size_t>(x.size()));

  const CVector values = f.evaluate(x);
  const Complex denom = values[chart];
  const double size_scale = std::pow(std::max(1.0, x.cwiseAbs().maxCoeff()), f.degree());
  if (!(std::abs(denom) > 1e-10 * f.coefficient_scale() * size_scale)) {
    throw NumericalError("chart component vanishes at the point; affine Jacobian undefined");
  }

  CMatrix jac(n, n);
  for (int j = 0, r = 0; j <= n; ++j) {
    if (j == chart) continue;
    for (int k = 0, c = 0; k <= n; ++k) {
      if (k == chart) continue;
      const Complex dfj = woodshole::eval(f.component_partial(j, k), xs);
      const Complex dfc = woodshole::eval(f.component_partial(chart, k), xs);
      jac(r, c) = (dfj * denom - values[j] * dfc) / (denom * denom);
      ++c;
    }
    ++r;
  }
  return jac;
}

CMatrix affine_jacobian(const ProjEndo& f, const ProjPoint& p, int chart) {
  if (p.dim() != f.dim()) throw InputError("point dimension does not match endomorphism");
  if (chart < 0 || chart > f.dim()) throw InputError("chart index out of range");
  if (!(std::abs(p.coords()[chart]) > 0.1)) {
    throw NumericalError("chart " + std::to_string(chart) + " is ill-conditioned at the point");
  }
  return affine_jacobian_at(f, p.affine(chart), chart);
}

// A simple endpoint is a base point when the remaining components vanish to
// within the rounding error of the polished root.
constexpr double kBasePointRoundingFactor = 100.0;

bool check_morphism(const ProjEndo& f, const PathTrackerConfig& cfg) {
  cfg.validate();
  const int n = f.dim();

  // Common zeros of G_1..G_n are the preimages f^{-1}(w) of a random point w;
  // there are exactly d^n of them, all simple, when f is a morphism.
  Rng rng(mix_seed(cfg.seed ^ 0x6a09e667f3bcc908ULL));
  CMatrix mixing(n + 1, n + 1);
  for (int r = 0; r <= n; ++r) {
    for (int c = 0; c <= n; ++c) mixing(r, c) = rng.complex_gaussian();
  }
  std::vector<MultiPoly> combos;
  for (int r = 1; r <= n; ++r) {
    MultiPoly g(n + 1);
    for (int c = 0; c <= n; ++c) g = g + mixing(r, c) * f.component(c);
    combos.push_back(g);
  }

  std::size_t expected = 1;
  for (int i = 0; i < n; ++i) expected *= static_cast<std::size_t>(f.degree());

  const double scale = f.coefficient_scale();
  auto residual_at = [&](const ProjPoint& p) {
    return f.evaluate(p.coords()).cwiseAbs().maxCoeff() / scale;
  };

  std::vector<ProjPoint> preimages;
  bool suspect = false;
  for (int chart = 0; chart <= n; ++chart) {
    std::vector<MultiPoly> system;
    for (const MultiPoly& g : combos) system.push_back(dehomogenize_chart(g, chart));
    if (std::any_of(system.begin(), system.end(), [](const MultiPoly& p) { return p.is_zero(); })) {
      return false;
    }
    const PolySystem ps(system);
    const TotalDegreeHomotopy homotopy(ps, mix_seed(cfg.seed + 0x100 + static_cast<unsigned>(chart)));
    for (const PathEndpoint& e : track_all_paths(homotopy, cfg)) {
      if (e.status == PathEndpoint::Status::kDiverged) continue;
      CVector x = e.x;
      bool simple = false;
      double rounding = 0.0;
      if (e.status == PathEndpoint::Status::kReachedEnd) {
        const NewtonResult polish = newton_polish(ps, x);
        if (polish.x.allFinite()) x = polish.x;
        simple = polish.converged && polish.rcond > 1e-10;
        if (simple) rounding = kBasePointRoundingFactor * std::numeric_limits<double>::epsilon() / polish.rcond;
      }
      if (!x.allFinite()) continue;
      const ProjPoint p = lift_from_chart(x, chart);
      const double r = residual_at(p);
      if (simple && r <= rounding) return false;
      if (!simple) {
        suspect = suspect || r <= 1e-6;
        continue;
      }
      const bool seen = std::any_of(preimages.begin(), preimages.end(), [&](const ProjPoint& q) {
        return proj_distance(p, q) < 1e-6;
      });
      if (!seen) preimages.push_back(p);
    }
  }
  // A base point would take up part of the d^n intersection count.
  if (preimages.size() == expected) return true;
  if (suspect) return false;
  throw NumericalError("morphism check inconclusive: found " + std::to_string(preimages.size()) +
                       " simple preimages of a generic point, expected " +
                       std::to_string(expected));
}

}  // namespace woodshole
