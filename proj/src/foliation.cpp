#include "woodshole/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "woodshole/error.hpp"
#include "woodshole/indices.hpp"
#include "woodshole/random.hpp"
#include "woodshole/solver.hpp"

namespace woodshole {

namespace {

// Below this relative size p_d(0, 1) counts as zero and [0:0:1] is singular.
constexpr double kCornerCutoff = 1e-12;
constexpr double kMinAffineDet = 1e-6;
constexpr int kRadialAttempts = 10;

std::vector<Complex> to_std(const CVector& v) {
  return std::vector<Complex>(v.data(), v.data() + v.size());
}

void require_non_dicritic(const PlaneVectorField& v) {
  if (v.degree() == MultiPoly::kZeroDegree || v.degree() < 1) {
    throw InputError("vector field must have degree at least 1");
  }
  if (v.is_dicritic()) {
    throw HypothesisError("field is dicritic: the line at infinity is not invariant");
  }
}

// Singularities of (-u*Pstar, Qstar - w*Pstar) at u = 0, w = each root.
std::vector<SingularityRecord> chart_singularities(const PlaneVectorField& v, const std::vector<Complex>& roots,
                                                   bool swapped) {
  const InfinityChartParts parts = infinity_chart_parts(v);
  const MultiPoly u = MultiPoly::variable(2, 0);
  const MultiPoly w = MultiPoly::variable(2, 1);
  const MultiPoly normal_part = -(u * parts.pstar);
  const MultiPoly tangent_part = parts.qstar - w * parts.pstar;
  const MultiPoly a_u = partial(normal_part, 0), a_w = partial(normal_part, 1);
  const MultiPoly b_u = partial(tangent_part, 0), b_w = partial(tangent_part, 1);

  std::vector<SingularityRecord> out;
  for (Complex w0 : roots) {
    const Complex at[] = {Complex(0.0), w0};
    SingularityRecord rec;
    rec.kind = SingularityRecord::Kind::kInfinity;
    rec.chart = swapped ? 2 : 1;
    rec.w = w0;
    CVector proj(3);
    // Swapped coordinates exchange x1 and x2.
    if (swapped) {
      proj << 0.0, w0, 1.0;
    } else {
      proj << 0.0, 1.0, w0;
    }
    rec.point = ProjPoint::normalize(proj);
    rec.linearization.resize(2, 2);
    rec.linearization << eval(a_u, at), eval(a_w, at), eval(b_u, at), eval(b_w, at);
    rec.lambda_normal = rec.linearization(0, 0);
    rec.lambda_tangent = rec.linearization(1, 1);
    rec.det = rec.linearization.determinant();
    rec.tr = rec.linearization.trace();
    rec.cs = cs_index(rec.lambda_tangent, rec.lambda_normal);
    rec.bb = bb_index(rec.linearization);
    out.push_back(std::move(rec));
  }
  return out;
}

PointTerm singularity_term(const SingularityRecord& s, Complex value) {
  if (s.kind == SingularityRecord::Kind::kAffine) return {"affine", to_std(s.affine), value};
  return {"infinity", to_std(s.point.coords()), value};
}

void require_ej_hypotheses(const PlaneVectorField& v, const VfZeroSet& zeros) {
  if (zeros.degenerate) {
    throw HypothesisError("Euler-Jacobi needs d^2 non-degenerate zeros: " + zeros.diagnostic);
  }
  for (const VfZero& z : zeros.zeros) {
    if (!(std::abs(z.det) > kMinAffineDet)) {
      throw HypothesisError("degenerate zero: |det Dv| <= 1e-6");
    }
  }
  (void)v;
}

VfZeroSet ej_zeros(const PlaneVectorField& v, const PathTrackerConfig& cfg) {
  if (v.degree() == MultiPoly::kZeroDegree || v.degree() < 2) {
    throw HypothesisError("Euler-Jacobi relations require degree d >= 2 (got d = " +
                          std::to_string(std::max(v.degree(), 0)) + ")");
  }
  VfZeroSet zeros = vf_zeros(v, cfg);
  require_ej_hypotheses(v, zeros);
  return zeros;
}

bool x0_divides(const MultiPoly& p) {
  if (p.is_zero()) return true;
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& kv) { return kv.first[0] >= 1; });
}

}  // namespace

ProjEndo build_fv(const PlaneVectorField& v, const PathTrackerConfig& cfg) {
  const int d = v.degree();
  if (d == MultiPoly::kZeroDegree || d < 1) throw InputError("f_v needs a field of degree at least 1");
  Exponent x0d{d, 0, 0};
  const MultiPoly f0 = MultiPoly::monomial(3, x0d, 1.0);
  const MultiPoly shift1 = MultiPoly::monomial(3, {d - 1, 1, 0}, 1.0);
  const MultiPoly shift2 = MultiPoly::monomial(3, {d - 1, 0, 1}, 1.0);
  ProjEndo f({f0, homogenize(v.P(), d, 0) + shift1, homogenize(v.Q(), d, 0) + shift2});
  if (!check_morphism(f, cfg)) throw HypothesisError("f_v has base points; the field is too degenerate");
  return f.with_morphism_flag(true);
}

FxiMap build_fxi(const MultiPoly& p0, const MultiPoly& p1, const MultiPoly& p2, const PathTrackerConfig& cfg) {
  ProjEndo f({p0, p1, p2});
  if (!check_morphism(f, cfg)) throw HypothesisError("f_xi has base points (common zero of P0, P1, P2)");
  return {f.with_morphism_flag(true), !p0.is_zero() && x0_divides(p0)};
}

ProjEndo radial_modify(const ProjEndo& f, const MultiPoly& g, const PathTrackerConfig& cfg) {
  if (f.dim() != 2) throw InputError("radial modification is defined on P^2");
  if (g.num_vars() != 3) throw InputError("radial factor must be a polynomial in x0, x1, x2");
  if (g.is_zero()) return f;
  if (!g.is_homogeneous() || g.total_degree() != f.degree() - 1) {
    throw InputError("radial factor must be homogeneous of degree d - 1 = " + std::to_string(f.degree() - 1));
  }
  std::vector<MultiPoly> comps;
  for (int i = 0; i < 3; ++i) comps.push_back(f.component(i) + g * MultiPoly::variable(3, i));
  ProjEndo out(std::move(comps));
  if (!check_morphism(out, cfg)) throw HypothesisError("radial modification introduced base points");
  return out.with_morphism_flag(true);
}

MultiPoly random_radial_form(int d, Rng& rng) {
  if (d < 1) throw InputError("radial factor needs d >= 1");
  std::vector<std::pair<Exponent, Complex>> terms;
  for (const Exponent& e : monomials_of_degree(3, d - 1)) terms.emplace_back(e, rng.complex_gaussian());
  return MultiPoly(3, terms);
}

std::vector<SingularityRecord> affine_singularities(const PlaneVectorField& v, const PathTrackerConfig& cfg) {
  const VfZeroSet zeros = vf_zeros(v, cfg);
  if (zeros.degenerate) throw HypothesisError("degenerate affine singularities: " + zeros.diagnostic);
  std::vector<SingularityRecord> out;
  for (const VfZero& z : zeros.zeros) {
    SingularityRecord rec;
    rec.kind = SingularityRecord::Kind::kAffine;
    rec.point = lift_from_chart(z.point, 0);
    rec.affine = z.point;
    rec.linearization = z.dv;
    rec.det = z.det;
    rec.tr = z.dv.trace();
    rec.lambda_tangent = rec.lambda_normal = Complex(0.0);
    rec.bb = bb_index(z.dv);
    rec.cs = Complex(0.0);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SingularityRecord> infinity_singularities(const PlaneVectorField& v) {
  require_non_dicritic(v);
  const int d = v.degree();
  const double scale = std::max(v.top_p().coefficient_scale(), v.top_q().coefficient_scale());
  const Complex corner = v.top_p().coefficient({0, d});
  const bool corner_singular = std::abs(corner) <= kCornerCutoff * scale;

  // h(w) = q_d(1, w) - w p_d(1, w); its roots are the singularities in the
  // chart x1 != 0.
  std::vector<std::pair<Exponent, Complex>> h_terms;
  for (const auto& [e, c] : v.top_q().terms()) h_terms.push_back({{e[1]}, c});
  for (const auto& [e, c] : v.top_p().terms()) {
    if (corner_singular && e[1] == d) continue;
    h_terms.push_back({{e[1] + 1}, -c});
  }
  const MultiPoly h(1, h_terms);

  std::vector<Complex> roots;
  if (!h.is_zero() && h.total_degree() >= 1) {
    const UnivariateRoots r = univariate_roots(h);
    if (r.repeated) throw HypothesisError("repeated singularity on the line at infinity (degenerate)");
    roots = r.roots;
  }
  std::vector<SingularityRecord> out = chart_singularities(v, roots, false);
  if (corner_singular) {
    const std::vector<SingularityRecord> corner_recs = chart_singularities(swap_axes(v), {Complex(0.0)}, true);
    out.insert(out.end(), corner_recs.begin(), corner_recs.end());
  }
  return out;
}

VerificationEntry verify_ej1(const PlaneVectorField& v, const PathTrackerConfig& cfg, double tol) {
  const VfZeroSet zeros = ej_zeros(v, cfg);
  std::vector<PointTerm> terms;
  for (const VfZero& z : zeros.zeros) terms.push_back({"affine", to_std(z.point), 1.0 / z.det});
  return make_entry(relation::kEulerJacobi1, "sum 1/det Dv", std::move(terms), 0.0, tol);
}

VerificationEntry verify_ej2(const PlaneVectorField& v, const PathTrackerConfig& cfg, double tol) {
  const VfZeroSet zeros = ej_zeros(v, cfg);
  std::vector<PointTerm> terms;
  for (const VfZero& z : zeros.zeros) terms.push_back({"affine", to_std(z.point), z.dv.trace() / z.det});
  return make_entry(relation::kEulerJacobi2, "sum tr Dv/det Dv", std::move(terms), 0.0, tol);
}

VerificationEntry verify_bb(const PlaneVectorField& v, const PathTrackerConfig& cfg, double tol) {
  require_non_dicritic(v);
  const int d = v.degree();
  const std::vector<SingularityRecord> affine = affine_singularities(v, cfg);
  const std::vector<SingularityRecord> infinity = infinity_singularities(v);
  const std::size_t census = affine.size() + infinity.size();
  const auto expected = static_cast<std::size_t>(d * d + d + 1);
  if (census != expected) {
    throw HypothesisError("singularity census " + std::to_string(census) + " differs from d^2 + d + 1 = " +
                          std::to_string(expected));
  }
  std::vector<PointTerm> terms;
  for (const auto& s : affine) terms.push_back(singularity_term(s, s.bb));
  for (const auto& s : infinity) terms.push_back(singularity_term(s, s.bb));
  const double rhs = static_cast<double>((d + 2) * (d + 2));
  return make_entry(relation::kBaumBott, "sum tr^2/det", std::move(terms), rhs, tol);
}

VerificationEntry verify_cs(const PlaneVectorField& v, double tol) {
  std::vector<PointTerm> terms;
  for (const auto& s : infinity_singularities(v)) terms.push_back(singularity_term(s, s.cs));
  return make_entry(relation::kCamachoSad, "sum lambda_n/lambda_t on L", std::move(terms), 1.0, tol);
}

std::vector<LineFixedPoint> line_fixed_points(const ProjEndo& f, const PathTrackerConfig& cfg) {
  if (f.dim() != 2) throw InputError("line restriction is defined for endomorphisms of P^2");
  if (!x0_divides(f.component(0))) {
    throw HypothesisError("line x0 = 0 is not totally invariant (x0 does not divide F0)");
  }
  const ProjEndo restricted({restrict_to_zero(f.component(1), 0), restrict_to_zero(f.component(2), 0)});
  std::vector<LineFixedPoint> out;
  for (const FixedPointRecord& rec : fixed_points(restricted, cfg)) {
    CVector lifted(3);
    lifted << 0.0, rec.point.coords()[0], rec.point.coords()[1];
    const ProjPoint p = ProjPoint::normalize(lifted);
    const CMatrix jac = affine_jacobian(f, p, p.best_chart());
    const Complex mu_t = rec.jacobian(0, 0);
    out.push_back({p, mu_t, jac.trace() - mu_t});
  }
  return out;
}

std::pair<VerificationEntry, VerificationEntry> verify_cs_woodshole(const PlaneVectorField& v,
                                                                    const std::optional<MultiPoly>& g,
                                                                    const PathTrackerConfig& cfg, double tol) {
  require_non_dicritic(v);
  const ProjEndo fv = build_fv(v, cfg);
  ProjEndo f = fv;
  if (g.has_value()) {
    f = radial_modify(fv, *g, cfg);
  } else {
    Rng rng(mix_seed(cfg.seed ^ 0x7261646961ULL));
    bool built = false;
    for (int attempt = 0; attempt < kRadialAttempts && !built; ++attempt) {
      try {
        f = radial_modify(fv, random_radial_form(v.degree(), rng), cfg);
        built = true;
      } catch (const HypothesisError&) {
      }
    }
    if (!built) throw HypothesisError("no base-point-free radial modification found");
  }

  std::vector<PointTerm> lefschetz_terms, conormal_terms;
  for (const LineFixedPoint& lp : line_fixed_points(f, cfg)) {
    const Complex denom = 1.0 - lp.mu_tangent;
    if (!(std::abs(denom) > kTransversalityThreshold)) {
      throw HypothesisError("restricted map has a non-transversal fixed point on L");
    }
    lefschetz_terms.push_back({"line", to_std(lp.point.coords()), 1.0 / denom});
    conormal_terms.push_back({"line", to_std(lp.point.coords()), lp.mu_normal / denom});
  }
  return {make_entry(relation::kCamachoSad, "Woods Hole on L, structure sheaf", std::move(lefschetz_terms), 1.0,
                     tol),
          make_entry(relation::kCamachoSad, "Woods Hole on L, conormal sheaf", std::move(conormal_terms), 0.0,
                     tol)};
}

double check_DvDf(const PlaneVectorField& v, const PathTrackerConfig& cfg) {
  const ProjEndo fv = build_fv(v, cfg);
  double worst = 0.0;
  for (const VfZero& z : vf_zeros(v, cfg).zeros) {
    const CMatrix df = affine_jacobian_at(fv, z.point, 0);
    const CMatrix diff = z.dv - (df - CMatrix::Identity(2, 2));
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace woodshole
