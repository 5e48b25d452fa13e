// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "woodshole/error.hpp"
#include "woodshole/foliation.hpp"
#include "woodshole/generate.hpp"
#include "woodshole/indices.hpp"
#include "woodshole/io.hpp"
#include "woodshole/solver.hpp"
#include "woodshole/suites.hpp"

using namespace woodshole;
using namespace woodshole::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int report(int id, const char* title, const Outcome& o) {
  std::printf("criterion %2d: %s  %s%s%s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.empty() ? "" : " | ",
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

struct EndoInstance {
  int n, d;
  std::uint64_t seed;
  ProjEndo f;
  std::vector<FixedPointRecord> points;
  bool solved = false;
  std::string error;
};

struct FieldInstance {
  int d;
  std::uint64_t seed;
  PlaneVectorField v;
};

const std::vector<std::pair<int, int>> kCensusClasses = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
constexpr int kPerClass = 50;

std::uint64_t endo_seed(int n, int d, int i) { return 100000ULL * static_cast<std::uint64_t>(10 * n + d) + i; }

std::vector<Complex> term_values(const VerificationEntry& e, const std::string& kind = "") {
  std::vector<Complex> out;
  for (const PointTerm& t : e.terms) {
    if (kind.empty() || t.kind == kind) out.push_back(t.value);
  }
  return out;
}

}  // namespace

int main() {
  int failures = 0;

  // Census corpus.
  std::vector<EndoInstance> endos;
  Outcome c1;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [n, d] : kCensusClasses) {
    for (int i = 0; i < kPerClass; ++i) {
      const std::uint64_t seed = endo_seed(n, d, i);
      EndoInstance inst{n, d, seed, random_endomorphism(n, d, seed), {}, false, {}};
      try {
        inst.points = fixed_points(inst.f);
        inst.solved = true;
      } catch (const Error& e) {
        inst.error = e.what();
      }
      endos.push_back(std::move(inst));
    }
  }
  const double census_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double min_det = INFINITY;
  for (const EndoInstance& e : endos) {
    const std::string tag = "n=" + std::to_string(e.n) + " d=" + std::to_string(e.d) + " seed=" + std::to_string(e.seed);
    if (!e.solved) {
      c1.fail(tag + ": " + e.error);
      continue;
    }
    if (static_cast<long long>(e.points.size()) != fixed_point_count(e.n, e.d)) {
      c1.fail(tag + ": " + std::to_string(e.points.size()) + " points");
    }
    for (const FixedPointRecord& r : e.points) {
      min_det = std::min(min_det, std::abs(r.det_i_minus_j));
      if (!(std::abs(r.det_i_minus_j) > kTransversalityThreshold)) c1.fail(tag + ": non-transversal point");
    }
  }
  if (census_seconds >= 60.0) c1.fail(fmt("census took %.1f s", census_seconds));
  if (c1.pass) {
    c1.detail = std::to_string(endos.size()) + " maps, " + fmt("min |det(I-J)| %.2e, ", min_det) +
                fmt("%.1f s", census_seconds);
  }
  failures += report(1, "fixed-point census", c1);

  // Lefschetz on the census corpus.
  Outcome c2;
  double worst2 = 0.0;
  for (const EndoInstance& e : endos) {
    if (!e.solved) {
      c2.fail("unsolved instance seed=" + std::to_string(e.seed));
      continue;
    }
    for (int k = 0; k <= e.n; ++k) {
      Complex sum = 0.0;
      for (const FixedPointRecord& r : e.points) sum += woods_hole_term(r.jacobian, k);
      const double scale = std::max(1.0, std::pow(static_cast<double>(e.d), k));
      const double res = std::abs(sum - lefschetz_rhs(e.n, e.d, k)) / scale;
      worst2 = std::max(worst2, res);
      if (!(res < 1e-6)) c2.fail("seed=" + std::to_string(e.seed) + " k=" + std::to_string(k) + fmt(" residual %.3e", res));
    }
  }
  if (c2.pass) c2.detail = fmt("worst scaled residual %.3e", worst2);
  failures += report(2, "generalized Lefschetz", c2);

  // Guillot on P^2.
  Outcome c3;
  double worst3 = 0.0;
  const std::vector<InvariantPolySpec> invariants = {
      InvariantPolySpec::monomial(2, {0, 0}), InvariantPolySpec::monomial(2, {1, 0}),
      InvariantPolySpec::monomial(2, {0, 1}), InvariantPolySpec::monomial(2, {2, 0})};
  int guillot_maps = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int i = 0; i < 20; ++i) {
      const std::uint64_t seed = 700000ULL + 1000ULL * d + i;
      try {
        const ProjEndo f = random_endomorphism(2, d, seed);
        const auto points = fixed_points(f);
        for (const VerificationEntry& e : guillot_entries(f, points, invariants, 1e-6)) {
          worst3 = std::max(worst3, e.residual / std::max(1.0, std::abs(e.rhs)));
          if (!e.pass) c3.fail("seed=" + std::to_string(seed) + " " + e.variant + fmt(" residual %.3e", e.residual));
        }
        ++guillot_maps;
      } catch (const Error& e) {
        c3.fail("seed=" + std::to_string(seed) + ": " + e.what());
      }
    }
  }
  if (c3.pass) c3.detail = std::to_string(guillot_maps) + " maps x 4 invariants, " + fmt("worst residual %.3e", worst3);
  failures += report(3, "Guillot relations", c3);

  // Random field corpus for criteria 4-6 and 8.
  std::vector<FieldInstance> fields;
  Outcome gen;
  for (int d = 2; d <= 3; ++d) {
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t seed = 800000ULL + 1000ULL * d + i;
      try {
        fields.push_back({d, seed, random_vector_field(d, seed).field});
      } catch (const Error& e) {
        gen.fail("field seed=" + std::to_string(seed) + ": " + e.what());
      }
    }
  }

  Outcome c4 = gen, c5 = gen, c6 = gen;
  double worst4 = 0.0, worst5 = 0.0, worst6 = 0.0;
  for (const FieldInstance& fi : fields) {
    const std::string tag = "d=" + std::to_string(fi.d) + " seed=" + std::to_string(fi.seed);
    try {
      for (const VerificationEntry& e : {verify_ej1(fi.v, {}, 1e-6), verify_ej2(fi.v, {}, 1e-6)}) {
        worst4 = std::max(worst4, e.residual);
        if (!(e.residual < 1e-6)) c4.fail(tag + " " + e.relation + fmt(" residual %.3e", e.residual));
      }
    } catch (const Error& e) {
      c4.fail(tag + ": " + e.what());
    }
    try {
      const VerificationEntry bb = verify_bb(fi.v, {}, 1e-5);
      const double res = std::abs(bb.lhs - static_cast<double>((fi.d + 2) * (fi.d + 2)));
      worst5 = std::max(worst5, res);
      if (!(res < 1e-5)) c5.fail(tag + fmt(" residual %.3e", res));
      if (static_cast<int>(bb.terms.size()) != fi.d * fi.d + fi.d + 1) {
        c5.fail(tag + ": " + std::to_string(bb.terms.size()) + " singularities");
      }
    } catch (const Error& e) {
      c5.fail(tag + ": " + e.what());
    }
    try {
      const VerificationEntry cs = verify_cs(fi.v, 1e-6);
      const double res = std::abs(cs.lhs - 1.0);
      worst6 = std::max(worst6, res);
      if (!(res < 1e-6)) c6.fail(tag + fmt(" residual %.3e", res));
    } catch (const Error& e) {
      c6.fail(tag + ": " + e.what());
    }
  }
  const std::string corpus = std::to_string(fields.size()) + " fields, ";
  if (c4.pass) c4.detail = corpus + fmt("worst residual %.3e", worst4);
  if (c5.pass) c5.detail = corpus + fmt("worst residual %.3e", worst5);
  if (c6.pass) c6.detail = corpus + fmt("worst residual %.3e", worst6);
  failures += report(4, "Euler-Jacobi", c4);
  failures += report(5, "Baum-Bott", c5);
  failures += report(6, "Camacho-Sad", c6);

  // Worked example.
  Outcome c7;
  try {
    const PlaneVectorField v = worked_example();
    if (!same_multiset(term_values(verify_ej1(v, {}, 1e-6)), {0.25, -0.25, -0.25, 0.25}, 1e-10)) {
      c7.fail("Euler-Jacobi 1 terms");
    }
    if (!same_multiset(term_values(verify_ej2(v, {}, 1e-6)), {1.0, 0.0, 0.0, -1.0}, 1e-10)) {
      c7.fail("Euler-Jacobi 2 terms");
    }
    const VerificationEntry bb = verify_bb(v, {}, 1e-5);
    if (!same_multiset(term_values(bb, "affine"), {4.0, 0.0, 0.0, 4.0}, 1e-10)) c7.fail("affine Baum-Bott terms");
    if (!same_multiset(term_values(bb, "infinity"), {4.0, 0.0, 4.0}, 1e-10)) c7.fail("Baum-Bott terms at infinity");
    if (!(std::abs(bb.lhs - 16.0) < 1e-10)) c7.fail(fmt("Baum-Bott sum off by %.3e", std::abs(bb.lhs - 16.0)));
    if (!same_multiset(term_values(verify_cs(v, 1e-6)), {1.0, -1.0, 1.0}, 1e-10)) c7.fail("Camacho-Sad terms");
  } catch (const Error& e) {
    c7.fail(e.what());
  }
  failures += report(7, "worked example (x^2-1, y^2-1)", c7);

  // Dv against Df_v - I.
  Outcome c8 = gen;
  double worst8 = 0.0;
  std::vector<PlaneVectorField> dv_corpus = {worked_example()};
  for (const FieldInstance& fi : fields) dv_corpus.push_back(fi.v);
  for (std::size_t i = 0; i < dv_corpus.size(); ++i) {
    try {
      const double gap = check_DvDf(dv_corpus[i]);
      worst8 = std::max(worst8, gap);
      if (!(gap < 1e-9)) c8.fail("field " + std::to_string(i) + fmt(" gap %.3e", gap));
    } catch (const Error& e) {
      c8.fail("field " + std::to_string(i) + ": " + e.what());
    }
  }
  if (c8.pass) c8.detail = std::to_string(dv_corpus.size()) + " fields, " + fmt("max gap %.3e", worst8);
  failures += report(8, "Dv = Df_v - I at affine zeros", c8);

  // Line restriction with a random radial term.
  Outcome c9;
  double worst9 = 0.0;
  int line_fields = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int i = 0; i < 20; ++i) {
      const std::uint64_t seed = 900000ULL + 1000ULL * d + i;
      try {
        const PlaneVectorField v = random_vector_field(d, seed).field;
        PathTrackerConfig cfg;
        cfg.seed = mix_seed(seed);
        const auto [hl, wh] = verify_cs_woodshole(v, std::nullopt, cfg, 1e-6);
        worst9 = std::max({worst9, hl.residual, wh.residual});
        if (!(std::abs(hl.lhs - 1.0) < 1e-6)) c9.fail("seed=" + std::to_string(seed) + fmt(" sum 1/(1-mu_t) off by %.3e", hl.residual));
        if (!(std::abs(wh.lhs) < 1e-6)) c9.fail("seed=" + std::to_string(seed) + fmt(" sum mu_n/(1-mu_t) = %.3e", std::abs(wh.lhs)));
        ++line_fields;
      } catch (const Error& e) {
        c9.fail("seed=" + std::to_string(seed) + ": " + e.what());
      }
    }
  }
  if (c9.pass) c9.detail = std::to_string(line_fields) + " fields, " + fmt("worst residual %.3e", worst9);
  failures += report(9, "line at infinity with random g", c9);

  // Property checks.
  Outcome c10;
  std::vector<std::string> parts;

  // Chart invariance of sigma_k at every census fixed point.
  {
    double worst = 0.0;
    int comparisons = 0;
    for (const EndoInstance& e : endos) {
      if (!e.solved) continue;
      for (const FixedPointRecord& r : e.points) {
        for (int chart = 0; chart <= e.n; ++chart) {
          if (chart == r.chart || std::abs(r.point.coords()[chart]) <= 0.1) continue;
          try {
            const CMatrix other = affine_jacobian(e.f, r.point, chart);
            for (int k = 0; k <= e.n; ++k) {
              const double err = rel_err(sigma_k(other, k), sigma_k(r.jacobian, k));
              worst = std::max(worst, err);
              ++comparisons;
              if (!(err < 1e-8)) c10.fail("chart invariance seed=" + std::to_string(e.seed) + fmt(" err %.3e", err));
            }
          } catch (const NumericalError&) {
            // F_chart vanishes at the point; that chart is not usable.
          }
        }
      }
    }
    parts.push_back(std::to_string(comparisons) + fmt(" chart comparisons (worst %.1e)", worst));
  }

  // Similarity invariance: sigma_k at the fixed points of A^{-1} f A.
  {
    Rng rng(4242);
    double worst = 0.0;
    int maps = 0;
    for (int n = 1; n <= 3; ++n) {
      for (int i = 0; i < 4; ++i) {
        const ProjEndo f = random_endomorphism(n, 2, 990000ULL + 10ULL * n + i);
        // Well-conditioned conjugator, so the comparison measures invariance and not solver conditioning.
        const CMatrix a = CMatrix::Identity(n + 1, n + 1) + 0.3 * random_matrix(n + 1, rng);
        try {
          const auto pf = fixed_points(f);
          const auto pg = fixed_points(conjugate(f, a));
          for (int k = 0; k <= n; ++k) {
            std::vector<Complex> sf, sg;
            for (const auto& r : pf) sf.push_back(sigma_k(r.jacobian, k));
            for (const auto& r : pg) sg.push_back(sigma_k(r.jacobian, k));
            // Match each value to its nearest partner; relative error against max(1, |value|).
            for (Complex x : sf) {
              double best = INFINITY;
              for (Complex y : sg) best = std::min(best, rel_err(y, x));
              worst = std::max(worst, best);
            }
            if (sf.size() != sg.size()) c10.fail("similarity invariance n=" + std::to_string(n) + ": census differs");
          }
          ++maps;
        } catch (const Error& e) {
          c10.fail(std::string("similarity invariance: ") + e.what());
        }
        const CMatrix m = random_matrix(n, rng), p = random_matrix(n, rng);
        const CMatrix conj = p * m * p.inverse();
        for (int k = 0; k <= n; ++k) {
          const double err = rel_err(sigma_k(conj, k), sigma_k(m, k));
          if (!(err < 1e-8)) c10.fail("matrix similarity invariance" + fmt(" err %.3e", err));
        }
      }
    }
    if (!(worst < 1e-8)) c10.fail(fmt("similarity invariance worst %.3e", worst));
    parts.push_back(std::to_string(maps) + fmt(" conjugated maps (worst %.1e)", worst));
  }

  // Generator scaling leaves Baum-Bott and Camacho-Sad indices unchanged.
  {
    Rng rng(4343);
    double worst = 0.0;
    for (const FieldInstance& fi : fields) {
      const Complex kappa = rng.complex_gaussian();
      try {
        std::vector<SingularityRecord> recs = affine_singularities(fi.v);
        for (const auto& r : infinity_singularities(fi.v)) recs.push_back(r);
        for (const SingularityRecord& r : recs) {
          const Complex bb = bb_index(r.linearization);
          const double e1 = std::abs(bb_index(kappa * r.linearization) - bb) / std::max(1.0, std::abs(bb));
          worst = std::max(worst, e1);
          if (!(e1 < 1e-12)) c10.fail("Baum-Bott scaling" + fmt(" err %.3e", e1));
          if (r.kind == SingularityRecord::Kind::kInfinity) {
            const Complex cs = cs_index(r.lambda_tangent, r.lambda_normal);
            const double e2 = std::abs(cs_index(kappa * r.lambda_tangent, kappa * r.lambda_normal) - cs) /
                              std::max(1.0, std::abs(cs));
            worst = std::max(worst, e2);
            if (!(e2 < 1e-12)) c10.fail("Camacho-Sad scaling" + fmt(" err %.3e", e2));
          }
        }
      } catch (const Error& e) {
        c10.fail(std::string("scaling: ") + e.what());
      }
    }
    parts.push_back(fmt("scaling worst %.1e", worst));
  }

  // Bezout accounting: every path ends in exactly one bucket.
  {
    Rng rng(4444);
    int systems = 0;
    for (int vars = 1; vars <= 3; ++vars) {
      for (int i = 0; i < 5; ++i) {
        std::vector<MultiPoly> sys;
        int bezout = 1;
        for (int j = 0; j < vars; ++j) {
          const int deg = 1 + (i + j) % 3;
          sys.push_back(random_poly(vars, deg, rng));
          bezout *= deg;
        }
        try {
          const AffineSolutionSet s = solve_square(sys, {});
          const int total = static_cast<int>(s.solutions.size()) + s.paths_diverged + s.failures + s.singular_endpoints;
          if (s.paths_tracked != bezout || total != bezout) c10.fail("Bezout accounting vars=" + std::to_string(vars));
          if (static_cast<int>(s.solutions.size()) != bezout) c10.fail("dense system lost roots");
          ++systems;
        } catch (const Error& e) {
          c10.fail(std::string("Bezout accounting: ") + e.what());
        }
      }
    }
    const std::vector<MultiPoly> deficient = {MultiPoly(2, {{{1, 1}, 1.0}, {{0, 0}, -1.0}}),
                                              MultiPoly(2, {{{1, 0}, 1.0}, {{0, 0}, -2.0}})};
    const AffineSolutionSet s = solve_square(deficient, {});
    if (s.paths_tracked != 2 || s.solutions.size() != 1 || s.paths_diverged != 1) {
      c10.fail("Bezout accounting with a root at infinity");
    }
    parts.push_back(std::to_string(systems + 1) + " Bezout systems");
  }

  // Determinism of full reports.
  {
    SuiteOptions opts;
    opts.tracker.seed = 20261018;
    const ProjEndo f = random_endomorphism(2, 3, 31337);
    const PlaneVectorField v = random_vector_field(3, 31337).field;
    const std::string a = io::report_to_json(verify_endomorphism(VerifyTarget::kGuillot, f, opts)).dump(2) +
                          io::report_to_json(verify_endomorphism(VerifyTarget::kLefschetz, f, opts)).dump(2);
    const std::string b = io::report_to_json(verify_endomorphism(VerifyTarget::kGuillot, f, opts)).dump(2) +
                          io::report_to_json(verify_endomorphism(VerifyTarget::kLefschetz, f, opts)).dump(2);
    const std::string c = io::report_to_json(verify_vector_field(VerifyTarget::kAll, v, opts)).dump(2);
    const std::string d = io::report_to_json(verify_vector_field(VerifyTarget::kAll, v, opts)).dump(2);
    const std::string e = fixed_points_to_json(summarize_fixed_points(f, opts.tracker), opts.tracker.seed).dump(2);
    const std::string g = fixed_points_to_json(summarize_fixed_points(f, opts.tracker), opts.tracker.seed).dump(2);
    if (a != b || c != d || e != g) c10.fail("reports differ between runs");
    parts.push_back("byte-identical reports");
  }

  if (c10.pass) {
    for (std::size_t i = 0; i < parts.size(); ++i) c10.detail += (i ? ", " : "") + parts[i];
  }
  failures += report(10, "invariance, accounting and determinism properties", c10);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
