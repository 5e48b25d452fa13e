#include "doctest.h"
#include "test_util.hpp"
#include "woodshole/error.hpp"
#include "woodshole/foliation.hpp"
#include "woodshole/generate.hpp"
#include "woodshole/indices.hpp"
#include "woodshole/projgeom.hpp"
#include "woodshole/solver.hpp"

using namespace woodshole;
using namespace woodshole::testing;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v[i++] = x;
  return v;
}

ProjEndo squaring_p1() {
  return ProjEndo({MultiPoly(2, {{{2, 0}, 1.0}}), MultiPoly(2, {{{0, 2}, 1.0}})});
}

}  // namespace

TEST_SUITE("projgeom") {

TEST_CASE("normalize") {
  CHECK((ProjPoint::normalize(vec({0, 3, 0})).coords() - vec({0, 1, 0})).norm() < 1e-15);
  CHECK((ProjPoint::normalize(vec({2, 0})).coords() - vec({1, 0})).norm() < 1e-15);
  CHECK((ProjPoint::normalize(vec({Complex(0, 1), 0, 0})).coords() - vec({1, 0, 0})).norm() < 1e-15);
  CHECK_THROWS_AS(ProjPoint::normalize(vec({0, 0})), InputError);
}

TEST_CASE("normalize invariants and idempotence") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    CVector x(3);
    for (int k = 0; k < 3; ++k) x[k] = rng.complex_gaussian();
    const ProjPoint p = ProjPoint::normalize(x);
    CHECK(std::abs(p.coords().norm() - 1.0) < 1e-12);
    const int lead = p.best_chart();
    CHECK(p.coords()[lead].imag() == 0.0);
    CHECK(p.coords()[lead].real() >= 0.0);
    CHECK((ProjPoint::normalize(p.coords()).coords() - p.coords()).norm() < 1e-14);
    const Complex lambda = rng.complex_gaussian();
    CHECK((ProjPoint::normalize(lambda * x).coords() - p.coords()).norm() < 1e-13);
  }
}

TEST_CASE("proj_distance") {
  const ProjPoint a = ProjPoint::normalize(vec({1, 0}));
  const ProjPoint b = ProjPoint::normalize(vec({0, 1}));
  const ProjPoint c = ProjPoint::normalize(vec({1, 1}));
  CHECK(proj_distance(a, a) == doctest::Approx(0.0));
  CHECK(proj_distance(a, b) == doctest::Approx(1.0));
  CHECK(proj_distance(a, c) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(proj_distance(c, a) == doctest::Approx(proj_distance(a, c)));
  CHECK_THROWS_AS(proj_distance(a, ProjPoint::normalize(vec({1, 0, 0}))), InputError);
}

TEST_CASE("proj_distance agrees with the Fubini-Study sine") {
  Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    CVector x(3), y(3);
    for (int k = 0; k < 3; ++k) {
      x[k] = rng.complex_gaussian();
      y[k] = rng.complex_gaussian();
    }
    const ProjPoint p = ProjPoint::normalize(x), q = ProjPoint::normalize(y);
    const double inner = std::abs(p.coords().dot(q.coords()));
    CHECK(proj_distance(p, q) == doctest::Approx(std::sqrt(std::max(0.0, 1.0 - inner * inner))).epsilon(1e-10));
  }
}

TEST_CASE("apply") {
  const ProjEndo f = squaring_p1();
  const ProjPoint e0 = ProjPoint::normalize(vec({1, 0}));
  CHECK(proj_distance(apply(f, e0), e0) < 1e-15);
  const ProjPoint diag = ProjPoint::normalize(vec({1, 1}));
  CHECK(proj_distance(apply(f, diag), diag) < 1e-15);

  const ProjEndo fv = build_fv(worked_example());
  const ProjPoint ones = ProjPoint::normalize(vec({1, 1, 1}));
  CHECK(proj_distance(apply(fv, ones), ones) < 1e-15);
}

TEST_CASE("apply respects representatives") {
  Rng rng(23);
  const ProjEndo f = random_endomorphism(2, 3, 99);
  CVector x(3);
  for (int k = 0; k < 3; ++k) x[k] = rng.complex_gaussian();
  const ProjPoint image = apply(f, ProjPoint::normalize(x));
  for (int i = 0; i < 100; ++i) {
    const Complex lambda = rng.complex_gaussian();
    CHECK(proj_distance(apply(f, ProjPoint::normalize(lambda * x)), image) < 1e-10);
  }
}

TEST_CASE("apply near a base point is a numerical error") {
  const ProjEndo f({MultiPoly(2, {{{0, 1}, 1.0}}), MultiPoly(2, {{{0, 1}, 1.0}})});
  CHECK_THROWS_AS(apply(f, ProjPoint::normalize(vec({1, 0}))), NumericalError);
}

TEST_CASE("affine_jacobian") {
  const ProjEndo f = squaring_p1();
  const CMatrix j0 = affine_jacobian(f, ProjPoint::normalize(vec({1, 0})), 0);
  CHECK(std::abs(j0(0, 0)) < 1e-15);
  const CMatrix j1 = affine_jacobian(f, ProjPoint::normalize(vec({1, 1})), 0);
  CHECK(std::abs(j1(0, 0) - 2.0) < 1e-14);

  const ProjEndo fv = build_fv(worked_example());
  const CMatrix j = affine_jacobian(fv, ProjPoint::normalize(vec({1, 1, 1})), 0);
  CHECK((j - Complex(3.0) * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(affine_jacobian(f, ProjPoint::normalize(vec({0, 1})), 0), NumericalError);
}

TEST_CASE("affine_jacobian matches finite differences") {
  const ProjEndo f = random_endomorphism(2, 2, 5);
  const CVector a = vec({Complex(0.3, 0.1), Complex(-0.2, 0.4)});
  const CMatrix jac = affine_jacobian_at(f, a, 0);
  auto g = [&](const CVector& y) {
    CVector x(3);
    x << 1.0, y[0], y[1];
    const CVector v = f.evaluate(x);
    CVector out(2);
    out << v[1] / v[0], v[2] / v[0];
    return out;
  };
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    CVector ap = a, am = a;
    ap[k] += h;
    am[k] -= h;
    const CVector col = (g(ap) - g(am)) / (2 * h);
    CHECK((col - jac.col(k)).norm() < 1e-7 * std::max(1.0, col.norm()));
  }
}

TEST_CASE("check_morphism") {
  const ProjEndo identity({MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)});
  CHECK(check_morphism(identity));
  const ProjEndo degenerate({MultiPoly::variable(2, 1), MultiPoly::variable(2, 1)});
  CHECK_FALSE(check_morphism(degenerate));
  CHECK(check_morphism(build_fv(worked_example())));
  // Common zero at [1:0:0].
  const ProjEndo base({MultiPoly(3, {{{1, 1, 0}, 1.0}}), MultiPoly(3, {{{0, 2, 0}, 1.0}}),
                       MultiPoly(3, {{{0, 0, 2}, 1.0}})});
  CHECK_FALSE(check_morphism(base));
  for (std::uint64_t s = 1; s <= 5; ++s) CHECK(check_morphism(random_endomorphism(3, 2, s)));
}

TEST_CASE("check_morphism accepts badly conditioned conjugates") {
  // Large cancelling coefficients; the conjugate of a morphism is still one.
  Rng rng(4243);
  CMatrix a = random_matrix(4, rng);
  a.col(3) = a.col(2) + 0.02 * a.col(3);
  const ProjEndo g = conjugate(random_endomorphism(3, 2, 990033), a);
  CHECK(g.coefficient_scale() > 1e2);
  CHECK(check_morphism(g));
}

TEST_CASE("endomorphism validation") {
  CHECK_THROWS_AS(ProjEndo({MultiPoly::variable(2, 0)}), InputError);
  CHECK_THROWS_AS(ProjEndo({MultiPoly(2, {{{1, 0}, 1.0}, {{0, 0}, 1.0}}), MultiPoly::variable(2, 1)}), InputError);
  CHECK_THROWS_AS(ProjEndo({MultiPoly(2, {{{2, 0}, 1.0}}), MultiPoly::variable(2, 1)}), InputError);
  CHECK_THROWS_AS(ProjEndo({MultiPoly(2), MultiPoly(2)}), InputError);
  CHECK_THROWS_AS(ProjEndo({MultiPoly::variable(3, 0), MultiPoly::variable(3, 1)}), InputError);
}

TEST_CASE("sigma_k at fixed points is chart independent") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const ProjEndo f = random_endomorphism(2, 2, s);
    for (const FixedPointRecord& rec : fixed_points(f)) {
      for (int chart = 0; chart <= 2; ++chart) {
        if (std::abs(rec.point.coords()[chart]) <= 0.1 || chart == rec.chart) continue;
        const CMatrix other = affine_jacobian(f, rec.point, chart);
        for (int k = 0; k <= 2; ++k) {
          CHECK(rel_err(sigma_k(other, k), sigma_k(rec.jacobian, k)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("points are fixed iff listed by the solver") {
  const ProjEndo f = random_endomorphism(2, 2, 31);
  const auto points = fixed_points(f);
  for (const FixedPointRecord& rec : points) CHECK(proj_distance(apply(f, rec.point), rec.point) < 1e-10);
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    CVector x(3);
    for (int k = 0; k < 3; ++k) x[k] = rng.complex_gaussian();
    const ProjPoint p = ProjPoint::normalize(x);
    const bool listed = std::any_of(points.begin(), points.end(),
                                    [&](const FixedPointRecord& r) { return proj_distance(r.point, p) < 1e-6; });
    CHECK_FALSE(listed);
    CHECK(proj_distance(apply(f, p), p) > 1e-10);
  }
}

}  // TEST_SUITE
