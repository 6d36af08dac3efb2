#include "tworiem/curvature.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"
#include "tworiem/catalog.hpp"

using namespace tworiem;
using testutil::kXY;
using testutil::sf;
using testutil::vf;

namespace {

const Box kBoxXY{{-2.0, 2.0}, {-2.0, 2.0}};

std::vector<Point> pts10() { return sample_points(kBoxXY, 10, 42); }

}  // namespace

TEST_CASE("curvature is antisymmetric and vanishes on equal arguments") {
  TwoMetric g = TwoMetric::standard(2);
  Pseudoconnection conn = metric_pseudoconnection(g);
  VectorField X = vf({"x*y", "1"}, kXY);
  VectorField Y = vf({"y", "x^2"}, kXY);
  VectorField Z = vf({"1", "x"}, kXY);
  VectorField W1 = vf({"0", "1"}, kXY);
  VectorField W2 = vf({"1", "0"}, kXY);

  D2Element same = curvature(conn, X, X, Z);
  CHECK(max_abs_over(same(W1, W2), pts10()) < 1e-10);

  D2Element anti = curvature(conn, X, Y, Z) + curvature(conn, Y, X, Z);
  CHECK(max_abs_over(anti(W1, W2), pts10()) < 1e-9);
}

TEST_CASE("the differential of the principal homomorphism is flat") {
  for (const auto& nm : catalog::metrics(2)) {
    Pseudoconnection dP =
        differential_pseudoconnection(principal_homomorphism(nm.metric), 2);
    VectorField X = vf({"x*y", "1"}, kXY);
    VectorField Y = vf({"y", "x^2"}, kXY);
    VectorField Z = vf({"1", "x"}, kXY);
    VectorField W1 = vf({"0", "1"}, kXY);
    VectorField W2 = vf({"x", "0"}, kXY);
    D2Element r = curvature(dP, X, Y, Z);
    CHECK(max_abs_over(r(W1, W2), pts10()) < 1e-8);
  }
}

TEST_CASE("flat candidates with principal P^g coincide with its differential") {
  TwoMetric g = TwoMetric::standard(2);
  auto P = principal_homomorphism(g);
  Pseudoconnection dP = differential_pseudoconnection(P, 2);

  // candidate 1: ∂P rebuilt through the fundamental split (disguised copy)
  Pseudoconnection disguised{2,
                             [P](const VectorField& X, const VectorField& s) {
                               return derive_along(X, P(s)) + D2Element::zero(2);
                             },
                             P};
  // candidate 2: a bilinear perturbation of ∂P
  auto T = [](const VectorField& X, const VectorField& Y) {
    return D2Element{2, [X, Y](const VectorField& Z, const VectorField& W) {
                       return X[0] * Y[0] * Z[0] * W[0];
                     }};
  };
  Pseudoconnection bent = add_bilinear_term(dP, T);
  // candidate 3: the metric pseudoconnection itself
  Pseudoconnection nab = metric_pseudoconnection(g);

  VectorField X = vf({"x", "y"}, kXY);
  VectorField Y = vf({"y", "x"}, kXY);
  VectorField Z = vf({"y", "1"}, kXY);
  VectorField W1 = vf({"1", "1"}, kXY);
  VectorField W2 = vf({"x", "0"}, kXY);

  auto curvature_level = [&](const Pseudoconnection& c) {
    return max_abs_over(curvature(c, X, Y, Z)(W1, W2), pts10());
  };
  auto matches_dP = [&](const Pseudoconnection& c) {
    D2Element d = c.apply(X, Y) - dP.apply(X, Y);
    return max_abs_over(d(W1, W2), pts10());
  };

  CHECK(curvature_level(disguised) < 1e-8);
  CHECK(matches_dP(disguised) < 1e-8);

  CHECK(curvature_level(bent) > 1e-3);    // perturbation is visibly non-flat
  CHECK(curvature_level(nab) > 1e-3);     // and so is the metric pseudoconnection
}

TEST_CASE("curvature properties on one catalog tuple") {
  TwoMetric g = TwoMetric::standard(2);
  Pseudoconnection conn = metric_pseudoconnection(g);
  VectorField X = vf({"x", "1"}, kXY);
  VectorField Y = vf({"0", "x*y"}, kXY);
  VectorField Z = vf({"y", "x"}, kXY);
  VectorField W1 = vf({"1", "0"}, kXY);
  VectorField W2 = vf({"0", "1"}, kXY);
  ScalarField f = sf("x", kXY);
  CurvaturePropertyReport rep =
      curvature_property_residuals(conn, X, Y, Z, W1, W2, f, pts10());
  CHECK(rep.trilinear < 1e-9);
  CHECK(rep.antisym < 1e-7);
  CHECK(rep.fun_linear < 1e-7);
  CHECK(rep.third_slot < 1e-7);
  CHECK(rep.bianchi < 1e-7);

  // constant fields: everything is identically zero
  VectorField c1 = vf({"1", "0"}, kXY);
  VectorField c2 = vf({"0", "1"}, kXY);
  VectorField c3 = vf({"1", "1"}, kXY);
  CurvaturePropertyReport zero =
      curvature_property_residuals(conn, c1, c2, c3, c1, c2, sf("2", kXY), pts10());
  CHECK(zero.worst() < 1e-12);
}

TEST_CASE("partial_nabla is function-bilinear") {
  TwoMetric g = TwoMetric::standard(2);
  Pseudoconnection conn = metric_pseudoconnection(g);
  auto dnabla = partial_nabla(conn);
  ScalarField phi = sf("1 + x*y/2", kXY);
  VectorField X = vf({"x", "1"}, kXY);
  VectorField s = vf({"y", "x^2"}, kXY);
  VectorField W1 = vf({"0", "1"}, kXY);
  VectorField W2 = vf({"1", "0"}, kXY);

  D2Element a = dnabla(phi * X, s) - phi * dnabla(X, s);
  CHECK(max_abs_over(a(W1, W2), pts10()) < 1e-9);
  D2Element b = dnabla(X, phi * s) - phi * dnabla(X, s);
  CHECK(max_abs_over(b(W1, W2), pts10()) < 1e-9);

  // ∂(∂P) = 0
  Pseudoconnection dP = differential_pseudoconnection(conn.principal, 2);
  auto zero = partial_nabla(dP);
  CHECK(max_abs_over(zero(X, s)(W1, W2), pts10()) < 1e-12);
}

TEST_CASE("ordinary curvature") {
  OrdinaryPseudoconnection flat = flat_connection(2);
  VectorField X = vf({"x*y", "1"}, kXY);
  VectorField Y = vf({"y", "x^2"}, kXY);
  VectorField Z = vf({"1", "x"}, kXY);

  // Leibniz precondition: holds for the flat connection and for conformal
  // shifts (their correction is C∞-linear in Y), fails once a section-blind
  // term is added
  ScalarField phi = sf("1 + x*y/2", kXY);
  CHECK(ordinary_leibniz_residual(flat, phi, X, Y, pts10()) < 1e-12);
  OrdinaryPseudoconnection shifted = conformal_shift(flat, sf("exp(x)", kXY));
  CHECK(ordinary_leibniz_residual(shifted, phi, X, Y, pts10()) < 1e-12);
  OrdinaryPseudoconnection skew{2, [](const VectorField& A, const VectorField& B) {
                                  VectorField base = flat_connection(2)(A, B);
                                  return base + A[0] * VectorField::constant(
                                                           2, Point{1.0, 0.0});
                                }};
  CHECK(ordinary_leibniz_residual(skew, phi, X, Y, pts10()) > 0.05);

  VectorField r = ordinary_curvature(flat, X, Y, Z);
  VectorField rsame = ordinary_curvature(flat, X, X, Z);
  for (const Point& p : pts10())
    for (int i = 0; i < 2; ++i) {
      CHECK(std::fabs(r.at(p)[i]) < 1e-10);
      CHECK(std::fabs(rsame.at(p)[i]) < 1e-10);
    }

  // round sphere-like metric curves
  auto cs = kXY;
  ScalarField conf = sf("1 / (1 + x^2 + y^2)^2", cs);
  InnerProductField round{2, {{conf, sf("0", cs)}, {sf("0", cs), conf}}};
  OrdinaryPseudoconnection th = riemannian_connection(round);
  VectorField e1 = vf({"1", "0"}, kXY);
  VectorField e2 = vf({"0", "1"}, kXY);
  VectorField rc = ordinary_curvature(th, e1, e2, e2);
  // oracle: round metric has constant curvature 4; R(e1,e2)e2 = K·h(e2,e2)·e1
  // at the origin h = I, so the first component is 4
  Vec<double> v = rc.at({0.0, 0.0});
  CHECK(v[0] == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("koszul comparison formula") {
  auto cs = kXY;
  VectorField X = vf({"x", "1"}, kXY);
  VectorField Y = vf({"0", "x*y"}, kXY);
  VectorField Z = vf({"y", "x"}, kXY);
  VectorField W = vf({"1", "y"}, kXY);

  InnerProductField id2 = InnerProductField::identity(2);
  CHECK(koszul_comparison_residual(id2, X, Y, Z, W, pts10()) < 1e-8);

  VectorField c1 = vf({"1", "0"}, kXY);
  VectorField c2 = vf({"0", "1"}, kXY);
  VectorField c3 = vf({"1", "1"}, kXY);
  CHECK(koszul_comparison_residual(id2, c1, c2, c3, c1, pts10()) < 1e-12);

  InnerProductField poly{2,
                         {{sf("1 + x^2/4", cs), sf("x*y/8", cs)},
                          {sf("x*y/8", cs), sf("1 + y^2/4", cs)}}};
  CHECK(koszul_comparison_residual(poly, X, Y, Z, W, pts10()) < 1e-7);

  ScalarField conf = sf("1 / (1 + x^2 + y^2)^2", cs);
  InnerProductField round{2, {{conf, sf("0", cs)}, {sf("0", cs), conf}}};
  CHECK(koszul_comparison_residual(round, X, Y, Z, W, pts10()) < 1e-7);
}

TEST_CASE("koszul obstruction report") {
  TwoMetric g = TwoMetric::standard(2);
  ObstructionReport rep =
      koszul_obstruction(g, catalog::basic_fields(2), pts10());
  CHECK(rep.principal_diag_max < 1e-10);
  CHECK(rep.connection_diag_max > 0.1);
  CHECK_FALSE(rep.witness_x.empty());

  // a field vanishing identically gives ∇_X Y = 0: the trivial instance
  Pseudoconnection conn = metric_pseudoconnection(g);
  VectorField zero = VectorField::zero(2);
  VectorField Y = vf({"y", "x^2"}, kXY);
  VectorField e1 = vf({"1", "0"}, kXY);
  VectorField e2 = vf({"0", "1"}, kXY);
  CHECK(max_abs_over(conn.apply(zero, Y)(e1, e2), pts10()) < 1e-12);
  CHECK(max_abs_over(conn.apply(Y, zero)(e1, e2), pts10()) < 1e-12);
}

TEST_CASE("invariance under 2-isometries") {
  std::vector<Point> pts = sample_points(kBoxXY, 6, 42);
  VectorField X = vf({"x", "1"}, kXY);
  VectorField Y = vf({"0", "x"}, kXY);
  VectorField Z = vf({"y", "x"}, kXY);
  VectorField W = vf({"1", "0"}, kXY);
  VectorField T = vf({"0", "1"}, kXY);

  TwoMetric gst = TwoMetric::standard(2);

  SUBCASE("identity map") {
    Diffeo id = Diffeo::create(vf({"x", "y"}, kXY), vf({"x", "y"}, kXY), kBoxXY);
    auto [cres, rres] = isometry_invariance_residual(id, gst, gst, X, Y, Z, W, T, pts);
    CHECK(cres < 1e-10);
    CHECK(rres < 1e-10);
  }

  SUBCASE("rotation preserves the standard metric") {
    double th = 0.7, c = std::cos(th), s = std::sin(th);
    auto num = [](double v) {
      std::ostringstream os;
      os.precision(17);
      os << v;
      return os.str();
    };
    Diffeo rot = Diffeo::create(
        vf({num(c) + "*x - " + num(s) + "*y", num(s) + "*x + " + num(c) + "*y"}, kXY),
        vf({num(c) + "*x + " + num(s) + "*y", "(0 - " + num(s) + ")*x + " + num(c) + "*y"}, kXY),
        kBoxXY);
    auto [cres, rres] = isometry_invariance_residual(rot, gst, gst, X, Y, Z, W, T, pts);
    CHECK(cres < 1e-7);
    CHECK(rres < 1e-7);
  }

  SUBCASE("scaling against its own pullback") {
    Diffeo sc = Diffeo::create(vf({"2*x", "2*y"}, kXY), vf({"x/2", "y/2"}, kXY), kBoxXY);
    TwoMetric g = pullback_metric(sc, gst);
    auto [cres, rres] = isometry_invariance_residual(sc, g, gst, X, Y, Z, W, T, pts);
    CHECK(cres < 1e-7);
    CHECK(rres < 1e-7);
  }

  SUBCASE("non-isometries are refused") {
    Diffeo sc = Diffeo::create(vf({"2*x", "2*y"}, kXY), vf({"x/2", "y/2"}, kXY), kBoxXY);
    CHECK_THROWS_AS(
        isometry_invariance_residual(sc, gst, gst, X, Y, Z, W, T, pts),
        PreconditionFailed);
  }
}

TEST_CASE("nonzero-curvature witness search succeeds on every catalog metric") {
  auto grid = catalog::grid_points(kBoxXY, 5);
  auto tuples = catalog::curvature_tuples(2);
  REQUIRE(tuples.size() <= 64);
  for (const auto& nm : catalog::metrics(2)) {
    CurvatureWitness w = find_nonzero_curvature(nm.metric, tuples, grid, 0.1);
    INFO("metric ", nm.name);
    CHECK(w.found);
    CHECK(w.normalized > 0.1);
  }
}

TEST_CASE("line-bundle fundamental pseudoconnections and their curvature") {
  const int n = 2;
  TwoMetric g = TwoMetric::standard(n);
  VectorField e1 = vf({"1", "0"}, kXY);
  D2Element dval = principal_element(g, e1);

  // evaluation form: zero curvature
  std::function<D2Element(const VectorField&)> omega_d =
      [dval](const VectorField& A) { return derive_along(A, dval); };
  auto apply_exact = [dval, omega_d](const VectorField& X, const ScalarField& f) {
    return fundamental_line(dval, omega_d, X, f);
  };
  VectorField X = vf({"x", "1"}, kXY);
  VectorField Y = vf({"0", "x*y"}, kXY);
  ScalarField f = sf("x + y^2", kXY);
  VectorField W1 = vf({"0", "1"}, kXY);
  VectorField W2 = vf({"1", "0"}, kXY);
  D2Element r0 = line_curvature<D2Element>(apply_exact, X, Y, f);
  CHECK(max_abs_over(r0(W1, W2), pts10()) < 1e-9);

  // generic 1-form: curvature equals (ω_d − ω)(df(X,Y)) + f·dω(X,Y)
  ScalarField xf = sf("x", kXY);
  std::function<D2Element(const VectorField&)> omega =
      [g, xf](const VectorField& A) { return xf * principal_element(g, A); };
  auto apply_gen = [dval, omega](const VectorField& Xa, const ScalarField& fa) {
    return fundamental_line(dval, omega, Xa, fa);
  };
  D2Element lhs = line_curvature<D2Element>(apply_gen, X, Y, f);
  VectorField dfXY = df_two_form(f, X, Y);
  D2Element domega = derive_along(X, omega(Y)) - derive_along(Y, omega(X)) -
                     omega(lie_bracket(X, Y));
  D2Element rhs = (omega_d(dfXY) - omega(dfXY)) + f * domega;
  CHECK(max_abs_over((lhs - rhs)(W1, W2), pts10()) < 1e-8);
}
