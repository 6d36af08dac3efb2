#pragma once

#include <array>
#include <string>
#include <utility>

#include "tworiem/connection.hpp"

namespace tworiem {

// R(X,Y)s = X(∇_Y s) − Y(∇_X s) − ∇_{[X,Y]} s, valued in D²(M). The outer
// derivatives go through the composed-evaluator mechanism, so they cost one
// jet level each.
inline D2Element curvature(const Pseudoconnection& conn, const VectorField& X,
                           const VectorField& Y, const VectorField& s) {
  return derive_along(X, conn.apply(Y, s)) -
         derive_along(Y, conn.apply(X, s)) -
         conn.apply(lie_bracket(X, Y), s);
}

// ∂∇ = ∂P − ∇: the C∞-bilinear defect of ∇ against its own flat model.
inline std::function<D2Element(const VectorField&, const VectorField&)>
partial_nabla(const Pseudoconnection& conn) {
  auto P = conn.principal;
  auto apply = conn.apply;
  return [P, apply](const VectorField& X, const VectorField& s) {
    return derive_along(X, P(s)) - apply(X, s);
  };
}

// Residuals of the curvature laws on one field tuple. `s` slots are tangent
// fields; W1,W2 fill the D² slots; f is the function entering (3) and (4).
struct CurvaturePropertyReport {
  double trilinear = 0.0;      // (1) on sampled sums/scalings
  double antisym = 0.0;        // (2) R(X,Y)s + R(Y,X)s
  double fun_linear = 0.0;     // (3) R(fX,Y)s − f·R(X,Y)s
  double third_slot = 0.0;     // (4) R(X,Y)(fs) − ∂∇(df(X,Y),s) − f·R(X,Y)s
  double bianchi = 0.0;        // (5) cyclic sums, torsion-free case

  double worst() const {
    return std::max({trilinear, antisym, fun_linear, third_slot, bianchi});
  }
};

inline CurvaturePropertyReport curvature_property_residuals(
    const Pseudoconnection& conn, const VectorField& X, const VectorField& Y,
    const VectorField& Z, const VectorField& W1, const VectorField& W2,
    const ScalarField& f, const std::vector<Point>& pts) {
  CurvaturePropertyReport rep;
  auto dnabla = partial_nabla(conn);

  D2Element rxy = curvature(conn, X, Y, Z);

  {  // (1) R is ℝ-trilinear: test additivity and scaling in each slot
    D2Element a = curvature(conn, X + Y, Y, Z) - curvature(conn, X, Y, Z) -
                  curvature(conn, Y, Y, Z);
    D2Element b = curvature(conn, 2.5 * X, Y, Z) - 2.5 * curvature(conn, X, Y, Z);
    D2Element c = curvature(conn, X, Y, Z + W1) - curvature(conn, X, Y, Z) -
                  curvature(conn, X, Y, W1);
    rep.trilinear = std::max({max_abs_over(a(W1, W2), pts),
                              max_abs_over(b(W1, W2), pts),
                              max_abs_over(c(W1, W2), pts)});
  }
  {  // (2)
    D2Element d = rxy + curvature(conn, Y, X, Z);
    rep.antisym = max_abs_over(d(W1, W2), pts);
  }
  {  // (3)
    D2Element d = curvature(conn, f * X, Y, Z) - f * rxy;
    rep.fun_linear = max_abs_over(d(W1, W2), pts);
  }
  {  // (4)
    D2Element d = curvature(conn, X, Y, f * Z) - dnabla(df_two_form(f, X, Y), Z) -
                  f * rxy;
    rep.third_slot = max_abs_over(d(W1, W2), pts);
  }
  {  // (5) requires ∇ torsion free
    D2Element lhs = rxy + curvature(conn, Y, Z, X) + curvature(conn, Z, X, Y);
    D2Element rhs = dnabla(X, lie_bracket(Y, Z)) +
                    dnabla(Y, lie_bracket(Z, X)) +
                    dnabla(Z, lie_bracket(X, Y));
    rep.bianchi = max_abs_over((lhs - rhs)(W1, W2), pts);
  }
  return rep;
}

// Sampled Leibniz defect |θ_X(φY) − X(φ)Y − φθ_X Y|: zero exactly when θ is
// an ordinary connection rather than a mere pseudoconnection. Callers of
// ordinary_curvature are expected to hold this near zero.
inline double ordinary_leibniz_residual(const OrdinaryPseudoconnection& theta,
                                        const ScalarField& phi,
                                        const VectorField& X,
                                        const VectorField& Y,
                                        const std::vector<Point>& pts) {
  VectorField d = theta(X, phi * Y) - directional_derivative(X, phi) * Y -
                  phi * theta(X, Y);
  double m = 0.0;
  for (const Point& p : pts) {
    Vec<double> v = d.at(p);
    for (int i = 0; i < d.dim(); ++i) m = std::max(m, std::fabs(v[i]));
  }
  return m;
}

// Curvature of an ordinary connection: θ_X θ_Y Z − θ_Y θ_X Z − θ_{[X,Y]} Z.
inline VectorField ordinary_curvature(const OrdinaryPseudoconnection& theta,
                                      const VectorField& X, const VectorField& Y,
                                      const VectorField& Z) {
  return theta(X, theta(Y, Z)) - theta(Y, theta(X, Z)) -
         theta(lie_bracket(X, Y), Z);
}

// --- the k=1 pseudoconnection of an inner product ----------------------------

struct PseudoconnectionD1 {
  int dim = 0;
  std::function<D1Element(const VectorField&, const VectorField&)> apply;
  std::function<D1Element(const VectorField&)> principal;
};

// Unique torsion-free compatible Ω¹-pseudoconnection with P(X)(Y) = h(X,Y);
// its k=1 formula is the undivided Koszul expression.
inline PseudoconnectionD1 inner_pseudoconnection(const InnerProductField& h) {
  PseudoconnectionD1 conn;
  conn.dim = h.dim;
  conn.principal = [h](const VectorField& X) {
    return D1Element{h.dim, [h, X](const VectorField& Y) { return h.pair(X, Y); }};
  };
  conn.apply = [h](const VectorField& X, const VectorField& Y) {
    VectorField brXY = lie_bracket(X, Y);
    return D1Element{
        h.dim, [h, X, Y, brXY](const VectorField& W) {
          ScalarField t1 = directional_derivative(X, h.pair(Y, W));
          ScalarField t2 = directional_derivative(Y, h.pair(W, X));
          ScalarField t3 = directional_derivative(W, h.pair(X, Y));
          ScalarField t4 = h.pair(brXY, W);
          ScalarField t5 = h.pair(lie_bracket(W, X), Y);
          ScalarField t6 = h.pair(lie_bracket(Y, W), X);
          return 0.5 * (t1 + t2 - t3 + t4 + t5 - t6);
        }};
  };
  return conn;
}

inline D1Element curvature(const PseudoconnectionD1& conn, const VectorField& X,
                           const VectorField& Y, const VectorField& s) {
  return derive_along(X, conn.apply(Y, s)) -
         derive_along(Y, conn.apply(X, s)) -
         conn.apply(lie_bracket(X, Y), s);
}

// Comparison of the k=1 pseudoconnection curvature with the ordinary
// curvature of the Riemannian connection θ of h:
//   R^{∇h}(X,Y)Z(W) = h(R^θ(X,Y)Z, W) + h(θ_X W, θ_Y Z) − h(θ_Y W, θ_X Z).
inline double koszul_comparison_residual(const InnerProductField& h,
                                         const VectorField& X,
                                         const VectorField& Y,
                                         const VectorField& Z,
                                         const VectorField& W,
                                         const std::vector<Point>& pts) {
  PseudoconnectionD1 nh = inner_pseudoconnection(h);
  OrdinaryPseudoconnection theta = riemannian_connection(h);
  ScalarField lhs = curvature(nh, X, Y, Z)(W);
  ScalarField rhs = h.pair(ordinary_curvature(theta, X, Y, Z), W) +
                    h.pair(theta(X, W), theta(Y, Z)) -
                    h.pair(theta(Y, W), theta(X, Z));
  return max_abs_over(lhs - rhs, pts);
}

// --- Koszul-obstruction diagnostics -------------------------------------------

struct NamedField {
  std::string name;
  VectorField field;
};

struct ObstructionReport {
  // (a) diagonal values of the principal homomorphism: expected ≈ 0
  double principal_diag_max = 0.0;
  // (b) diagonal values of the pseudoconnection: a nonzero witness proves
  //     ∇_X Y is not of the form P(A)
  double connection_diag_max = 0.0;
  std::string witness_x, witness_y, witness_z;
  Point witness_point;
  double witness_value = 0.0;
};

inline ObstructionReport koszul_obstruction(const TwoMetric& g,
                                            const std::vector<NamedField>& fields,
                                            const std::vector<Point>& pts) {
  ObstructionReport rep;
  auto P = principal_homomorphism(g);
  Pseudoconnection conn = metric_pseudoconnection(g);
  for (const NamedField& A : fields)
    for (const NamedField& Z : fields) {
      ScalarField diag = P(A.field)(Z.field, Z.field);
      rep.principal_diag_max = std::max(rep.principal_diag_max,
                                        max_abs_over(diag, pts));
    }
  for (const NamedField& X : fields)
    for (const NamedField& Y : fields) {
      D2Element nab = conn.apply(X.field, Y.field);
      for (const NamedField& Z : fields) {
        ScalarField diag = nab(Z.field, Z.field);
        for (const Point& p : pts) {
          double v = std::fabs(diag.at(p));
          if (v > rep.connection_diag_max) {
            rep.connection_diag_max = v;
            rep.witness_x = X.name;
            rep.witness_y = Y.name;
            rep.witness_z = Z.name;
            rep.witness_point = p;
            rep.witness_value = diag.at(p);
          }
        }
      }
    }
  return rep;
}

// --- invariance under 2-isometries ---------------------------------------------

// Residuals of the pullback identities for the pseudoconnection and its
// curvature. The map is first certified to be a 2-isometry by comparing the
// pullback metric with g at the sample points.
inline std::pair<double, double> isometry_invariance_residual(
    const Diffeo& phi, const TwoMetric& g, const TwoMetric& gbar,
    const VectorField& X, const VectorField& Y, const VectorField& Z,
    const VectorField& W, const VectorField& T, const std::vector<Point>& pts,
    double pre_tol = 1e-8) {
  const int n = g.dim();
  TwoMetric pulled = pullback_metric(phi, gbar);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ScalarField d = pulled.component_field(i, j, k) -
                        g.component_field(i, j, k);
        if (max_abs_over(d, pts) > pre_tol)
          throw PreconditionFailed("map is not a 2-isometry of the given metrics");
      }

  Pseudoconnection cg = metric_pseudoconnection(g);
  Pseudoconnection cgbar = metric_pseudoconnection(gbar);
  VectorField fX = push_forward(phi, X);
  VectorField fY = push_forward(phi, Y);
  VectorField fZ = push_forward(phi, Z);
  VectorField fW = push_forward(phi, W);
  VectorField fT = push_forward(phi, T);

  ScalarField conn_here = cg.apply(X, Y)(Z, W);
  ScalarField conn_there = compose(cgbar.apply(fX, fY)(fZ, fW), phi.forward());
  double conn_res = max_abs_over(conn_here - conn_there, pts);

  ScalarField curv_here = curvature(cg, X, Y, Z)(W, T);
  ScalarField curv_there =
      compose(curvature(cgbar, fX, fY, fZ)(fW, fT), phi.forward());
  double curv_res = max_abs_over(curv_here - curv_there, pts);

  return {conn_res, curv_res};
}

// --- deterministic nonzero-curvature search -------------------------------------

struct CurvatureWitness {
  bool found = false;
  int tuple_index = -1;
  Point point;
  double raw_value = 0.0;
  double normalized = 0.0;
  std::array<std::string, 5> names;
};

// Sweeps tuples × grid in declaration order and returns the first witness
// whose magnitude, normalized by the field sizes at the point, clears the
// threshold; otherwise reports the best value seen.
inline CurvatureWitness find_nonzero_curvature(
    const TwoMetric& g, const std::vector<std::array<NamedField, 5>>& tuples,
    const std::vector<Point>& grid, double threshold = 0.1) {
  Pseudoconnection conn = metric_pseudoconnection(g);
  CurvatureWitness best;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& tup = tuples[t];
    D2Element r = curvature(conn, tup[0].field, tup[1].field, tup[2].field);
    ScalarField val = r(tup[3].field, tup[4].field);
    for (const Point& p : grid) {
      double raw = val.at(p);
      double scale = 1.0;
      for (const NamedField& nf : tup) {
        Vec<double> v = nf.field.at(p);
        double norm2 = 0.0;
        for (int i = 0; i < v.n; ++i) norm2 += v[i] * v[i];
        scale *= std::max(1.0, std::sqrt(norm2));
      }
      double normalized = std::fabs(raw) / scale;
      if (normalized > best.normalized) {
        best.normalized = normalized;
        best.raw_value = raw;
        best.tuple_index = static_cast<int>(t);
        best.point = p;
        for (int i = 0; i < 5; ++i) best.names[static_cast<std::size_t>(i)] = tup[static_cast<std::size_t>(i)].name;
      }
      if (normalized > threshold) {
        best.found = true;
        return best;
      }
    }
  }
  best.found = best.normalized > threshold;
  return best;
}

}  // namespace tworiem
