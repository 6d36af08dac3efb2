#pragma once

#include <functional>
#include <vector>

#include "tworiem/metric.hpp"

namespace tworiem {

// Element of D²(M): a map from two vector fields to a scalar field, kept as
// a closure because the slot dependence of pseudoconnection values involves
// derivatives of the slot fields and cannot be stored as coefficients.
struct D2Element {
  int dim = 0;
  std::function<ScalarField(const VectorField&, const VectorField&)> slots;

  ScalarField operator()(const VectorField& a, const VectorField& b) const {
    if (!slots) throw Error("empty D2 element");
    return slots(a, b);
  }

  static D2Element zero(int n) {
    return {n, [n](const VectorField&, const VectorField&) {
              return ScalarField::constant(n, 0.0);
            }};
  }
};

inline D2Element operator+(const D2Element& a, const D2Element& b) {
  return {a.dim, [a, b](const VectorField& u, const VectorField& v) {
            return a(u, v) + b(u, v);
          }};
}
inline D2Element operator-(const D2Element& a, const D2Element& b) {
  return {a.dim, [a, b](const VectorField& u, const VectorField& v) {
            return a(u, v) - b(u, v);
          }};
}
inline D2Element operator*(const ScalarField& f, const D2Element& a) {
  return {a.dim, [f, a](const VectorField& u, const VectorField& v) {
            return f * a(u, v);
          }};
}
inline D2Element operator*(double c, const D2Element& a) {
  return {a.dim, [c, a](const VectorField& u, const VectorField& v) {
            return c * a(u, v);
          }};
}

// X(d): the slotwise directional derivative.
inline D2Element derive_along(const VectorField& X, const D2Element& d) {
  return {d.dim, [X, d](const VectorField& u, const VectorField& v) {
            return directional_derivative(X, d(u, v));
          }};
}

// Element of D¹(M).
struct D1Element {
  int dim = 0;
  std::function<ScalarField(const VectorField&)> slot;

  ScalarField operator()(const VectorField& a) const {
    if (!slot) throw Error("empty D1 element");
    return slot(a);
  }
  static D1Element zero(int n) {
    return {n, [n](const VectorField&) { return ScalarField::constant(n, 0.0); }};
  }
};

inline D1Element operator+(const D1Element& a, const D1Element& b) {
  return {a.dim, [a, b](const VectorField& u) { return a(u) + b(u); }};
}
inline D1Element operator-(const D1Element& a, const D1Element& b) {
  return {a.dim, [a, b](const VectorField& u) { return a(u) - b(u); }};
}
inline D1Element operator*(const ScalarField& f, const D1Element& a) {
  return {a.dim, [f, a](const VectorField& u) { return f * a(u); }};
}
inline D1Element derive_along(const VectorField& X, const D1Element& d) {
  return {d.dim, [X, d](const VectorField& u) {
            return directional_derivative(X, d(u));
          }};
}

// Tangent-bundle pseudoconnection valued in D²(M), bundled with its
// principal homomorphism.
struct Pseudoconnection {
  int dim = 0;
  std::function<D2Element(const VectorField&, const VectorField&)> apply;
  std::function<D2Element(const VectorField&)> principal;

  D2Element operator()(const VectorField& X, const VectorField& Y) const {
    return apply(X, Y);
  }
};

// P^g: A ↦ ((Y,Z) ↦ g(A,Y/Z)).
inline std::function<D2Element(const VectorField&)> principal_homomorphism(
    const TwoMetric& g) {
  return [g](const VectorField& A) {
    return D2Element{g.dim(), [g, A](const VectorField& Y, const VectorField& Z) {
                       return g_scalar_field(g, A, Y, Z);
                     }};
  };
}

inline D2Element principal_element(const TwoMetric& g, const VectorField& A) {
  return principal_homomorphism(g)(A);
}

// The unique torsion-free compatible pseudoconnection of a 2-Riemannian
// metric:
//   ∇_X Y(Z,W) = ½{ Xg(Y,Z/W) + Yg(Z,X/W) − Zg(X,Y/W)
//                 + g([X,Y],Z/W) + g([Z,X],Y/W) − g([Y,Z],X/W) }.
inline Pseudoconnection metric_pseudoconnection(const TwoMetric& g) {
  Pseudoconnection conn;
  conn.dim = g.dim();
  conn.principal = principal_homomorphism(g);
  conn.apply = [g](const VectorField& X, const VectorField& Y) {
    VectorField brXY = lie_bracket(X, Y);
    return D2Element{
        g.dim(), [g, X, Y, brXY](const VectorField& Z, const VectorField& W) {
          ScalarField t1 = directional_derivative(X, g_scalar_field(g, Y, Z, W));
          ScalarField t2 = directional_derivative(Y, g_scalar_field(g, Z, X, W));
          ScalarField t3 = directional_derivative(Z, g_scalar_field(g, X, Y, W));
          ScalarField t4 = g_scalar_field(g, brXY, Z, W);
          ScalarField t5 = g_scalar_field(g, lie_bracket(Z, X), Y, W);
          ScalarField t6 = g_scalar_field(g, lie_bracket(Y, Z), X, W);
          return 0.5 * (t1 + t2 - t3 + t4 + t5 - t6);
        }};
  };
  return conn;
}

// ∂P: (X,s) ↦ X(P(s)), flat by construction, principal homomorphism P.
inline Pseudoconnection differential_pseudoconnection(
    std::function<D2Element(const VectorField&)> P, int dim) {
  Pseudoconnection conn;
  conn.dim = dim;
  conn.principal = P;
  conn.apply = [P](const VectorField& X, const VectorField& s) {
    return derive_along(X, P(s));
  };
  return conn;
}

// ∇ shifted by a C∞-bilinear perturbation; the principal homomorphism is
// unchanged, which is what makes the uniqueness experiments meaningful.
inline Pseudoconnection add_bilinear_term(
    const Pseudoconnection& conn,
    std::function<D2Element(const VectorField&, const VectorField&)> term) {
  Pseudoconnection out = conn;
  auto base = conn.apply;
  out.apply = [base, term](const VectorField& X, const VectorField& Y) {
    return base(X, Y) + term(X, Y);
  };
  return out;
}

// --- residual sweeps ---------------------------------------------------------

inline double max_abs_over(const ScalarField& f, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const Point& p : pts) m = std::max(m, std::fabs(f.at(p)));
  return m;
}

// |(∇_X Y − ∇_Y X − P([X,Y]))(Z,W)|
inline double torsion_residual(const Pseudoconnection& conn,
                               const std::function<D2Element(const VectorField&)>& P,
                               const VectorField& X, const VectorField& Y,
                               const VectorField& Z, const VectorField& W,
                               const std::vector<Point>& pts) {
  D2Element d = conn.apply(X, Y) - conn.apply(Y, X) - P(lie_bracket(X, Y));
  return max_abs_over(d(Z, W), pts);
}

// |X(P(Y)(X1,X2)) − ∇_X Y(X1,X2) − ∇_X X1(Y,X2)|
inline double compatibility_residual(
    const Pseudoconnection& conn,
    const std::function<D2Element(const VectorField&)>& P, const VectorField& X,
    const VectorField& Y, const VectorField& X1, const VectorField& X2,
    const std::vector<Point>& pts) {
  ScalarField lhs = directional_derivative(X, P(Y)(X1, X2));
  ScalarField rhs = conn.apply(X, Y)(X1, X2) + conn.apply(X, X1)(Y, X2);
  return max_abs_over(lhs - rhs, pts);
}

// |P(X)(X1,X2) − P(X1)(X,X2)|
inline double symmetry_residual(
    const std::function<D2Element(const VectorField&)>& P, const VectorField& X,
    const VectorField& X1, const VectorField& X2,
    const std::vector<Point>& pts) {
  return max_abs_over(P(X)(X1, X2) - P(X1)(X, X2), pts);
}

// Pseudoconnection axioms sampled on one field tuple: returns the largest of
// the additivity, module-rule and Leibniz residuals.
inline double module_rules_residual(
    const Pseudoconnection& conn,
    const std::function<D2Element(const VectorField&)>& P, const ScalarField& phi,
    const VectorField& X, const VectorField& Xp, const VectorField& Y,
    const VectorField& Yp, const VectorField& Z, const VectorField& W,
    const std::vector<Point>& pts) {
  double worst = 0.0;
  {  // additivity in X
    D2Element d = conn.apply(X + Xp, Y) - conn.apply(X, Y) - conn.apply(Xp, Y);
    worst = std::max(worst, max_abs_over(d(Z, W), pts));
  }
  {  // additivity in s
    D2Element d = conn.apply(X, Y + Yp) - conn.apply(X, Y) - conn.apply(X, Yp);
    worst = std::max(worst, max_abs_over(d(Z, W), pts));
  }
  {  // ∇_{φX}s = φ∇_X s
    D2Element d = conn.apply(phi * X, Y) - phi * conn.apply(X, Y);
    worst = std::max(worst, max_abs_over(d(Z, W), pts));
  }
  {  // ∇_X(φs) = X(φ)P(s) + φ∇_X s
    D2Element d = conn.apply(X, phi * Y) -
                  directional_derivative(X, phi) * P(Y) - phi * conn.apply(X, Y);
    worst = std::max(worst, max_abs_over(d(Z, W), pts));
  }
  return worst;
}

// D²₀ membership of the values: C∞-linearity in the first slot.
inline double d20_linearity_residual(const D2Element& d, const ScalarField& phi,
                                     const VectorField& Z, const VectorField& W,
                                     const std::vector<Point>& pts) {
  ScalarField lhs = d(phi * Z, W);
  ScalarField rhs = phi * d(Z, W);
  return max_abs_over(lhs - rhs, pts);
}

// --- trivial line bundle ------------------------------------------------------

// ∇_X f = X(f)·d + f·ω(X), sections being scalar functions. Works for D¹ and
// D² valued elements alike.
template <class Elem>
Elem fundamental_line(const Elem& dval,
                      const std::function<Elem(const VectorField&)>& omega,
                      const VectorField& X, const ScalarField& f) {
  return directional_derivative(X, f) * dval + f * omega(X);
}

// Curvature of a line-bundle pseudoconnection given as (X,f) ↦ element.
template <class Elem>
Elem line_curvature(
    const std::function<Elem(const VectorField&, const ScalarField&)>& apply,
    const VectorField& X, const VectorField& Y, const ScalarField& f) {
  return derive_along(X, apply(Y, f)) - derive_along(Y, apply(X, f)) -
         apply(lie_bracket(X, Y), f);
}

// --- ordinary pseudoconnections ------------------------------------------------

struct OrdinaryPseudoconnection {
  int dim = 0;
  std::function<VectorField(const VectorField&, const VectorField&)> apply;

  VectorField operator()(const VectorField& X, const VectorField& Y) const {
    return apply(X, Y);
  }
};

// θ_X Y = (X(Y_1), ..., X(Y_n)): the flat Euclidean connection.
inline OrdinaryPseudoconnection flat_connection(int dim) {
  return {dim, [](const VectorField& X, const VectorField& Y) {
            std::vector<ScalarField> cs;
            for (int i = 0; i < Y.dim(); ++i)
              cs.push_back(directional_derivative(X, Y[i]));
            return VectorField(std::move(cs));
          }};
}

// Field of inner products h_ij plus the scalar field h(A,B).
struct InnerProductField {
  int dim = 0;
  std::vector<std::vector<ScalarField>> entries;

  static InnerProductField identity(int n) {
    InnerProductField h;
    h.dim = n;
    for (int i = 0; i < n; ++i) {
      std::vector<ScalarField> row;
      for (int j = 0; j < n; ++j)
        row.push_back(ScalarField::constant(n, i == j ? 1.0 : 0.0));
      h.entries.push_back(std::move(row));
    }
    return h;
  }

  const ScalarField& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  ScalarField pair(const VectorField& A, const VectorField& B) const {
    ScalarField acc = ScalarField::constant(dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) acc = acc + (*this)(i, j) * A[i] * B[j];
    return acc;
  }

  int depth() const {
    int d = kJetTowerDepth;
    for (const auto& row : entries)
      for (const auto& f : row) d = std::min(d, f.depth());
    return d;
  }
};

namespace detail {

// Cofactor inverse of a small ring-valued symmetric matrix.
template <class S>
void invert_small(int n, const std::array<std::array<S, kMaxDim>, kMaxDim>& m,
                  std::array<std::array<S, kMaxDim>, kMaxDim>& out) {
  if (n == 2) {
    S det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    S inv = recip(det);
    out[0][0] = m[1][1] * inv;
    out[1][1] = m[0][0] * inv;
    out[0][1] = -m[0][1] * inv;
    out[1][0] = -m[1][0] * inv;
    return;
  }
  S c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  S c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  S c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  S det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  S inv = recip(det);
  out[0][0] = c00 * inv;
  out[1][0] = c01 * inv;
  out[2][0] = c02 * inv;
  out[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv;
  out[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv;
  out[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv;
  out[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv;
  out[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv;
  out[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv;
}

}  // namespace detail

// Christoffel symbol Γ^k_ij of an inner-product field, via jets and the
// cofactor inverse: ½ Σ_l h^{kl} (∂_i h_jl + ∂_j h_il − ∂_l h_ij).
inline ScalarField christoffel_symbol(const InnerProductField& h, int k, int i,
                                      int j) {
  const int n = h.dim;
  InnerProductField hc = h;
  return ScalarField::from_levels(
      n, h.depth() - 1, [hc, n, k, i, j](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        using S = ring_t<K>;
        if constexpr (K + 1 <= kJetTowerDepth) {
          using JS = ring_t<K + 1>;
          // values and first partials of every entry
          std::array<std::array<S, kMaxDim>, kMaxDim> hv;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              hv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                  hc(a, b).template eval<K>(p);
          S dh[kMaxDim][kMaxDim][kMaxDim];  // dh[a][b][c] = ∂_c h_ab
          Vec<JS> jp(n);
          for (int t = 0; t < n; ++t) jp[t] = JS(p[t], ring::zero<S>());
          for (int c = 0; c < n; ++c) {
            jp[c].deriv = ring::one<S>();
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                dh[a][b][c] = hc(a, b).template eval<K + 1>(jp).deriv;
            jp[c].deriv = ring::zero<S>();
          }
          std::array<std::array<S, kMaxDim>, kMaxDim> hinv;
          detail::invert_small(n, hv, hinv);
          S acc = ring::zero<S>();
          for (int l = 0; l < n; ++l)
            acc += hinv[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                   (dh[j][l][i] + dh[i][l][j] - dh[i][j][l]);
          return acc * 0.5;
        } else {
          throw Error("jet tower depth exceeded");
          return ring::zero<S>();
        }
      });
}

// Levi-Civita connection of h: θ_X Y^k = X(Y^k) + Σ_ij Γ^k_ij X^i Y^j.
inline OrdinaryPseudoconnection riemannian_connection(const InnerProductField& h) {
  const int n = h.dim;
  auto gamma = std::make_shared<std::vector<ScalarField>>();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gamma->push_back(christoffel_symbol(h, k, i, j));
  return {n, [n, gamma](const VectorField& X, const VectorField& Y) {
            std::vector<ScalarField> cs;
            for (int k = 0; k < n; ++k) {
              ScalarField acc = directional_derivative(X, Y[k]);
              for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                  acc = acc +
                        (*gamma)[static_cast<std::size_t>((k * n + i) * n + j)] *
                            X[i] * Y[j];
              cs.push_back(acc);
            }
            return VectorField(std::move(cs));
          }};
}

// Polarized adaptedness criterion: |Xg(Y,Y/Z) − 2g(θ_XY,Y/Z) − 2g(θ_XZ,Z/Y)|.
inline double adapted_residual(const OrdinaryPseudoconnection& theta,
                               const TwoMetric& g, const VectorField& X,
                               const VectorField& Y, const VectorField& Z,
                               const std::vector<Point>& pts) {
  ScalarField lhs = directional_derivative(X, g_scalar_field(g, Y, Y, Z));
  VectorField tXY = theta(X, Y);
  VectorField tXZ = theta(X, Z);
  ScalarField rhs = 2.0 * g_scalar_field(g, tXY, Y, Z) +
                    2.0 * g_scalar_field(g, tXZ, Z, Y);
  return max_abs_over(lhs - rhs, pts);
}

// Full four-slot derivative expansion along θ.
inline double adapted_residual_full(const OrdinaryPseudoconnection& theta,
                                    const TwoMetric& g, const VectorField& X,
                                    const VectorField& Y, const VectorField& Z,
                                    const VectorField& W,
                                    const std::vector<Point>& pts) {
  ScalarField lhs = directional_derivative(X, g_scalar_field(g, Y, Z, W));
  VectorField tXY = theta(X, Y);
  VectorField tXZ = theta(X, Z);
  VectorField tXW = theta(X, W);
  ScalarField rhs = g_scalar_field(g, tXY, Z, W) + g_scalar_field(g, Y, tXZ, W) +
                    g_scalar_field(g, tXW, W, Y + Z) -
                    g_scalar_field(g, tXW, W, Y) - g_scalar_field(g, tXW, W, Z);
  return max_abs_over(lhs - rhs, pts);
}

// θ̄_X Y = θ_X Y + (X(λ)/4λ)·Y, the adapted connection of λ·g. The factor
// must be positive wherever the shifted connection is evaluated.
inline OrdinaryPseudoconnection conformal_shift(
    const OrdinaryPseudoconnection& theta, const ScalarField& lambda) {
  ScalarField guarded = detail::pointwise1(lambda, [](const auto& x) {
    if (!(ring::leading_value(x) > 0.0))
      throw DomainError("conformal factor must be positive");
    return recip(x * 4.0);
  });
  return {theta.dim, [theta, lambda, guarded](const VectorField& X,
                                              const VectorField& Y) {
            ScalarField factor = directional_derivative(X, lambda) * guarded;
            return theta(X, Y) + factor * Y;
          }};
}

// |θ_XY − θ_YX − [X,Y]| sampled: torsion of an ordinary pseudoconnection.
inline double ordinary_torsion_residual(const OrdinaryPseudoconnection& theta,
                                        const VectorField& X, const VectorField& Y,
                                        const std::vector<Point>& pts) {
  VectorField t = theta(X, Y) - theta(Y, X) - lie_bracket(X, Y);
  double m = 0.0;
  for (const Point& p : pts) {
    Vec<double> v = t.at(p);
    for (int i = 0; i < t.dim(); ++i) m = std::max(m, std::fabs(v[i]));
  }
  return m;
}

// (g*θ)_X Y(Z,W) = g(θ_X Y, Z/W)
inline ScalarField g_star_theta_term(const TwoMetric& g,
                                     const OrdinaryPseudoconnection& theta,
                                     const VectorField& X, const VectorField& Y,
                                     const VectorField& Z, const VectorField& W) {
  return g_scalar_field(g, theta(X, Y), Z, W);
}

// Ω^{g,θ}: the six-term correction. The sign of the g(θ_Z W, W/X+Y) term is
// the one forced by the split identity (see the adapted_split tests).
inline ScalarField omega_term(const TwoMetric& g,
                              const OrdinaryPseudoconnection& theta,
                              const VectorField& X, const VectorField& Y,
                              const VectorField& Z, const VectorField& W) {
  ScalarField t1 = g_scalar_field(g, theta(Z - X, W), W, Y);
  ScalarField t2 = g_scalar_field(g, theta(X + Y, W), W, Z);
  ScalarField t3 = g_scalar_field(g, theta(Z - Y, W), W, X);
  ScalarField t4 = g_scalar_field(g, theta(X, W), W, Y + Z);
  ScalarField t5 = g_scalar_field(g, theta(Y, W), W, X + Z);
  ScalarField t6 = g_scalar_field(g, theta(Z, W), W, X + Y);
  return 0.5 * (t1 - t2 + t3 + t4 + t5 - t6);
}

// The split ∇^g = g*θ + Ω^{g,θ} for a torsion-free adapted θ. Returns the
// three value series over the points; callers assert sum == direct.
struct SplitSeries {
  std::vector<double> g_star_theta;
  std::vector<double> omega_part;
  std::vector<double> direct;

  double max_split_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i)
      m = std::max(m, std::fabs(g_star_theta[i] + omega_part[i] - direct[i]));
    return m;
  }
};

inline SplitSeries adapted_split(const TwoMetric& g,
                                 const OrdinaryPseudoconnection& theta,
                                 const VectorField& X, const VectorField& Y,
                                 const VectorField& Z, const VectorField& W,
                                 const std::vector<Point>& pts,
                                 double pre_tol = 1e-8) {
  if (ordinary_torsion_residual(theta, X, Y, pts) > pre_tol)
    throw PreconditionFailed("theta is not torsion free on the given fields");
  if (adapted_residual(theta, g, X, Y, Z, pts) > pre_tol ||
      adapted_residual(theta, g, X, Z, W, pts) > pre_tol)
    throw PreconditionFailed("theta is not adapted to g on the given fields");

  ScalarField gst = g_star_theta_term(g, theta, X, Y, Z, W);
  ScalarField omega = omega_term(g, theta, X, Y, Z, W);
  ScalarField direct = metric_pseudoconnection(g).apply(X, Y)(Z, W);

  SplitSeries out;
  for (const Point& p : pts) {
    out.g_star_theta.push_back(gst.at(p));
    out.omega_part.push_back(omega.at(p));
    out.direct.push_back(direct.at(p));
  }
  return out;
}

// Closed-form value of ∇^{g^st}_X Y(Z,W) at a point of R²: seven products of
// 2x2 determinants of field values and directional derivatives.
inline double explicit_r2_value(const VectorField& X, const VectorField& Y,
                                const VectorField& Z, const VectorField& W,
                                const Point& p) {
  if (X.dim() != 2) throw Error("explicit_r2_value requires dimension 2");
  auto det = [](const Vec<double>& a, const Vec<double>& b) {
    return a[0] * b[1] - a[1] * b[0];
  };
  auto add = [](const Vec<double>& a, const Vec<double>& b) {
    return Vec<double>{a[0] + b[0], a[1] + b[1]};
  };
  auto sub = [](const Vec<double>& a, const Vec<double>& b) {
    return Vec<double>{a[0] - b[0], a[1] - b[1]};
  };
  // directional derivative of a field's components along a value vector
  auto dcomp = [&p](const VectorField& F, const Vec<double>& along) {
    auto cols = detail::jacobian_columns<0>(F, p);
    Vec<double> r{0.0, 0.0};
    for (int a = 0; a < 2; ++a)
      r[a] = cols[0][a] * along[0] + cols[1][a] * along[1];
    return r;
  };

  Vec<double> x = X.at(p), y = Y.at(p), z = Z.at(p), w = W.at(p);
  Vec<double> xy = dcomp(Y, x);   // X(Y)
  Vec<double> xw = dcomp(W, x);   // X(W)
  Vec<double> yw = dcomp(W, y);   // Y(W)
  Vec<double> zw = dcomp(W, z);   // Z(W)

  double main = det(xy, w) * det(z, w);
  double corr = det(sub(zw, xw), y) * det(w, y)            // θ_{Z−X}W against Y
                - det(add(xw, yw), z) * det(w, z)          // θ_{X+Y}W against Z
                + det(sub(zw, yw), x) * det(w, x)          // θ_{Z−Y}W against X
                + det(xw, add(y, z)) * det(w, add(y, z))   // θ_X W against Y+Z
                + det(yw, add(x, z)) * det(w, add(x, z))   // θ_Y W against X+Z
                - det(zw, add(x, y)) * det(w, add(x, y));  // θ_Z W against X+Y
  return main + 0.5 * corr;
}

}  // namespace tworiem
