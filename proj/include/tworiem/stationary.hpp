#pragma once

#include <string>
#include <vector>

#include "tworiem/curvature.hpp"
#include "tworiem/metric.hpp"

namespace tworiem {

// 𝔚(X,Y,Z) = g([Z,X],Y/Z) + g(X,[Z,Y]/Z) − Z g(X,Y/Z).
inline ScalarField w_map(const TwoMetric& g, const VectorField& X,
                         const VectorField& Y, const VectorField& Z) {
  return g_scalar_field(g, lie_bracket(Z, X), Y, Z) +
         g_scalar_field(g, X, lie_bracket(Z, Y), Z) -
         directional_derivative(Z, g_scalar_field(g, X, Y, Z));
}

struct StationarityReport {
  std::string field_name;
  double max_residual = 0.0;
  bool stationary = true;
  // reproducible witness for non-stationary verdicts
  std::string witness_name;
  Point witness_point;
  double witness_value = 0.0;
};

// Stationarity of X against a witness catalog: the polarized criterion
// |X g(Y,Y/X) − 2 g([X,Y],Y/X)| swept over catalog fields Y and points.
// Refutation is sound; confirmation is relative to the catalog.
inline StationarityReport stationarity_residual(
    const TwoMetric& g, const NamedField& X,
    const std::vector<NamedField>& witnesses, const std::vector<Point>& pts,
    double threshold = 1e-8) {
  StationarityReport rep;
  rep.field_name = X.name;
  for (const NamedField& Y : witnesses) {
    ScalarField lhs =
        directional_derivative(X.field, g_scalar_field(g, Y.field, Y.field, X.field));
    ScalarField rhs =
        2.0 * g_scalar_field(g, lie_bracket(X.field, Y.field), Y.field, X.field);
    ScalarField diff = lhs - rhs;
    for (const Point& p : pts) {
      double v = std::fabs(diff.at(p));
      if (v > rep.max_residual) {
        rep.max_residual = v;
        rep.witness_name = Y.name;
        rep.witness_point = p;
        rep.witness_value = diff.at(p);
      }
    }
  }
  rep.stationary = rep.max_residual <= threshold;
  if (rep.stationary) rep.witness_name.clear();
  return rep;
}

// The field 2·div(X) + X(ln λ).
inline ScalarField div_residual(const VectorField& X, const ScalarField& lambda) {
  return 2.0 * divergence(X) + directional_derivative(X, ln_field(lambda));
}

struct EquivalenceEntry {
  std::string name;
  bool stationary = false;
  bool divergence_solution = false;
  double stationarity_residual = 0.0;
  double div_residual_max = 0.0;
  bool agree = false;
};

struct EquivalenceReport {
  std::vector<EquivalenceEntry> entries;
  bool all_agree = true;
};

// For the metric λ·g^st on R², stationarity of each field must coincide with
// membership in the kernel of 2div(X) + X(ln λ).
inline EquivalenceReport equivalence_sweep(const ScalarField& lambda,
                                           const std::vector<NamedField>& fields,
                                           const std::vector<NamedField>& witnesses,
                                           const std::vector<Point>& pts,
                                           double threshold = 1e-8) {
  TwoMetric g = TwoMetric::conformal(lambda, TwoMetric::standard(2));
  EquivalenceReport rep;
  for (const NamedField& X : fields) {
    EquivalenceEntry e;
    e.name = X.name;
    StationarityReport s = stationarity_residual(g, X, witnesses, pts, threshold);
    e.stationary = s.stationary;
    e.stationarity_residual = s.max_residual;
    e.div_residual_max = max_abs_over(div_residual(X.field, lambda), pts);
    e.divergence_solution = e.div_residual_max <= threshold;
    e.agree = (e.stationary == e.divergence_solution);
    rep.all_agree = rep.all_agree && e.agree;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// X = λ^{-1/2}·(∂ψ/∂y, −∂ψ/∂x): a stationary field of λ·g^st for any stream
// function ψ. Derivation: with H = (ψ_y, −ψ_x), div(λ^{-1/2}H) =
// −½λ^{-3/2}H(λ), while λ^{-1/2}H(ln λ) = λ^{-3/2}H(λ), so
// 2div(X) + X(ln λ) = 0 identically.
inline VectorField stream_generator(const ScalarField& psi,
                                    const ScalarField& lambda) {
  if (psi.dim() != 2 || lambda.dim() != 2)
    throw Error("stream_generator works on R^2");
  ScalarField amp = recip_field(sqrt_field(lambda));
  return VectorField({amp * partial_derivative(psi, 1),
                      -1.0 * (amp * partial_derivative(psi, 0))});
}

// |X g^st(Y,Y/X) − 2g^st([X,Y],Y/X) − 2div(X)·g^st(Y,Y/X)| over the points.
inline double s2_residual(const VectorField& X, const VectorField& Y,
                          const std::vector<Point>& pts) {
  if (X.dim() != 2) throw Error("s2_residual works on R^2");
  TwoMetric g = TwoMetric::standard(2);
  ScalarField gyyx = g_scalar_field(g, Y, Y, X);
  ScalarField lhs = directional_derivative(X, gyyx);
  ScalarField rhs = 2.0 * g_scalar_field(g, lie_bracket(X, Y), Y, X) +
                    2.0 * (divergence(X) * gyyx);
  return max_abs_over(lhs - rhs, pts);
}

}  // namespace tworiem
