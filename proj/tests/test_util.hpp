#pragma once

// Shared helpers for the unit and acceptance suites: deterministic random
// expression trees, finite-difference oracles, residual sweeps. Everything
// here is test-side machinery, independent of the code under test.

#include <cmath>
#include <string>
#include <vector>

#include "tworiem/expr.hpp"
#include "tworiem/field.hpp"
#include "tworiem/geometry.hpp"

namespace testutil {

using tworiem::Box;
using tworiem::Expr;
using tworiem::Point;
using tworiem::Rng;
using tworiem::ScalarField;
using tworiem::VectorField;

// --- random expression source ----------------------------------------------

// Grammar-directed generator. "smooth" mode keeps every subexpression
// globally evaluable and differentiable (guarded divisions, damped exp, no
// ln/sqrt/abs), which the finite-difference comparison needs; full mode
// additionally emits the domain-restricted functions and is used for the
// print/re-parse corpus, which never evaluates.
inline std::string random_expr(Rng& rng, const std::vector<std::string>& coords,
                               int depth, bool smooth) {
  auto pick_leaf = [&]() -> std::string {
    if (rng.index(3) == 0) {
      double c = std::floor(rng.uniform(0.0, 4.0) * 4.0) / 4.0;
      return std::to_string(c);
    }
    return coords[rng.index(coords.size())];
  };
  if (depth <= 0) return pick_leaf();
  switch (rng.index(smooth ? 9 : 12)) {
    case 0:
      return "(" + random_expr(rng, coords, depth - 1, smooth) + " + " +
             random_expr(rng, coords, depth - 1, smooth) + ")";
    case 1:
      return "(" + random_expr(rng, coords, depth - 1, smooth) + " - " +
             random_expr(rng, coords, depth - 1, smooth) + ")";
    case 2:
      return "(" + random_expr(rng, coords, depth - 1, smooth) + " * " +
             random_expr(rng, coords, depth - 1, smooth) + ")";
    case 3:
      return "sin(" + random_expr(rng, coords, depth - 1, smooth) + ")";
    case 4:
      return "cos(" + random_expr(rng, coords, depth - 1, smooth) + ")";
    case 5:
      // damped so towers of exp stay in range
      return "exp(0.25 * " + coords[rng.index(coords.size())] + ")";
    case 6:
      return "(" + random_expr(rng, coords, depth - 1, smooth) + " / (1 + " +
             coords[rng.index(coords.size())] + "^2))";
    case 7:
      return "(" + random_expr(rng, coords, depth - 1, smooth) + ")^" +
             std::to_string(2 + static_cast<int>(rng.index(3)));
    case 8:
      return "(-" + random_expr(rng, coords, depth - 1, smooth) + ")";
    case 9:
      return "ln(" + random_expr(rng, coords, depth - 1, smooth) + ")";
    case 10:
      return "sqrt(" + random_expr(rng, coords, depth - 1, smooth) + ")";
    case 11:
      return "abs(" + random_expr(rng, coords, depth - 1, smooth) + ")";
  }
  return pick_leaf();
}

// Random low-degree polynomial in the given coordinates, quarter-step
// coefficients in [-1,1]. Used wherever a sweep needs polynomial field
// draws.
inline std::string random_poly(Rng& rng, const std::vector<std::string>& coords) {
  auto coeff = [&]() {
    double c = std::floor(rng.uniform(-1.0, 1.0) * 4.0) / 4.0;
    return "(" + std::to_string(c) + ")";
  };
  std::string s = coeff();
  for (const auto& c : coords) s += " + " + coeff() + "*" + c;
  // one random quadratic term
  const auto& a = coords[rng.index(coords.size())];
  const auto& b = coords[rng.index(coords.size())];
  s += " + " + coeff() + "*" + a + "*" + b;
  return s;
}

inline VectorField random_poly_field(Rng& rng,
                                     const std::vector<std::string>& coords) {
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < coords.size(); ++i)
    comps.push_back(ScalarField::from_expr(
        tworiem::parse_expression(random_poly(rng, coords), coords)));
  return VectorField(std::move(comps));
}

// --- finite differences (independent oracle) --------------------------------

inline double central_difference(const ScalarField& f, const Point& p, int axis,
                                 double h = 1e-5) {
  Point a = p, b = p;
  a[axis] += h;
  b[axis] -= h;
  return (f.at(a) - f.at(b)) / (2.0 * h);
}

inline bool close_rel(double got, double want, double tol) {
  double scale = std::max({1.0, std::fabs(got), std::fabs(want)});
  return std::fabs(got - want) <= tol * scale;
}

// --- catalog shorthands ------------------------------------------------------

inline ScalarField sf(const std::string& text,
                      const std::vector<std::string>& coords) {
  return ScalarField::from_expr(tworiem::parse_expression(text, coords));
}

inline VectorField vf(const std::vector<std::string>& comps,
                      const std::vector<std::string>& coords) {
  std::vector<ScalarField> cs;
  for (const auto& c : comps) cs.push_back(sf(c, coords));
  return VectorField(std::move(cs));
}

inline const std::vector<std::string> kXY = {"x", "y"};
inline const std::vector<std::string> kXYZ = {"x1", "x2", "x3"};

}  // namespace testutil
