#pragma once

#include <array>
#include <string>
#include <vector>

#include "tworiem/curvature.hpp"

namespace tworiem::catalog {

// Shared, deterministic test material: named metrics, inner products and
// polynomial field tuples over the default boxes. Scenario checks and the
// acceptance suite both draw from here so that "the catalog" means one thing.

std::vector<std::string> coords(int dim);
Box default_box(int dim);

// Uniform interior grid, per_axis points per coordinate.
std::vector<Point> grid_points(const Box& box, int per_axis);

struct NamedMetric {
  std::string name;
  TwoMetric metric;
};

struct NamedInner {
  std::string name;
  InnerProductField h;
};

// Five metrics per dimension (dimension 2), three in dimension 3.
std::vector<NamedMetric> metrics(int dim);

// Five inner-product fields across dimensions 2 and 3 (axiom material).
std::vector<NamedInner> inner_products();

// Named polynomial fields.
std::vector<NamedField> basic_fields(int dim);

// Six 4-tuples (X,Y,Z,W) per dimension for connection-law residuals.
std::vector<std::array<NamedField, 4>> field_tuples(int dim);

// 5-tuples (X,Y,s,W1,W2) for the nonzero-curvature sweep, ordered so that
// strong witnesses come first; at most 64.
std::vector<std::array<NamedField, 5>> curvature_tuples(int dim);

// Stationarity material (dimension 2): fields whose divergence vanishes
// identically, fields whose divergence does not, and witness fields Y.
std::vector<NamedField> divergence_free_fields();
std::vector<NamedField> non_divergence_free_fields();
std::vector<NamedField> stationary_witnesses(std::uint64_t seedval);

// Low-degree polynomial field with quarter-step coefficients.
VectorField random_poly_field(Rng& rng, int dim);

}  // namespace tworiem::catalog
