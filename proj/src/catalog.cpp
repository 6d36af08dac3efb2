#include "tworiem/catalog.hpp"

#include "tworiem/expr.hpp"

namespace tworiem::catalog {

namespace {

ScalarField sf(const std::string& text, const std::vector<std::string>& cs) {
  return ScalarField::from_expr(parse_expression(text, cs));
}

VectorField vfield(const std::vector<std::string>& comps,
                   const std::vector<std::string>& cs) {
  std::vector<ScalarField> fields;
  for (const auto& c : comps) fields.push_back(sf(c, cs));
  return VectorField(std::move(fields));
}

NamedField nf(const std::string& name, const std::vector<std::string>& comps,
              const std::vector<std::string>& cs) {
  return {name, vfield(comps, cs)};
}

}  // namespace

std::vector<std::string> coords(int dim) {
  if (dim == 2) return {"x", "y"};
  if (dim == 3) return {"x1", "x2", "x3"};
  throw Error("catalog supports dimensions 2 and 3");
}

Box default_box(int dim) {
  if (dim == 2) return Box{{-2.0, 2.0}, {-2.0, 2.0}};
  if (dim == 3) return Box{{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}};
  throw Error("catalog supports dimensions 2 and 3");
}

std::vector<Point> grid_points(const Box& box, int per_axis) {
  std::vector<Point> pts;
  auto coord = [&](int axis, int i) {
    auto k = static_cast<std::size_t>(axis);
    double t = (i + 1.0) / (per_axis + 1.0);
    return box.lo[k] + t * (box.hi[k] - box.lo[k]);
  };
  if (box.dim == 2) {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j)
        pts.push_back(Point{coord(0, i), coord(1, j)});
  } else {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j)
        for (int k = 0; k < per_axis; ++k)
          pts.push_back(Point{coord(0, i), coord(1, j), coord(2, k)});
  }
  return pts;
}

std::vector<NamedInner> inner_products() {
  auto cs2 = coords(2);
  auto cs3 = coords(3);
  std::vector<NamedInner> out;

  out.push_back({"euclidean-2", InnerProductField::identity(2)});

  InnerProductField poly2{2,
                          {{sf("1 + x^2/4", cs2), sf("x*y/8", cs2)},
                           {sf("x*y/8", cs2), sf("1 + y^2/4", cs2)}}};
  out.push_back({"poly-2", poly2});

  ScalarField round = sf("1 / (1 + x^2 + y^2)^2", cs2);
  InnerProductField round2{2,
                           {{round, sf("0", cs2)}, {sf("0", cs2), round}}};
  out.push_back({"round-2", round2});

  out.push_back({"euclidean-3", InnerProductField::identity(3)});

  InnerProductField poly3{

      3,
      {{sf("1 + x1^2/4", cs3), sf("x1*x2/8", cs3), sf("0", cs3)},
       {sf("x1*x2/8", cs3), sf("1 + x2^2/4", cs3), sf("x2*x3/8", cs3)},
       {sf("0", cs3), sf("x2*x3/8", cs3), sf("1 + x3^2/4", cs3)}}};
  out.push_back({"poly-3", poly3});

  return out;
}

std::vector<NamedMetric> metrics(int dim) {
  std::vector<NamedMetric> out;
  if (dim == 2) {
    auto cs = coords(2);
    out.push_back({"standard", TwoMetric::standard(2)});
    out.push_back({"simple-poly",
                   TwoMetric::simple({{sf("1 + x^2/4", cs), sf("x*y/8", cs)},
                                      {sf("x*y/8", cs), sf("1 + y^2/4", cs)}})});
    out.push_back({"conformal-exp",
                   TwoMetric::conformal(sf("exp(x)", cs), TwoMetric::standard(2))});
    ScalarField round = sf("1 / (1 + x^2 + y^2)^2", cs);
    out.push_back({"simple-round",
                   TwoMetric::simple({{round, sf("0", cs)}, {sf("0", cs), round}})});
    out.push_back({"table-exp", TwoMetric::table2(sf("exp((x + y)/2)", cs))});
    return out;
  }
  auto cs = coords(3);
  out.push_back({"standard-3", TwoMetric::standard(3)});
  out.push_back({"conformal-exp-3",
                 TwoMetric::conformal(sf("exp(x1)", cs), TwoMetric::standard(3))});
  out.push_back({"simple-poly-3",
                 TwoMetric::simple({{sf("1 + x1^2/4", cs), sf("x1*x2/8", cs), sf("0", cs)},
                                    {sf("x1*x2/8", cs), sf("1 + x2^2/4", cs), sf("x2*x3/8", cs)},
                                    {sf("0", cs), sf("x2*x3/8", cs), sf("1 + x3^2/4", cs)}})});
  return out;
}

std::vector<NamedField> basic_fields(int dim) {
  if (dim == 2) {
    auto cs = coords(2);
    return {
        nf("e1", {"1", "0"}, cs),
        nf("e2", {"0", "1"}, cs),
        nf("shear", {"0", "x"}, cs),
        nf("xonly", {"x", "0"}, cs),
        nf("rot", {"-y", "x"}, cs),
        nf("radial", {"x", "y"}, cs),
        nf("poly1", {"x*y", "1"}, cs),
        nf("poly2", {"y^2", "x"}, cs),
        nf("mix", {"x + y", "x - y"}, cs),
    };
  }
  auto cs = coords(3);
  return {
      nf("e1", {"1", "0", "0"}, cs),
      nf("e2", {"0", "1", "0"}, cs),
      nf("e3", {"0", "0", "1"}, cs),
      nf("shear", {"0", "x1", "0"}, cs),
      nf("rot12", {"-x2", "x1", "0"}, cs),
      nf("radial", {"x1", "x2", "x3"}, cs),
      nf("poly1", {"x1*x2", "1", "x3"}, cs),
      nf("poly2", {"x2^2", "x3", "x1"}, cs),
  };
}

namespace {

NamedField find(const std::vector<NamedField>& fields, const std::string& name) {
  for (const auto& f : fields)
    if (f.name == name) return f;
  throw Error("catalog field not found: " + name);
}

}  // namespace

std::vector<std::array<NamedField, 4>> field_tuples(int dim) {
  auto fs = basic_fields(dim);
  auto g = [&](const std::string& n) { return find(fs, n); };
  if (dim == 2) {
    return {
        {g("e1"), g("shear"), g("e2"), g("e1")},
        {g("rot"), g("radial"), g("e1"), g("e2")},
        {g("poly1"), g("poly2"), g("mix"), g("e2")},
        {g("shear"), g("rot"), g("radial"), g("poly1")},
        {g("xonly"), g("e1"), g("poly2"), g("mix")},
        {g("radial"), g("mix"), g("poly1"), g("rot")},
    };
  }
  return {
      {g("e1"), g("shear"), g("e2"), g("e1")},
      {g("rot12"), g("radial"), g("e1"), g("e3")},
      {g("poly1"), g("poly2"), g("e2"), g("e3")},
      {g("shear"), g("rot12"), g("radial"), g("poly1")},
      {g("e3"), g("poly1"), g("rot12"), g("e1")},
      {g("radial"), g("e2"), g("poly2"), g("shear")},
  };
}

std::vector<std::array<NamedField, 5>> curvature_tuples(int dim) {
  auto fs = basic_fields(dim);
  auto g = [&](const std::string& n) { return find(fs, n); };
  std::vector<std::array<NamedField, 5>> out;
  if (dim == 2) {
    // Ordered with strong witnesses first; the sweep stops at the first hit.
    out.push_back({g("e1"), g("e2"), g("e1"), g("e2"), g("radial")});
    out.push_back({g("e1"), g("poly1"), g("poly1"), g("e1"), g("radial")});
    out.push_back({g("e1"), g("e2"), g("poly1"), g("e1"), g("radial")});
    out.push_back({g("e1"), g("poly1"), g("e2"), g("e1"), g("poly1")});
    out.push_back({g("e1"), g("shear"), g("e2"), g("e2"), g("e1")});
    out.push_back({g("rot"), g("radial"), g("e2"), g("e1"), g("radial")});
    out.push_back({g("e2"), g("poly2"), g("e1"), g("e1"), g("radial")});
    out.push_back({g("shear"), g("xonly"), g("rot"), g("e2"), g("radial")});
    out.push_back({g("poly1"), g("poly2"), g("mix"), g("e2"), g("e1")});
    out.push_back({g("e1"), g("rot"), g("radial"), g("e2"), g("mix")});
    out.push_back({g("e2"), g("shear"), g("poly1"), g("e1"), g("e2")});
    out.push_back({g("radial"), g("poly1"), g("e2"), g("mix"), g("e1")});
  } else {
    out.push_back({g("e1"), g("e2"), g("e1"), g("radial"), g("radial")});
    out.push_back({g("e1"), g("e2"), g("radial"), g("poly2"), g("radial")});
    out.push_back({g("e1"), g("e3"), g("radial"), g("poly2"), g("poly1")});
    out.push_back({g("e1"), g("shear"), g("shear"), g("radial"), g("poly2")});
    out.push_back({g("e1"), g("rot12"), g("radial"), g("poly2"), g("radial")});
    out.push_back({g("e1"), g("e3"), g("poly1"), g("poly2"), g("poly1")});
  }
  return out;
}

std::vector<NamedField> divergence_free_fields() {
  auto cs = coords(2);
  return {
      nf("rot", {"-y", "x"}, cs),
      nf("shear", {"0", "x"}, cs),
      nf("saddle", {"x", "-y"}, cs),
      nf("curl-poly", {"y^2", "x^2"}, cs),
  };
}

std::vector<NamedField> non_divergence_free_fields() {
  auto cs = coords(2);
  return {
      nf("radial", {"x", "y"}, cs),
      nf("xonly", {"x", "0"}, cs),
      nf("skew", {"x*y", "y"}, cs),
      nf("expand", {"x + y", "y"}, cs),
  };
}

std::vector<NamedField> stationary_witnesses(std::uint64_t seedval) {
  auto cs = coords(2);
  std::vector<NamedField> out = {
      nf("e1", {"1", "0"}, cs),
      nf("e2", {"0", "1"}, cs),
      nf("shear", {"0", "x"}, cs),
      nf("xonly", {"x", "0"}, cs),
      nf("rot", {"-y", "x"}, cs),
      nf("radial", {"x", "y"}, cs),
      nf("poly1", {"x*y", "1"}, cs),
      nf("poly2", {"y^2", "x"}, cs),
      nf("mix", {"x + y", "x - y"}, cs),
      nf("quad", {"x^2", "y^2"}, cs),
      nf("cross", {"y", "x"}, cs),
      nf("wave", {"1 + y^2/4", "x/2"}, cs),
  };
  // eight seeded random polynomial witnesses
  Rng rng(seedval);
  auto coeff = [&rng]() {
    double c = std::floor(rng.uniform(-1.0, 1.0) * 4.0) / 4.0;
    return "(" + std::to_string(c) + ")";
  };
  for (int k = 0; k < 8; ++k) {
    std::vector<std::string> comps;
    for (int c = 0; c < 2; ++c)
      comps.push_back(coeff() + " + " + coeff() + "*x + " + coeff() + "*y + " +
                      coeff() + "*x*y");
    out.push_back(nf("random-" + std::to_string(k), comps, cs));
  }
  return out;
}

VectorField random_poly_field(Rng& rng, int dim) {
  auto cs = coords(dim);
  auto coeff = [&rng]() {
    double c = std::floor(rng.uniform(-1.0, 1.0) * 4.0) / 4.0;
    return "(" + std::to_string(c) + ")";
  };
  std::vector<ScalarField> comps;
  for (int i = 0; i < dim; ++i) {
    std::string s = coeff();
    for (const auto& c : cs) s += " + " + coeff() + "*" + c;
    const auto& a = cs[rng.index(cs.size())];
    const auto& b = cs[rng.index(cs.size())];
    s += " + " + coeff() + "*" + a + "*" + b;
    comps.push_back(sf(s, cs));
  }
  return VectorField(std::move(comps));
}

}  // namespace tworiem::catalog
