// Acceptance suite: one criterion per section, one pass/fail line each,
// nonzero exit if anything is red. Tolerances are pinned here, in code.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tworiem/catalog.hpp"
#include "tworiem/curvature.hpp"
#include "tworiem/flatness.hpp"
#include "tworiem/scenario.hpp"
#include "tworiem/stationary.hpp"

using namespace tworiem;
namespace cat = tworiem::catalog;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::printf("[%2d] %s %s%s%s\n", idx, pass ? "PASS" : "FAIL", what.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  if (!pass) ++g_failures;
}

std::string residual_str(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. axioms of simple metrics built from the catalog inner products
void criterion_axioms() {
  double worst = 0.0;
  for (const auto& ni : cat::inner_products()) {
    TwoMetric g = TwoMetric::simple(ni.h.entries);
    Box box = cat::default_box(ni.h.dim);
    for (const Point& p : sample_points(box, 20, 42)) {
      AxiomReport rep = check_axioms(g.at_point(p), ni.h.dim, 50, 42, 1e-9);
      worst = std::max(worst, rep.worst);
    }
  }
  report(1, "2-inner product axioms on 5 simple metrics", worst < 1e-9,
         "max residual " + residual_str(worst));
}

// 2. expansion formulas against the direct simple evaluation
void criterion_expansion() {
  Rng rng(42);
  Mat id2 = Mat::identity(2);
  Mat id3 = Mat::identity(3);
  TwoInnerTable3 table = TwoInnerTable3::standard();
  double worst = 0.0;
  auto rvec = [&rng](int n) {
    Vec<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(-2.0, 2.0);
    return v;
  };
  for (int i = 0; i < 250; ++i) {
    Vec<double> u = rvec(2), v = rvec(2), w = rvec(2);
    double direct = simple_from_inner(id2, u, v, w);
    double exp2 = expand_dim2(u, v, w, 1.0);
    worst = std::max(worst, std::fabs(direct - exp2) / std::max(1.0, std::fabs(direct)));
  }
  for (int i = 0; i < 250; ++i) {
    Vec<double> u = rvec(3), v = rvec(3), w = rvec(3);
    double direct = simple_from_inner(id3, u, v, w);
    double exp3 = expand_dim3(u, v, w, table);
    worst = std::max(worst, std::fabs(direct - exp3) / std::max(1.0, std::fabs(direct)));
  }
  report(2, "expansion formulas vs direct evaluation, 500 draws", worst < 1e-9,
         "max rel err " + residual_str(worst));
}

// 3. torsion/compatibility/symmetry/module rules/D2_0-linearity of the
//    metric pseudoconnection over the catalog
void criterion_levi_civita() {
  auto cs = cat::coords(2);
  ScalarField phi = ScalarField::from_expr(parse_expression("1 + x*y/2", cs));
  std::vector<Point> pts = sample_points(cat::default_box(2), 10, 42);
  double worst = 0.0;
  for (const auto& nm : cat::metrics(2)) {
    Pseudoconnection conn = metric_pseudoconnection(nm.metric);
    auto P = conn.principal;
    for (const auto& tup : cat::field_tuples(2)) {
      const VectorField& X = tup[0].field;
      const VectorField& Y = tup[1].field;
      const VectorField& Z = tup[2].field;
      const VectorField& W = tup[3].field;
      worst = std::max(worst, torsion_residual(conn, P, X, Y, Z, W, pts));
      worst = std::max(worst, compatibility_residual(conn, P, X, Y, Z, W, pts));
      worst = std::max(worst, symmetry_residual(P, X, Z, W, pts));
      worst = std::max(worst,
                       module_rules_residual(conn, P, phi, X, Y, Z, W, Z, W, pts));
      worst = std::max(worst, d20_linearity_residual(conn.apply(X, Y), phi, Z, W, pts));
    }
  }
  report(3, "pseudoconnection laws on 5 metrics x 6 tuples x 10 points",
         worst < 1e-8, "max residual " + residual_str(worst));
}

// 4. curvature properties (1)-(5)
void criterion_curvature_properties() {
  auto cs = cat::coords(2);
  ScalarField f = ScalarField::from_expr(parse_expression("x", cs));
  std::vector<Point> pts = sample_points(cat::default_box(2), 10, 42);
  double worst_props = 0.0, worst_trilinear = 0.0;
  for (const auto& nm : cat::metrics(2)) {
    Pseudoconnection conn = metric_pseudoconnection(nm.metric);
    for (const auto& tup : cat::field_tuples(2)) {
      CurvaturePropertyReport rep = curvature_property_residuals(
          conn, tup[0].field, tup[1].field, tup[2].field, tup[3].field,
          tup[0].field, f, pts);
      worst_props = std::max({worst_props, rep.antisym, rep.fun_linear,
                              rep.third_slot, rep.bianchi});
      worst_trilinear = std::max(worst_trilinear, rep.trilinear);
    }
  }
  report(4, "curvature laws (2)-(5) on the catalog",
         worst_props < 1e-7 && worst_trilinear < 1e-9,
         "max law residual " + residual_str(worst_props) + ", trilinearity " +
             residual_str(worst_trilinear));
}

// 5. flatness of the principal differential, and its uniqueness among flat
//    candidates with the same principal homomorphism
void criterion_ch_flat() {
  std::vector<Point> pts = sample_points(cat::default_box(2), 10, 42);
  double worst_flat = 0.0, worst_match = 0.0;
  bool perturbed_detected = true;
  auto T = [](const VectorField& X, const VectorField& Y) {
    return D2Element{2, [X, Y](const VectorField& Z, const VectorField& W) {
                       return X[0] * Y[0] * Z[0] * W[0];
                     }};
  };
  const auto tuples = cat::field_tuples(2);
  for (const auto& nm : cat::metrics(2)) {
    auto P = principal_homomorphism(nm.metric);
    Pseudoconnection dP = differential_pseudoconnection(P, 2);
    for (const auto& tup : tuples) {
      D2Element r = curvature(dP, tup[0].field, tup[1].field, tup[2].field);
      worst_flat = std::max(worst_flat,
                            max_abs_over(r(tup[3].field, tup[0].field), pts));
    }
    // a flat candidate with principal homomorphism P must agree with dP
    Pseudoconnection candidate{2,
                               [P](const VectorField& X, const VectorField& s) {
                                 return derive_along(X, P(s)) + D2Element::zero(2);
                               },
                               P};
    const auto& probe = tuples[1];
    D2Element rc = curvature(candidate, probe[0].field, probe[1].field, probe[2].field);
    if (max_abs_over(rc(probe[3].field, probe[0].field), pts) < 1e-8) {
      D2Element diff = candidate.apply(probe[0].field, probe[1].field) -
                       dP.apply(probe[0].field, probe[1].field);
      worst_match = std::max(worst_match,
                             max_abs_over(diff(probe[2].field, probe[3].field), pts));
    }
    // the perturbed candidate must NOT look flat; the probe needs varying
    // section and slot fields or the perturbation's curvature cancels
    Pseudoconnection bent = add_bilinear_term(dP, T);
    auto cs2 = cat::coords(2);
    auto vf2 = [&cs2](const std::string& a, const std::string& b) {
      return VectorField({ScalarField::from_expr(parse_expression(a, cs2)),
                          ScalarField::from_expr(parse_expression(b, cs2))});
    };
    D2Element rb = curvature(bent, vf2("x", "y"), vf2("y", "x"), vf2("y", "1"));
    if (max_abs_over(rb(vf2("1", "1"), vf2("x", "0")), pts) < 1e-8)
      perturbed_detected = false;
  }
  report(5, "principal differential is flat and unique among flat candidates",
         worst_flat < 1e-8 && worst_match < 1e-8 && perturbed_detected,
         "flatness " + residual_str(worst_flat) + ", match " +
             residual_str(worst_match));
}

// 6. nonzero-curvature witness for every catalog metric
void criterion_never_vanish() {
  auto tuples = cat::curvature_tuples(2);
  auto grid = cat::grid_points(cat::default_box(2), 5);
  bool all_found = true;
  double weakest = 1e300;
  for (const auto& nm : cat::metrics(2)) {
    CurvatureWitness w = find_nonzero_curvature(nm.metric, tuples, grid, 0.1);
    all_found = all_found && w.found;
    weakest = std::min(weakest, w.normalized);
  }
  report(6, "nonzero-curvature witness per catalog metric", all_found,
         "weakest witness " + residual_str(weakest));
}

// 7. image separation: principal diagonals vanish, connection diagonals don't
void criterion_obstruction() {
  std::vector<Point> pts = sample_points(cat::default_box(2), 10, 42);
  double worst_principal = 0.0, weakest_witness = 1e300;
  for (const auto& nm : cat::metrics(2)) {
    ObstructionReport rep =
        koszul_obstruction(nm.metric, cat::basic_fields(2), pts);
    worst_principal = std::max(worst_principal, rep.principal_diag_max);
    weakest_witness = std::min(weakest_witness, rep.connection_diag_max);
  }
  report(7, "image separation of the pseudoconnection and its principal map",
         worst_principal < 1e-10 && weakest_witness > 0.1,
         "principal " + residual_str(worst_principal) + ", witness " +
             residual_str(weakest_witness));
}

// 8. invariance of connection and curvature under 2-isometries
void criterion_invariance() {
  auto cs = cat::coords(2);
  Box box = cat::default_box(2);
  std::vector<Point> pts = sample_points(box, 6, 42);
  auto fields = cat::basic_fields(2);
  const VectorField& X = fields[3].field;  // xonly
  const VectorField& Y = fields[2].field;  // shear
  const VectorField& Z = fields[4].field;  // rot
  const VectorField& W = fields[0].field;  // e1
  const VectorField& T = fields[1].field;  // e2

  auto sf2 = [&cs](const std::string& t) {
    return ScalarField::from_expr(parse_expression(t, cs));
  };
  TwoMetric gst = TwoMetric::standard(2);

  Diffeo rot = Diffeo::create(
      VectorField({sf2("cos(0.7)*x - sin(0.7)*y"), sf2("sin(0.7)*x + cos(0.7)*y")}),
      VectorField({sf2("cos(0.7)*x + sin(0.7)*y"), sf2("cos(0.7)*y - sin(0.7)*x")}),
      box);
  auto [rc, rr] = isometry_invariance_residual(rot, gst, gst, X, Y, Z, W, T, pts);

  Diffeo sc = Diffeo::create(VectorField({sf2("2*x"), sf2("2*y")}),
                             VectorField({sf2("x/2"), sf2("y/2")}), box);
  TwoMetric pulled = pullback_metric(sc, gst);
  auto [sc_c, sc_r] =
      isometry_invariance_residual(sc, pulled, gst, X, Y, Z, W, T, pts);

  double worst = std::max({rc, rr, sc_c, sc_r});
  report(8, "2-isometry invariance (rotation and scaling pullback)",
         worst < 1e-7, "max residual " + residual_str(worst));
}

// 9. adapted ordinary pseudoconnections: adaptedness, conformal shift,
//    the split, and the closed R2 formula
void criterion_adapted() {
  auto cs = cat::coords(2);
  auto sf2 = [&cs](const std::string& t) {
    return ScalarField::from_expr(parse_expression(t, cs));
  };
  std::vector<Point> pts = sample_points(cat::default_box(2), 10, 42);
  auto tuples = cat::field_tuples(2);

  bool ok = true;
  std::string note;

  // Riemannian connection of h is adapted to the simple metric of h
  std::vector<std::vector<ScalarField>> hf = {
      {sf2("1 + x^2/4"), sf2("x*y/8")}, {sf2("x*y/8"), sf2("1 + y^2/4")}};
  InnerProductField h{2, hf};
  TwoMetric gh = TwoMetric::simple(hf);
  OrdinaryPseudoconnection th = riemannian_connection(h);
  double adapted_worst = 0.0;
  for (const auto& tup : tuples)
    adapted_worst = std::max(
        adapted_worst,
        adapted_residual(th, gh, tup[0].field, tup[1].field, tup[2].field, pts));
  ok = ok && adapted_worst < 1e-8;

  // conformal shift preserves adaptedness and the principal homomorphism
  ScalarField lam = sf2("exp(x)");
  OrdinaryPseudoconnection flat = flat_connection(2);
  OrdinaryPseudoconnection shifted = conformal_shift(flat, lam);
  TwoMetric glam = TwoMetric::conformal(lam, TwoMetric::standard(2));
  double shift_worst = 0.0;
  for (const auto& tup : tuples)
    shift_worst = std::max(shift_worst,
                           adapted_residual(shifted, glam, tup[0].field,
                                            tup[1].field, tup[2].field, pts));
  ok = ok && shift_worst < 1e-8;
  {
    ScalarField phi = sf2("1 + x*y/3");
    const VectorField& X = tuples[1][0].field;
    const VectorField& Y = tuples[1][1].field;
    VectorField lhs = shifted(X, phi * Y) - phi * shifted(X, Y);
    VectorField rhs = directional_derivative(X, phi) * Y;
    VectorField diff = lhs - rhs;
    double principal_worst = 0.0;
    for (const Point& p : pts)
      for (int i = 0; i < 2; ++i)
        principal_worst = std::max(principal_worst, std::fabs(diff.at(p)[i]));
    ok = ok && principal_worst < 1e-10;
  }

  // split agreement on the standard metric with the flat connection
  double split_worst = 0.0;
  for (const auto& tup : tuples) {
    SplitSeries s =
        adapted_split(TwoMetric::standard(2), flat, tup[0].field, tup[1].field,
                      tup[2].field, tup[3].field, pts);
    split_worst = std::max(split_worst, s.max_split_defect());
  }
  // and on the simple metric with its Riemannian connection
  for (const auto& tup : tuples) {
    SplitSeries s = adapted_split(gh, th, tup[0].field, tup[1].field,
                                  tup[2].field, tup[3].field, pts);
    split_worst = std::max(split_worst, s.max_split_defect());
  }
  ok = ok && split_worst < 1e-8;

  // closed determinant formula vs the direct pseudoconnection, 200 draws
  Pseudoconnection conn = metric_pseudoconnection(TwoMetric::standard(2));
  Rng rng(42);
  Box unit{{-1.0, 1.0}, {-1.0, 1.0}};
  double r2_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    VectorField A = cat::random_poly_field(rng, 2);
    VectorField B = cat::random_poly_field(rng, 2);
    VectorField C = cat::random_poly_field(rng, 2);
    VectorField D = cat::random_poly_field(rng, 2);
    Point p = rng.point_in(unit);
    double direct = conn.apply(A, B)(C, D).at(p);
    double closed = explicit_r2_value(A, B, C, D, p);
    r2_worst = std::max(r2_worst, std::fabs(direct - closed) /
                                      std::max({1.0, std::fabs(direct),
                                                std::fabs(closed)}));
  }
  ok = ok && r2_worst < 1e-9;

  report(9, "adapted machinery (residuals, shift, split, closed R2 formula)",
         ok,
         "adapted " + residual_str(adapted_worst) + ", shift " +
             residual_str(shift_worst) + ", split " + residual_str(split_worst) +
             ", r2 " + residual_str(r2_worst));
}

// 10. stationary vector fields
void criterion_stationary() {
  auto cs = cat::coords(2);
  auto sf2 = [&cs](const std::string& t) {
    return ScalarField::from_expr(parse_expression(t, cs));
  };
  std::vector<Point> pts = sample_points(cat::default_box(2), 10, 42);
  auto witnesses = cat::stationary_witnesses(42);

  // Cor. biconditional for the flat factor: 8/8 agreement
  std::vector<NamedField> fields;
  for (const auto& f : cat::divergence_free_fields()) fields.push_back(f);
  for (const auto& f : cat::non_divergence_free_fields()) fields.push_back(f);
  EquivalenceReport flat_eq =
      equivalence_sweep(sf2("1"), fields, witnesses, pts);
  int agreements = 0;
  for (const auto& e : flat_eq.entries)
    if (e.agree) ++agreements;
  bool ok = agreements == 8;

  // exp factor: generator outputs and counterexamples
  ScalarField lam = sf2("exp(x)");
  std::vector<NamedField> conf_fields;
  conf_fields.push_back({"gen-y", stream_generator(sf2("y"), lam)});
  conf_fields.push_back({"gen-xy", stream_generator(sf2("x*y/4"), lam)});
  conf_fields.push_back({"radial", fields[4].field});
  conf_fields.push_back({"rot", fields[0].field});
  EquivalenceReport conf_eq = equivalence_sweep(lam, conf_fields, witnesses, pts);
  ok = ok && conf_eq.all_agree;
  ok = ok && conf_eq.entries[0].stationary && conf_eq.entries[1].stationary;
  ok = ok && !conf_eq.entries[2].stationary && !conf_eq.entries[3].stationary;

  // generator outputs solve the divergence equation to high accuracy
  double gen_worst = 0.0;
  for (const char* psi : {"y", "x*y/4", "(x^2 + y^2)/2"})
    gen_worst = std::max(
        gen_worst,
        max_abs_over(div_residual(stream_generator(sf2(psi), lam), lam), pts));
  ok = ok && gen_worst < 1e-10;

  // the divergence identity itself on 100 random pairs
  Rng rng(42);
  double s2_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    VectorField A = cat::random_poly_field(rng, 2);
    VectorField B = cat::random_poly_field(rng, 2);
    s2_worst = std::max(s2_worst, s2_residual(A, B, pts));
  }
  ok = ok && s2_worst < 1e-8;

  report(10, "stationarity: biconditional, generators, divergence identity",
         ok,
         "agreement " + std::to_string(agreements) + "/8, generator " +
             residual_str(gen_worst) + ", s2 " + residual_str(s2_worst));
}

// 11. dimension-2 flattening by quadrature
void criterion_flatten() {
  auto cs = cat::coords(2);
  const double quad_tol = 1e-10;
  Box box{{-1.0, 1.0}, {-1.0, 1.0}};
  double worst = 0.0;
  for (const char* expr : {"1", "2.5", "exp(2*y)", "1 + x^2"}) {
    ScalarField G = ScalarField::from_expr(parse_expression(expr, cs));
    FlatteningMap2D m = flatten_2d(G, box, quad_tol);
    for (const Point& p : cat::grid_points(box, 5)) {
      double jac = m.jacobian(p);
      worst = std::max(worst, std::fabs(jac * jac - G.at(p)));
    }
  }
  report(11, "dim-2 flattening: (Jacobian)^2 = G at 25 grid points",
         worst < 100 * quad_tol, "max defect " + residual_str(worst));
}

// 12. dimension-3 flatness: the first-order system, its Beltrami reduction,
//     and the conformal classifier
void criterion_dim3() {
  auto cs = cat::coords(3);
  auto sf3 = [&cs](const std::string& t) {
    return ScalarField::from_expr(parse_expression(t, cs));
  };
  std::array<ScalarField, 3> id = {sf3("x1"), sf3("x2"), sf3("x3")};
  std::vector<Point> pts = sample_points(cat::default_box(3), 10, 42);
  double id_res = system_residual_3d(id, TwoMetric::standard(3), pts);
  bool ok = id_res < 1e-12;

  // Beltrami/system agreement over 50 draws
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  Rng rng(42);
  int agreed = 0;
  for (int draw = 0; draw < 50; ++draw) {
    std::array<ScalarField, 3> f;
    if (draw % 5 == 0) {
      double th = 0.1 + 0.11 * draw, c = std::cos(th), s = std::sin(th);
      f = {sf3(num(c) + "*x1 - " + num(s) + "*x2"),
           sf3(num(s) + "*x1 + " + num(c) + "*x2"), sf3("x3")};
    } else {
      auto coeff = [&rng, &num]() {
        return num(std::floor(rng.uniform(-1.0, 1.0) * 8.0) / 32.0);
      };
      f = {sf3("x1 + " + coeff() + "*x2*x3 + " + coeff() + "*x2"),
           sf3("x2 + " + coeff() + "*x1*x3 + " + coeff() + "*x3"),
           sf3("x3 + " + coeff() + "*x1*x2 + " + coeff() + "*x1")};
    }
    std::vector<Point> pt = {
        Point{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    double sys = system_residual_3d(f, TwoMetric::standard(3), pt);
    double bel = beltrami_residual(f, TwoMetric::standard(3), pt).max_residual;
    bool sb = sys < 1e-8, bb = bel < 1e-8;
    if (sb == bb && (sb || (sys > 1e-3 && bel > 1e-3))) ++agreed;
  }
  ok = ok && agreed == 50;

  // classifier on the inversion family and on exp(x1)
  Box unit{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
  ScalarField family = sf3("(16 / ((x1-10)^2 + x2^2 + x3^2)^2)^2");
  ConformalVerdict inv = classify_conformal_3d(family, unit, 400, 1e-6);
  bool inv_ok = inv.kind == ConformalVerdict::Kind::FlatInversion &&
                std::fabs(inv.center[0] - 10.0) < 1e-6 &&
                std::fabs(inv.center[1]) < 1e-6 &&
                std::fabs(inv.center[2]) < 1e-6 &&
                std::fabs(inv.radius - 2.0) < 1e-6;
  ConformalVerdict nf = classify_conformal_3d(sf3("exp(x1)"), unit, 400, 1e-6);
  bool nf_ok =
      nf.kind == ConformalVerdict::Kind::NonFlat && nf.fit_residual > 1e-2;
  ok = ok && inv_ok && nf_ok;

  report(12, "dim-3 flatness: system, Beltrami equivalence, classifier", ok,
         "identity " + residual_str(id_res) + ", agreement " +
             std::to_string(agreed) + "/50, classifier " +
             (inv_ok && nf_ok ? "ok" : "wrong"));
}

// 13. infrastructure: jets vs finite differences, parser fuzzing,
//     reproducible reports
void criterion_infrastructure(const std::string& scenario_dir) {
  Rng rng(42);
  auto coords = cat::coords(2);
  Box box{{-2.0, 2.0}, {-2.0, 2.0}};
  bool fd_ok = true;
  for (int i = 0; i < 200; ++i) {
    ScalarField f = ScalarField::from_expr(
        parse_expression(testutil::random_expr(rng, coords, 4, true), coords));
    Point p = rng.point_in(box, 0.1);
    for (int axis = 0; axis < 2; ++axis) {
      double jet = partial_derivative(f, axis).at(p);
      double fd = testutil::central_difference(f, p, axis);
      if (!testutil::close_rel(jet, fd, 1e-6)) fd_ok = false;
    }
  }

  int fuzz_survived = 0;
  const std::string alphabet = "xy+-*/^()0123456789. sincoexpl";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    int len = 1 + static_cast<int>(rng.index(24));
    for (int k = 0; k < len; ++k) s += alphabet[rng.index(alphabet.size())];
    try {
      parse_expression(s, coords);
      ++fuzz_survived;
    } catch (const Error&) {
      ++fuzz_survived;
    }
  }

  bool repro_ok = false;
  try {
    Scenario sc = load_scenario(scenario_dir + "/gst_r2_full.json");
    auto scrub = [](json j) {
      for (auto& c : j.at("checks")) c.erase("wall_time_ms");
      return j.dump();
    };
    std::string a = scrub(run_scenario(sc).to_json());
    std::string b = scrub(run_scenario(sc).to_json());
    repro_ok = (a == b) && !a.empty();
  } catch (const Error&) {
    repro_ok = false;
  }

  report(13, "infrastructure: jets vs finite differences, fuzz, reproducibility",
         fd_ok && fuzz_survived == 500 && repro_ok,
         std::string("fd ") + (fd_ok ? "ok" : "bad") + ", fuzz " +
             std::to_string(fuzz_survived) + "/500, reports " +
             (repro_ok ? "byte-identical" : "diverged"));
}

}  // namespace

int main(int argc, char** argv) {
  std::string scenario_dir = argc > 1 ? argv[1] : "../scenarios";
  criterion_axioms();
  criterion_expansion();
  criterion_levi_civita();
  criterion_curvature_properties();
  criterion_ch_flat();
  criterion_never_vanish();
  criterion_obstruction();
  criterion_invariance();
  criterion_adapted();
  criterion_stationary();
  criterion_flatten();
  criterion_dim3();
  criterion_infrastructure(scenario_dir);
  if (g_failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
