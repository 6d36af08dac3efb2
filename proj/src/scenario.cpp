#include "tworiem/scenario.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "tworiem/catalog.hpp"
#include "tworiem/curvature.hpp"
#include "tworiem/flatness.hpp"
#include "tworiem/stationary.hpp"
#include "tworiem/version.hpp"

namespace tworiem {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ScenarioParseError(msg); }

ScalarField parse_scalar(const std::string& text,
                         const std::vector<std::string>& coords) {
  return ScalarField::from_expr(parse_expression(text, coords));
}

VectorField parse_field(const std::vector<std::string>& comps,
                        const std::vector<std::string>& coords) {
  std::vector<ScalarField> fields;
  for (const auto& c : comps) fields.push_back(parse_scalar(c, coords));
  return VectorField(std::move(fields));
}

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.n; ++i) a.push_back(p[i]);
  return a;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

TwoMetric metric_from_json(const json& spec, int dim,
                           const std::vector<std::string>& coords) {
  if (!spec.is_object() || !spec.contains("kind"))
    bad("metric spec needs a \"kind\"");
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "standard") return TwoMetric::standard(dim);
  if (kind == "simple") {
    auto rows = spec.at("h").get<std::vector<std::vector<std::string>>>();
    std::vector<std::vector<ScalarField>> h;
    for (const auto& row : rows) {
      std::vector<ScalarField> r;
      for (const auto& e : row) r.push_back(parse_scalar(e, coords));
      h.push_back(std::move(r));
    }
    return TwoMetric::simple(std::move(h));
  }
  if (kind == "conformal") {
    ScalarField lam = parse_scalar(spec.at("lambda").get<std::string>(), coords);
    json base = spec.contains("base") ? spec.at("base")
                                      : json{{"kind", "standard"}};
    return TwoMetric::conformal(lam, metric_from_json(base, dim, coords));
  }
  if (kind == "table") {
    if (dim == 2) {
      if (!spec.contains("g112")) bad("dim-2 table metric needs \"g112\"");
      return TwoMetric::table2(parse_scalar(spec.at("g112").get<std::string>(), coords));
    }
    auto iij_rows = spec.at("iij").get<std::vector<std::vector<std::string>>>();
    auto mixed_list = spec.at("mixed").get<std::vector<std::string>>();
    if (iij_rows.size() != 3 || mixed_list.size() != 3)
      bad("dim-3 table metric needs 3x3 \"iij\" and 3 \"mixed\" entries");
    std::array<std::array<ScalarField, 3>, 3> iij;
    std::array<ScalarField, 3> mixed;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j)
        if (i != j)
          iij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              parse_scalar(iij_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], coords);
      mixed[static_cast<std::size_t>(i)] =
          parse_scalar(mixed_list[static_cast<std::size_t>(i)], coords);
    }
    return TwoMetric::table3(std::move(iij), std::move(mixed));
  }
  bad("unknown metric kind '" + kind + "'");
}

const VectorField& Scenario::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) bad("unknown field '" + name + "'");
  return it->second;
}

const ScalarField& Scenario::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end()) bad("unknown scalar '" + name + "'");
  return it->second;
}

// --- check registry ------------------------------------------------------------

namespace {

using CheckFn = std::function<void(const Scenario&, const json&, CheckResult&)>;

std::vector<VectorField> named_fields(const Scenario& sc, const json& params,
                                      std::size_t expect) {
  if (!params.contains("fields")) bad("check needs a \"fields\" list");
  auto names = params.at("fields").get<std::vector<std::string>>();
  if (names.size() != expect)
    bad("check expects " + std::to_string(expect) + " fields");
  std::vector<VectorField> out;
  for (const auto& n : names) out.push_back(sc.field(n));
  return out;
}

double check_tol(const Scenario& sc, const json& params) {
  return params.contains("tol") ? params.at("tol").get<double>() : sc.tol.abs;
}

void set_status(CheckResult& r, bool pass) { r.status = pass ? "pass" : "fail"; }

OrdinaryPseudoconnection theta_from_params(const Scenario& sc, const json& params) {
  std::string kind = params.contains("theta")
                         ? params.at("theta").get<std::string>()
                         : "flat";
  OrdinaryPseudoconnection theta;
  if (kind == "flat") {
    theta = flat_connection(sc.dimension);
  } else if (kind == "levi-civita") {
    if (!sc.metric_h) bad("theta \"levi-civita\" needs a simple metric");
    InnerProductField h;
    h.dim = sc.dimension;
    for (const auto& row : *sc.metric_h) {
      std::vector<ScalarField> r;
      for (const auto& e : row) r.push_back(parse_scalar(e, sc.coords));
      h.entries.push_back(std::move(r));
    }
    theta = riemannian_connection(h);
  } else {
    bad("unknown theta kind '" + kind + "'");
  }
  if (params.contains("shift_lambda")) {
    ScalarField lam =
        parse_scalar(params.at("shift_lambda").get<std::string>(), sc.coords);
    theta = conformal_shift(theta, lam);
  }
  return theta;
}

void check_axioms_entry(const Scenario& sc, const json& params, CheckResult& r) {
  int trials = params.contains("trials") ? params.at("trials").get<int>() : 50;
  // for simple metrics, the generating inner product must be SPD pointwise
  std::vector<std::vector<ScalarField>> h;
  if (sc.metric_h)
    for (const auto& row : *sc.metric_h) {
      std::vector<ScalarField> rr;
      for (const auto& e : row) rr.push_back(parse_scalar(e, sc.coords));
      h.push_back(std::move(rr));
    }
  double worst = 0.0;
  json per_axiom = json::object();
  int spd_checked = 0;
  for (const Point& p : sc.evaluation_points()) {
    if (!h.empty()) {
      Mat hm;
      hm.n = sc.dimension;
      for (int i = 0; i < sc.dimension; ++i)
        for (int j = 0; j < sc.dimension; ++j)
          hm(i, j) = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].at(p);
      require_spd(hm);  // NotSPD becomes an error entry
      ++spd_checked;
    }
    AxiomReport rep = check_axioms(sc.metric.at_point(p), sc.dimension, trials,
                                   sc.seed, check_tol(sc, params));
    worst = std::max(worst, rep.worst);
    for (const auto& e : rep.entries) {
      double prev = per_axiom.contains(e.name)
                        ? per_axiom.at(e.name).get<double>()
                        : 0.0;
      per_axiom[e.name] = std::max(prev, e.max_residual);
    }
  }
  r.max_residual = worst;
  r.details["per_axiom"] = per_axiom;
  r.details["trials"] = trials;
  if (spd_checked > 0) r.details["spd_points"] = spd_checked;
  set_status(r, worst <= check_tol(sc, params));
}

void check_torsion(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 4);
  Pseudoconnection conn = metric_pseudoconnection(sc.metric);
  r.max_residual = torsion_residual(conn, conn.principal, f[0], f[1], f[2], f[3],
                                    sc.evaluation_points());
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_compatibility(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 4);
  Pseudoconnection conn = metric_pseudoconnection(sc.metric);
  r.max_residual = compatibility_residual(conn, conn.principal, f[0], f[1], f[2],
                                          f[3], sc.evaluation_points());
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_symmetry(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 3);
  auto P = principal_homomorphism(sc.metric);
  r.max_residual = symmetry_residual(P, f[0], f[1], f[2], sc.evaluation_points());
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_module_rules(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 6);
  if (!params.contains("scalar")) bad("module-rules needs a \"scalar\"");
  const ScalarField& phi = sc.scalar(params.at("scalar").get<std::string>());
  Pseudoconnection conn = metric_pseudoconnection(sc.metric);
  r.max_residual = module_rules_residual(conn, conn.principal, phi, f[0], f[1],
                                         f[2], f[3], f[4], f[5],
                                         sc.evaluation_points());
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_adapted(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 3);
  OrdinaryPseudoconnection theta = theta_from_params(sc, params);
  r.max_residual =
      adapted_residual(theta, sc.metric, f[0], f[1], f[2], sc.evaluation_points());
  // secondary: the full four-slot expansion on the same fields
  double full = adapted_residual_full(theta, sc.metric, f[0], f[1], f[2], f[0],
                                      sc.evaluation_points());
  r.details["four_slot_residual"] = full;
  set_status(r, r.max_residual <= check_tol(sc, params) &&
                    full <= check_tol(sc, params));
}

void check_split(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 4);
  OrdinaryPseudoconnection theta = theta_from_params(sc, params);
  SplitSeries s = adapted_split(sc.metric, theta, f[0], f[1], f[2], f[3],
                                sc.evaluation_points());
  r.max_residual = s.max_split_defect();
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_r2_explicit(const Scenario& sc, const json& params, CheckResult& r) {
  if (sc.dimension != 2 || sc.metric.kind() != TwoMetric::Kind::Standard)
    bad("r2-explicit requires the standard metric on R^2");
  // magnitude-scaled comparison, so the relative tolerance is the default
  double tol = params.contains("tol") ? params.at("tol").get<double>() : sc.tol.rel;
  int draws = params.contains("draws") ? params.at("draws").get<int>() : 200;
  Pseudoconnection conn = metric_pseudoconnection(sc.metric);
  Rng rng(sc.seed);
  double worst = 0.0;
  for (int i = 0; i < draws; ++i) {
    VectorField A = catalog::random_poly_field(rng, 2);
    VectorField B = catalog::random_poly_field(rng, 2);
    VectorField C = catalog::random_poly_field(rng, 2);
    VectorField D = catalog::random_poly_field(rng, 2);
    Point p = rng.point_in(sc.box, 0.05);
    double direct = conn.apply(A, B)(C, D).at(p);
    double closed = explicit_r2_value(A, B, C, D, p);
    double scale = std::max({1.0, std::fabs(direct), std::fabs(closed)});
    worst = std::max(worst, std::fabs(direct - closed) / scale);
  }
  r.max_residual = worst;
  r.details["draws"] = draws;
  set_status(r, worst <= tol);
}

void check_curvature_props(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 5);
  if (!params.contains("scalar")) bad("curvature-props needs a \"scalar\"");
  const ScalarField& fn = sc.scalar(params.at("scalar").get<std::string>());
  Pseudoconnection conn = metric_pseudoconnection(sc.metric);
  CurvaturePropertyReport rep = curvature_property_residuals(
      conn, f[0], f[1], f[2], f[3], f[4], fn, sc.evaluation_points());
  r.max_residual = rep.worst();
  r.details["trilinear"] = rep.trilinear;
  r.details["antisym"] = rep.antisym;
  r.details["fun_linear"] = rep.fun_linear;
  r.details["third_slot"] = rep.third_slot;
  r.details["bianchi"] = rep.bianchi;
  set_status(r, rep.worst() <= check_tol(sc, params));
}

void check_ch_flat(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 5);
  Pseudoconnection dP =
      differential_pseudoconnection(principal_homomorphism(sc.metric), sc.dimension);
  D2Element rc = curvature(dP, f[0], f[1], f[2]);
  r.max_residual = max_abs_over(rc(f[3], f[4]), sc.evaluation_points());
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_never_vanish(const Scenario& sc, const json& params, CheckResult& r) {
  double threshold = params.contains("threshold")
                         ? params.at("threshold").get<double>()
                         : 0.1;
  int per_axis = params.contains("grid") ? params.at("grid").get<int>() : 5;
  auto tuples = catalog::curvature_tuples(sc.dimension);
  auto grid = catalog::grid_points(sc.box, per_axis);
  CurvatureWitness w =
      find_nonzero_curvature(sc.metric, tuples, grid, threshold);
  r.max_residual = w.normalized;
  r.details["found"] = w.found;
  if (w.tuple_index >= 0) {
    r.details["witness"] = {
        {"fields", {w.names[0], w.names[1], w.names[2], w.names[3], w.names[4]}},
        {"point", point_json(w.point)},
        {"value", w.raw_value},
        {"normalized", w.normalized}};
  }
  set_status(r, w.found);
}

void check_koszul_obstruction(const Scenario& sc, const json& params,
                              CheckResult& r) {
  double principal_tol = params.contains("principal_tol")
                             ? params.at("principal_tol").get<double>()
                             : 1e-10;
  double witness_threshold = params.contains("witness_threshold")
                                 ? params.at("witness_threshold").get<double>()
                                 : 0.1;
  std::vector<NamedField> fields;
  if (params.contains("fields")) {
    for (const auto& n : params.at("fields").get<std::vector<std::string>>())
      fields.push_back({n, sc.field(n)});
  } else {
    fields = catalog::basic_fields(sc.dimension);
  }
  ObstructionReport rep =
      koszul_obstruction(sc.metric, fields, sc.evaluation_points());
  r.max_residual = rep.principal_diag_max;
  r.details["principal_diag_max"] = rep.principal_diag_max;
  r.details["connection_diag_max"] = rep.connection_diag_max;
  r.details["witness"] = {{"X", rep.witness_x},
                          {"Y", rep.witness_y},
                          {"Z", rep.witness_z},
                          {"point", point_json(rep.witness_point)},
                          {"value", rep.witness_value}};
  set_status(r, rep.principal_diag_max <= principal_tol &&
                    rep.connection_diag_max > witness_threshold);
}

void check_invariance(const Scenario& sc, const json& params, CheckResult& r) {
  auto f = named_fields(sc, params, 5);
  if (!params.contains("map")) bad("invariance needs a \"map\"");
  const json& m = params.at("map");
  VectorField fwd =
      parse_field(m.at("forward").get<std::vector<std::string>>(), sc.coords);
  VectorField inv =
      parse_field(m.at("inverse").get<std::vector<std::string>>(), sc.coords);
  Diffeo phi = Diffeo::create(fwd, inv, sc.box, 20, sc.seed);
  TwoMetric gbar = params.contains("gbar")
                       ? metric_from_json(params.at("gbar"), sc.dimension, sc.coords)
                       : sc.metric;
  auto [cres, rres] = isometry_invariance_residual(
      phi, sc.metric, gbar, f[0], f[1], f[2], f[3], f[4],
      sc.evaluation_points(), check_tol(sc, params));
  r.max_residual = std::max(cres, rres);
  r.details["connection_residual"] = cres;
  r.details["curvature_residual"] = rres;
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_koszul_comparison(const Scenario& sc, const json& params,
                             CheckResult& r) {
  auto f = named_fields(sc, params, 4);
  InnerProductField h;
  h.dim = sc.dimension;
  if (params.contains("h")) {
    for (const auto& row :
         params.at("h").get<std::vector<std::vector<std::string>>>()) {
      std::vector<ScalarField> rr;
      for (const auto& e : row) rr.push_back(parse_scalar(e, sc.coords));
      h.entries.push_back(std::move(rr));
    }
  } else if (sc.metric_h) {
    for (const auto& row : *sc.metric_h) {
      std::vector<ScalarField> rr;
      for (const auto& e : row) rr.push_back(parse_scalar(e, sc.coords));
      h.entries.push_back(std::move(rr));
    }
  } else {
    h = InnerProductField::identity(sc.dimension);
  }
  r.max_residual = koszul_comparison_residual(h, f[0], f[1], f[2], f[3],
                                              sc.evaluation_points());
  set_status(r, r.max_residual <= check_tol(sc, params));
}

void check_stationary(const Scenario& sc, const json& params, CheckResult& r) {
  if (!params.contains("field")) bad("stationary needs a \"field\"");
  std::string name = params.at("field").get<std::string>();
  NamedField X{name, sc.field(name)};
  double threshold = params.contains("threshold")
                         ? params.at("threshold").get<double>()
                         : 1e-8;
  StationarityReport rep = stationarity_residual(
      sc.metric, X, catalog::stationary_witnesses(sc.seed),
      sc.evaluation_points(), threshold);
  r.max_residual = rep.max_residual;
  r.details["verdict"] =
      rep.stationary ? "stationary-on-catalog" : "non-stationary";
  if (!rep.stationary)
    r.details["witness"] = {{"Y", rep.witness_name},
                            {"point", point_json(rep.witness_point)},
                            {"value", rep.witness_value}};
  set_status(r, rep.stationary);
}

void check_thcc(const Scenario& sc, const json& params, CheckResult& r) {
  if (sc.dimension != 2) bad("thCC-equivalence requires dimension 2");
  ScalarField lam;
  if (sc.metric.kind() == TwoMetric::Kind::Standard) {
    lam = ScalarField::constant(2, 1.0);
  } else if (sc.metric_lambda) {
    lam = parse_scalar(*sc.metric_lambda, sc.coords);
  } else {
    bad("thCC-equivalence requires a conformal (or standard) metric");
  }
  std::vector<NamedField> fields;
  if (params.contains("fields")) {
    for (const auto& n : params.at("fields").get<std::vector<std::string>>())
      fields.push_back({n, sc.field(n)});
  } else {
    for (const auto& f : catalog::divergence_free_fields()) fields.push_back(f);
    for (const auto& f : catalog::non_divergence_free_fields())
      fields.push_back(f);
  }
  EquivalenceReport rep =
      equivalence_sweep(lam, fields, catalog::stationary_witnesses(sc.seed),
                        sc.evaluation_points());
  json entries = json::array();
  int agrees = 0;
  for (const auto& e : rep.entries) {
    entries.push_back({{"field", e.name},
                       {"stationary", e.stationary},
                       {"divergence_solution", e.divergence_solution},
                       {"agree", e.agree}});
    if (e.agree) ++agrees;
    r.max_residual = std::max(
        r.max_residual, e.agree ? 0.0
                                : std::min(e.stationarity_residual,
                                           e.div_residual_max));
  }
  r.details["entries"] = entries;
  r.details["agreement"] =
      std::to_string(agrees) + "/" + std::to_string(rep.entries.size());
  set_status(r, rep.all_agree);
}

void check_s2(const Scenario& sc, const json& params, CheckResult& r) {
  if (sc.dimension != 2) bad("s2 requires dimension 2");
  int pairs = params.contains("pairs") ? params.at("pairs").get<int>() : 100;
  Rng rng(sc.seed);
  double worst = 0.0;
  auto pts = sc.evaluation_points();
  for (int i = 0; i < pairs; ++i) {
    VectorField A = catalog::random_poly_field(rng, 2);
    VectorField B = catalog::random_poly_field(rng, 2);
    worst = std::max(worst, s2_residual(A, B, pts));
  }
  r.max_residual = worst;
  r.details["pairs"] = pairs;
  set_status(r, worst <= check_tol(sc, params));
}

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> reg = {
      {"axioms", check_axioms_entry},
      {"torsion-free", check_torsion},
      {"compatibility", check_compatibility},
      {"symmetry", check_symmetry},
      {"module-rules", check_module_rules},
      {"adapted", check_adapted},
      {"computa-split", check_split},
      {"r2-explicit", check_r2_explicit},
      {"curvature-props", check_curvature_props},
      {"ch-flat", check_ch_flat},
      {"never-vanish", check_never_vanish},
      {"koszul-obstruction", check_koszul_obstruction},
      {"invariance", check_invariance},
      {"koszul-comparison", check_koszul_comparison},
      {"stationary", check_stationary},
      {"thCC-equivalence", check_thcc},
      {"s2", check_s2},
  };
  return reg;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("invalid JSON: ") + e.what());
  }
  Scenario sc;
  sc.source_text = text;
  try {
    sc.dimension = j.at("dimension").get<int>();
    if (sc.dimension < 2 || sc.dimension > 3)
      bad("dimension must be 2 or 3");
    sc.coords = j.at("coords").get<std::vector<std::string>>();
    if (static_cast<int>(sc.coords.size()) != sc.dimension)
      bad("coords must list one name per dimension");

    auto axes = j.at("box").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(axes.size()) != sc.dimension)
      bad("box must give one interval per dimension");
    sc.box.dim = sc.dimension;
    for (int i = 0; i < sc.dimension; ++i) {
      if (axes[static_cast<std::size_t>(i)].size() != 2) bad("box intervals are [lo, hi]");
      sc.box.lo[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)][0];
      sc.box.hi[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)][1];
      if (!(sc.box.lo[static_cast<std::size_t>(i)] < sc.box.hi[static_cast<std::size_t>(i)]))
        bad("box intervals must be nonempty");
    }

    const json& mspec = j.at("metric");
    sc.metric = metric_from_json(mspec, sc.dimension, sc.coords);
    if (mspec.at("kind") == "simple")
      sc.metric_h = mspec.at("h").get<std::vector<std::vector<std::string>>>();
    if (mspec.at("kind") == "conformal") {
      // the factor is only recorded when the base is standard, which is what
      // the conformal-specific checks assume
      bool std_base = !mspec.contains("base") ||
                      mspec.at("base").at("kind") == "standard";
      if (std_base)
        sc.metric_lambda = mspec.at("lambda").get<std::string>();
    }

    if (j.contains("fields"))
      for (const auto& [name, comps] : j.at("fields").items())
        sc.fields[name] =
            parse_field(comps.get<std::vector<std::string>>(), sc.coords);
    if (j.contains("scalars"))
      for (const auto& [name, e] : j.at("scalars").items())
        sc.scalars[name] = parse_scalar(e.get<std::string>(), sc.coords);

    if (j.contains("points"))
      for (const auto& pv : j.at("points")) {
        Point p = make_point(pv.get<std::vector<double>>());
        if (!sc.box.contains(p)) bad("explicit point lies outside the box");
        sc.explicit_points.push_back(p);
      }
    if (j.contains("random_points"))
      sc.random_points = j.at("random_points").get<int>();
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      if (t.contains("abs")) sc.tol.abs = t.at("abs").get<double>();
      if (t.contains("rel")) sc.tol.rel = t.at("rel").get<double>();
      if (t.contains("quad_tol")) sc.tol.quad_tol = t.at("quad_tol").get<double>();
      if (t.contains("fit_tol")) sc.tol.fit_tol = t.at("fit_tol").get<double>();
    }

    if (!j.contains("checks") || !j.at("checks").is_array() ||
        j.at("checks").empty())
      bad("scenario needs a nonempty \"checks\" list");
    for (const auto& c : j.at("checks")) {
      CheckSpec spec;
      spec.name = c.at("name").get<std::string>();
      if (registry().find(spec.name) == registry().end())
        bad("unknown check '" + spec.name + "'");
      // every name a check references must resolve now
      if (c.contains("fields"))
        for (const auto& n : c.at("fields").get<std::vector<std::string>>())
          if (sc.fields.find(n) == sc.fields.end())
            bad("check '" + spec.name + "' references unknown field '" + n + "'");
      if (c.contains("field")) {
        std::string n = c.at("field").get<std::string>();
        if (sc.fields.find(n) == sc.fields.end())
          bad("check '" + spec.name + "' references unknown field '" + n + "'");
      }
      if (c.contains("scalar")) {
        std::string n = c.at("scalar").get<std::string>();
        if (sc.scalars.find(n) == sc.scalars.end())
          bad("check '" + spec.name + "' references unknown scalar '" + n + "'");
      }
      spec.params = c;
      sc.checks.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw ScenarioParseError(std::string("bad scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Report run_scenario(const Scenario& sc, int jobs) {
  Report rep;
  rep.version = kVersion;
  rep.seed = sc.seed;
  rep.scenario_hash = fnv1a_hex(sc.source_text);
  rep.checks.resize(sc.checks.size());

  auto run_one = [&sc](const CheckSpec& spec, CheckResult& out) {
    out.name = spec.name;
    auto start = std::chrono::steady_clock::now();
    try {
      registry().at(spec.name)(sc, spec.params, out);
    } catch (const Error& e) {
      out.status = "error";
      out.details["error"] = e.what();
    }
    out.wall_time_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < sc.checks.size(); ++i)
      run_one(sc.checks[i], rep.checks[i]);
  } else {
    std::vector<std::future<void>> futs;
    for (std::size_t i = 0; i < sc.checks.size(); ++i)
      futs.push_back(std::async(std::launch::async, [&, i] {
        run_one(sc.checks[i], rep.checks[i]);
      }));
    for (auto& f : futs) f.get();
  }

  for (const CheckResult& c : rep.checks) {
    if (c.status == "pass") ++rep.passed;
    else if (c.status == "fail") ++rep.failed;
    else ++rep.errored;
  }
  return rep;
}

json Report::to_json() const {
  json j;
  j["tool"] = tool;
  j["version"] = version;
  j["seed"] = seed;
  j["scenario_hash"] = scenario_hash;
  json arr = json::array();
  for (const CheckResult& c : checks) {
    json e;
    e["name"] = c.name;
    e["status"] = c.status;
    e["max_residual"] = c.max_residual;
    if (!c.details.is_null() && !c.details.empty()) e["details"] = c.details;
    e["wall_time_ms"] = c.wall_time_ms;
    arr.push_back(std::move(e));
  }
  j["checks"] = arr;
  j["summary"] = {{"pass", passed}, {"fail", failed}, {"error", errored}};
  return j;
}

}  // namespace tworiem
