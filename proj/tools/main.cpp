#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tworiem/catalog.hpp"
#include "tworiem/flatness.hpp"
#include "tworiem/scenario.hpp"
#include "tworiem/stationary.hpp"
#include "tworiem/version.hpp"

namespace {

using tworiem::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUsage = 64;

std::uint64_t effective_seed(const std::optional<std::uint64_t>& flag,
                             std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TWORIEM_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return fallback;
}

tworiem::Box parse_box(const std::vector<double>& values, int dim) {
  tworiem::Box box;
  box.dim = dim;
  if (values.size() == 2) {
    for (int i = 0; i < dim; ++i) {
      box.lo[static_cast<std::size_t>(i)] = values[0];
      box.hi[static_cast<std::size_t>(i)] = values[1];
    }
  } else if (static_cast<int>(values.size()) == 2 * dim) {
    for (int i = 0; i < dim; ++i) {
      box.lo[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(2 * i)];
      box.hi[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(2 * i + 1)];
    }
  } else {
    throw tworiem::ScenarioParseError(
        "--box needs lo,hi (applied to every axis) or per-axis lo,hi pairs");
  }
  for (int i = 0; i < dim; ++i)
    if (!(box.lo[static_cast<std::size_t>(i)] < box.hi[static_cast<std::size_t>(i)]))
      throw tworiem::ScenarioParseError("--box intervals must be nonempty");
  return box;
}

void emit(const json& j, const std::string& report_path) {
  std::string text = j.dump(2);
  if (report_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw tworiem::Error("cannot write report to " + report_path);
  out << text << "\n";
}

std::vector<std::string> split_components(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification engine for 2-Riemannian geometry"};
  app.set_version_flag("--version", tworiem::kVersion);
  app.require_subcommand(1);

  // verify ---------------------------------------------------------------
  std::string scenario_path, report_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<double> tol_abs_flag;
  int jobs = 1;
  auto* verify = app.add_subcommand("verify", "Run a scenario's checks");
  verify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  verify->add_option("--report", report_path, "Write the report here");
  verify->add_option("--seed", seed_flag, "Override the sampling seed");
  verify->add_option("--tol-abs", tol_abs_flag, "Override the absolute tolerance");
  verify->add_option("--jobs", jobs, "Run checks concurrently");

  // flatten2d ------------------------------------------------------------
  std::string g_expr = "1";
  std::vector<double> box_values{0.0, 1.0};
  double quad_tol = 1e-10;
  int grid = 5;
  auto* flatten = app.add_subcommand("flatten2d", "Flattening map of a dim-2 metric");
  flatten->add_option("--g-expr", g_expr, "G = g(dx,dx/dy) as an expression in x,y")
      ->required();
  flatten->add_option("--box", box_values, "Domain box")->delimiter(',');
  flatten->add_option("--tol", quad_tol, "Quadrature tolerance");
  flatten->add_option("--grid", grid, "Verification grid points per axis");
  flatten->add_option("--report", report_path, "Write the verdict here");

  // conformal3d ----------------------------------------------------------
  std::string lambda_expr;
  int samples = 400;
  double fit_tol = 1e-6;
  auto* conformal = app.add_subcommand("conformal3d",
                                       "Flatness classifier for lambda*gst on R^3");
  conformal->add_option("--lambda", lambda_expr, "Conformal factor in x1,x2,x3")
      ->required();
  conformal->add_option("--box", box_values, "Domain box")->delimiter(',');
  conformal->add_option("--samples", samples, "Sample count for the fit");
  conformal->add_option("--fit-tol", fit_tol, "Fit tolerance");
  conformal->add_option("--seed", seed_flag, "Override the sampling seed");
  conformal->add_option("--report", report_path, "Write the verdict here");

  // stationary -----------------------------------------------------------
  std::string field_expr;
  std::string stat_lambda = "1";
  auto* stationary = app.add_subcommand("stationary",
                                        "Stationarity verdict for a field on R^2");
  stationary->add_option("--lambda", stat_lambda, "Conformal factor over gst");
  stationary->add_option("--field", field_expr, "Components \"fx,fy\"")->required();
  stationary->add_option("--box", box_values, "Domain box")->delimiter(',');
  stationary->add_option("--seed", seed_flag, "Override the sampling seed");
  stationary->add_option("--report", report_path, "Write the verdict here");

  // curvature-witness ------------------------------------------------------
  auto* witness = app.add_subcommand("curvature-witness",
                                     "Nonzero-curvature witness for a scenario metric");
  witness->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  witness->add_option("--seed", seed_flag, "Override the sampling seed");
  witness->add_option("--report", report_path, "Write the witness here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      tworiem::Scenario sc = tworiem::load_scenario(scenario_path);
      sc.seed = effective_seed(seed_flag, sc.seed);
      if (tol_abs_flag) sc.tol.abs = *tol_abs_flag;
      tworiem::Report rep = tworiem::run_scenario(sc, jobs);
      emit(rep.to_json(), report_path);
      return rep.all_pass() ? kExitPass : kExitCheckFailed;
    }

    if (flatten->parsed()) {
      auto coords = tworiem::catalog::coords(2);
      tworiem::ScalarField G = tworiem::ScalarField::from_expr(
          tworiem::parse_expression(g_expr, coords));
      tworiem::Box box = parse_box(box_values, 2);
      tworiem::FlatteningMap2D map = tworiem::flatten_2d(G, box, quad_tol);
      double worst = 0.0;
      for (const tworiem::Point& p : tworiem::catalog::grid_points(box, grid)) {
        double jac = map.jacobian(p);
        worst = std::max(worst, std::fabs(jac * jac - G.at(p)));
      }
      json j;
      j["map"] = {{"u", "x"},
                  {"v", "integral of sqrt(G)(x,t) dt from 0 to y"}};
      j["g_expr"] = g_expr;
      j["quad_tol"] = quad_tol;
      j["max_jacobian_defect"] = worst;
      j["pass"] = worst < 100.0 * quad_tol;
      emit(j, report_path);
      return j["pass"].get<bool>() ? kExitPass : kExitCheckFailed;
    }

    if (conformal->parsed()) {
      auto coords = tworiem::catalog::coords(3);
      tworiem::ScalarField lam = tworiem::ScalarField::from_expr(
          tworiem::parse_expression(lambda_expr, coords));
      tworiem::Box box = parse_box(box_values, 3);
      tworiem::ConformalVerdict v = tworiem::classify_conformal_3d(
          lam, box, samples, fit_tol, effective_seed(seed_flag, 42));
      json j;
      j["lambda"] = lambda_expr;
      j["verdict"] = v.label();
      j["fit_residual"] = v.fit_residual;
      j["samples"] = v.samples_used;
      if (v.kind == tworiem::ConformalVerdict::Kind::FlatInversion) {
        j["center"] = {v.center[0], v.center[1], v.center[2]};
        j["radius"] = v.radius;
      }
      if (v.center_inside_box) j["center_inside_box"] = true;
      emit(j, report_path);
      return kExitPass;
    }

    if (stationary->parsed()) {
      auto coords = tworiem::catalog::coords(2);
      auto comps = split_components(field_expr);
      if (comps.size() != 2)
        throw tworiem::ScenarioParseError("--field needs two components \"fx,fy\"");
      std::vector<tworiem::ScalarField> fields;
      for (const auto& c : comps)
        fields.push_back(tworiem::ScalarField::from_expr(
            tworiem::parse_expression(c, coords)));
      tworiem::VectorField X(std::move(fields));
      tworiem::ScalarField lam = tworiem::ScalarField::from_expr(
          tworiem::parse_expression(stat_lambda, coords));
      tworiem::Box box = parse_box(box_values, 2);
      std::uint64_t seed = effective_seed(seed_flag, 42);
      tworiem::TwoMetric g =
          tworiem::TwoMetric::conformal(lam, tworiem::TwoMetric::standard(2));
      tworiem::StationarityReport rep = tworiem::stationarity_residual(
          g, {"field", X}, tworiem::catalog::stationary_witnesses(seed),
          tworiem::sample_points(box, 20, seed));
      json j;
      j["field"] = field_expr;
      j["lambda"] = stat_lambda;
      j["seed"] = seed;
      j["verdict"] = rep.stationary ? "stationary-on-catalog" : "non-stationary";
      j["max_residual"] = rep.max_residual;
      if (!rep.stationary) {
        json w;
        w["Y"] = rep.witness_name;
        json pt = json::array();
        for (int i = 0; i < rep.witness_point.n; ++i)
          pt.push_back(rep.witness_point[i]);
        w["point"] = pt;
        w["value"] = rep.witness_value;
        j["witness"] = w;
      }
      emit(j, report_path);
      return kExitPass;
    }

    if (witness->parsed()) {
      tworiem::Scenario sc = tworiem::load_scenario(scenario_path);
      sc.seed = effective_seed(seed_flag, sc.seed);
      auto tuples = tworiem::catalog::curvature_tuples(sc.dimension);
      auto grid5 = tworiem::catalog::grid_points(sc.box, 5);
      tworiem::CurvatureWitness w =
          tworiem::find_nonzero_curvature(sc.metric, tuples, grid5, 0.1);
      json j;
      j["found"] = w.found;
      j["normalized"] = w.normalized;
      j["value"] = w.raw_value;
      if (w.tuple_index >= 0) {
        json names = json::array();
        for (const auto& n : w.names) names.push_back(n);
        j["fields"] = names;
        json pt = json::array();
        for (int i = 0; i < w.point.n; ++i) pt.push_back(w.point[i]);
        j["point"] = pt;
      }
      emit(j, report_path);
      return w.found ? kExitPass : kExitCheckFailed;
    }
  } catch (const tworiem::ScenarioParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const tworiem::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const tworiem::UnknownIdentifier& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const tworiem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
