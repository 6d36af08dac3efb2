#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "tworiem/catalog.hpp"
#include "tworiem/curvature.hpp"
#include "tworiem/flatness.hpp"
#include "tworiem/scenario.hpp"
#include "tworiem/stationary.hpp"
#include "tworiem/version.hpp"

namespace py = pybind11;
using namespace tworiem;

namespace {

Box box_from_pairs(const std::vector<std::pair<double, double>>& axes) {
  Box box;
  box.dim = static_cast<int>(axes.size());
  for (int i = 0; i < box.dim; ++i) {
    box.lo[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)].first;
    box.hi[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)].second;
  }
  return box;
}

ScalarField scalar_of(const std::string& expr,
                      const std::vector<std::string>& coords) {
  return ScalarField::from_expr(parse_expression(expr, coords));
}

VectorField field_of(const std::vector<std::string>& comps,
                     const std::vector<std::string>& coords) {
  std::vector<ScalarField> fields;
  for (const auto& c : comps) fields.push_back(scalar_of(c, coords));
  return VectorField(std::move(fields));
}

Point point_of(const std::vector<double>& xs) { return make_point(xs); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical verification engine for 2-Riemannian geometry";
  m.attr("__version__") = kVersion;

  py::register_exception<ScenarioParseError>(m, "ScenarioParseError");
  py::register_exception<DomainError>(m, "DomainError");
  static py::exception<Error> base_error(m, "TworiemError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioParseError&) {
      throw;  // handled by the registered exception above
    } catch (const DomainError&) {
      throw;
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  m.def(
      "eval_expr",
      [](const std::string& expr, const std::vector<std::string>& coords,
         const std::vector<double>& at) {
        return scalar_of(expr, coords).at(point_of(at));
      },
      py::arg("expr"), py::arg("coords"), py::arg("at"),
      "Evaluate a coordinate expression at a point.");

  m.def(
      "eval_derivative",
      [](const std::string& expr, const std::vector<std::string>& coords,
         const std::vector<double>& at, int axis) {
        return partial_derivative(scalar_of(expr, coords), axis).at(point_of(at));
      },
      py::arg("expr"), py::arg("coords"), py::arg("at"), py::arg("axis"),
      "Exact partial derivative of an expression at a point (via jets).");

  m.def(
      "run_scenario_text",
      [](const std::string& text, int jobs) {
        Scenario sc = parse_scenario(text);
        return run_scenario(sc, jobs).to_json().dump();
      },
      py::arg("text"), py::arg("jobs") = 1,
      "Run a scenario given as JSON text; returns the report as JSON text.");

  m.def(
      "run_scenario_file",
      [](const std::string& path, int jobs) {
        Scenario sc = load_scenario(path);
        return run_scenario(sc, jobs).to_json().dump();
      },
      py::arg("path"), py::arg("jobs") = 1);

  m.def(
      "g_value",
      [](const std::string& metric_json, int dim,
         const std::vector<std::vector<std::string>>& slots,
         const std::vector<double>& at) {
        auto coords = catalog::coords(dim);
        TwoMetric g = metric_from_json(json::parse(metric_json), dim, coords);
        if (slots.size() != 3) throw Error("g_value needs three slot fields");
        ScalarField v = g_scalar_field(g, field_of(slots[0], coords),
                                       field_of(slots[1], coords),
                                       field_of(slots[2], coords));
        return v.at(point_of(at));
      },
      py::arg("metric"), py::arg("dim"), py::arg("slots"), py::arg("at"),
      "g(X,Y/Z) at a point, metric given as a JSON spec.");

  m.def(
      "pseudoconnection_value",
      [](const std::string& metric_json, int dim,
         const std::vector<std::vector<std::string>>& fields,
         const std::vector<double>& at) {
        auto coords = catalog::coords(dim);
        TwoMetric g = metric_from_json(json::parse(metric_json), dim, coords);
        if (fields.size() != 4)
          throw Error("pseudoconnection_value needs fields X,Y,Z,W");
        Pseudoconnection conn = metric_pseudoconnection(g);
        ScalarField v =
            conn.apply(field_of(fields[0], coords), field_of(fields[1], coords))(
                field_of(fields[2], coords), field_of(fields[3], coords));
        return v.at(point_of(at));
      },
      py::arg("metric"), py::arg("dim"), py::arg("fields"), py::arg("at"),
      "The torsion-free compatible pseudoconnection value at a point.");

  m.def(
      "curvature_value",
      [](const std::string& metric_json, int dim,
         const std::vector<std::vector<std::string>>& fields,
         const std::vector<double>& at) {
        auto coords = catalog::coords(dim);
        TwoMetric g = metric_from_json(json::parse(metric_json), dim, coords);
        if (fields.size() != 5)
          throw Error("curvature_value needs fields X,Y,s,W1,W2");
        Pseudoconnection conn = metric_pseudoconnection(g);
        D2Element r = curvature(conn, field_of(fields[0], coords),
                                field_of(fields[1], coords),
                                field_of(fields[2], coords));
        ScalarField v =
            r(field_of(fields[3], coords), field_of(fields[4], coords));
        return v.at(point_of(at));
      },
      py::arg("metric"), py::arg("dim"), py::arg("fields"), py::arg("at"),
      "Curvature R(X,Y)s(W1,W2) of the metric pseudoconnection at a point.");

  m.def(
      "flatten2d",
      [](const std::string& g_expr,
         const std::vector<std::pair<double, double>>& box_axes, double tol,
         int grid) {
        auto coords = catalog::coords(2);
        ScalarField G = scalar_of(g_expr, coords);
        Box box = box_from_pairs(box_axes);
        FlatteningMap2D map = flatten_2d(G, box, tol);
        double worst = 0.0;
        for (const Point& p : catalog::grid_points(box, grid))
          worst = std::max(worst,
                           std::fabs(map.jacobian(p) * map.jacobian(p) - G.at(p)));
        json j;
        j["max_jacobian_defect"] = worst;
        j["pass"] = worst < 100.0 * tol;
        return j.dump();
      },
      py::arg("g_expr"), py::arg("box"), py::arg("tol") = 1e-10,
      py::arg("grid") = 5);

  m.def(
      "classify_conformal3d",
      [](const std::string& lambda_expr,
         const std::vector<std::pair<double, double>>& box_axes, int samples,
         double fit_tol, std::uint64_t seed) {
        auto coords = catalog::coords(3);
        ConformalVerdict v = classify_conformal_3d(
            scalar_of(lambda_expr, coords), box_from_pairs(box_axes), samples,
            fit_tol, seed);
        json j;
        j["verdict"] = v.label();
        j["fit_residual"] = v.fit_residual;
        if (v.kind == ConformalVerdict::Kind::FlatInversion) {
          j["center"] = {v.center[0], v.center[1], v.center[2]};
          j["radius"] = v.radius;
        }
        if (v.center_inside_box) j["center_inside_box"] = true;
        return j.dump();
      },
      py::arg("lambda_expr"), py::arg("box"), py::arg("samples") = 400,
      py::arg("fit_tol") = 1e-6, py::arg("seed") = 42);

  m.def(
      "stationarity",
      [](const std::vector<std::string>& field_comps,
         const std::string& lambda_expr,
         const std::vector<std::pair<double, double>>& box_axes,
         std::uint64_t seed) {
        auto coords = catalog::coords(2);
        TwoMetric g = TwoMetric::conformal(scalar_of(lambda_expr, coords),
                                           TwoMetric::standard(2));
        Box box = box_from_pairs(box_axes);
        StationarityReport rep = stationarity_residual(
            g, {"field", field_of(field_comps, coords)},
            catalog::stationary_witnesses(seed), sample_points(box, 20, seed));
        json j;
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
        return j.dump();
      },
      py::arg("field"), py::arg("lambda_expr") = "1",
      py::arg("box") =
          std::vector<std::pair<double, double>>{{-2.0, 2.0}, {-2.0, 2.0}},
      py::arg("seed") = 42);

  m.def(
      "curvature_witness",
      [](const std::string& metric_json, int dim,
         const std::vector<std::pair<double, double>>& box_axes, double threshold) {
        auto coords = catalog::coords(dim);
        TwoMetric g = metric_from_json(json::parse(metric_json), dim, coords);
        auto tuples = catalog::curvature_tuples(dim);
        auto grid = catalog::grid_points(box_from_pairs(box_axes), 5);
        CurvatureWitness w = find_nonzero_curvature(g, tuples, grid, threshold);
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
        return j.dump();
      },
      py::arg("metric"), py::arg("dim"), py::arg("box"),
      py::arg("threshold") = 0.1);
}
