#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tworiem/field.hpp"
#include "tworiem/metric.hpp"

namespace tworiem {

using json = nlohmann::ordered_json;

struct Tolerances {
  double abs = 1e-8;
  double rel = 1e-9;
  double quad_tol = 1e-10;
  double fit_tol = 1e-6;
};

struct CheckSpec {
  std::string name;
  json params;
};

// Declarative verification input: a metric, named fields and scalars over a
// box, evaluation points, and a list of named checks.
struct Scenario {
  int dimension = 0;
  std::vector<std::string> coords;
  Box box;
  TwoMetric metric;
  std::optional<std::vector<std::vector<std::string>>> metric_h;  // when simple
  std::optional<std::string> metric_lambda;                       // when conformal
  std::map<std::string, VectorField> fields;
  std::map<std::string, ScalarField> scalars;
  std::vector<Point> explicit_points;
  int random_points = 20;
  std::uint64_t seed = 42;
  Tolerances tol;
  std::vector<CheckSpec> checks;
  std::string source_text;  // raw bytes, hashed into reports

  std::vector<Point> evaluation_points() const {
    return sample_points(box, random_points, seed, explicit_points);
  }
  const VectorField& field(const std::string& name) const;
  const ScalarField& scalar(const std::string& name) const;
};

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | error
  double max_residual = 0.0;
  json details;  // witness, verdicts, per-law residuals
  double wall_time_ms = 0.0;
};

struct Report {
  std::string tool = "tworiem";
  std::string version;
  std::uint64_t seed = 0;
  std::string scenario_hash;
  std::vector<CheckResult> checks;
  int passed = 0, failed = 0, errored = 0;

  bool all_pass() const { return failed == 0 && errored == 0; }
  json to_json() const;
};

// Throws ScenarioParseError on malformed input (bad JSON, unresolved names,
// points outside the box, unknown check names caught at run time).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Executes every check in declaration order (concurrently when jobs > 1;
// report order is unaffected). Check failures become entries, not throws.
Report run_scenario(const Scenario& sc, int jobs = 1);

// Metric construction from the scenario JSON spec, reusable by subcommands.
TwoMetric metric_from_json(const json& spec, int dim,
                           const std::vector<std::string>& coords);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace tworiem
