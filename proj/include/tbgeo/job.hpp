#pragma once

// Config ingestion (TOML subset or JSON), batch check execution, and report /
// CSV emission. Reports are byte-deterministic: numbers are printed with 17
// significant digits and checks are sorted by name.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbgeo/models.hpp"
#include "tbgeo/variational.hpp"

namespace tbg {

struct JobConfig {
  int schema_version = 1;
  std::uint64_t seed = 0;
  double tolerance = 1e-5;
  std::string backend = "dual";  // "dual" | "fd"

  std::string manifold_id = "euclidean";
  int n = 2;
  double c = 1.0;

  // Field: a family id plus parameters, or per-component expressions.
  std::string family;
  std::vector<double> family_params;
  std::vector<std::string> family_profiles;  // f, or u and v, as expression text
  std::vector<std::string> components;
  std::vector<std::string> variation;  // first-variation direction (defaults to all-ones)

  std::vector<double> lower, upper;
  int quadrature_points = 12;
  int grid = 9;

  std::vector<std::string> checks;  // classify | bienergy | first-variation | ode

  // ODE check parameters.
  std::string ode_id;
  std::string ode_f;  // profile expression for the residual check
  double ode_t0 = 0.0, ode_t1 = 1.0, ode_step = 1e-3;
  std::optional<std::array<double, 4>> ode_init;  // present -> integrate

  std::string out_path;
  std::string csv_path;
};

/// Load a config file; dispatches on extension (.toml or .json).
JobConfig load_config(const std::string& path);

/// Parse the supported TOML subset into a JSON tree.
nlohmann::ordered_json parse_toml(const std::string& text);

JobConfig config_from_json(const nlohmann::ordered_json& j);

/// Realize the chart and field described by the config.
Chart chart_from_config(const JobConfig& cfg);
VectorField field_from_config(const JobConfig& cfg, const Chart& chart);
BoxDomain box_from_config(const JobConfig& cfg, const Chart& chart);

/// Run all requested checks; one failing or throwing check does not abort the
/// others. The result is the report JSON (schema_version, config_digest,
/// checks sorted by name).
nlohmann::ordered_json run_job(const JobConfig& cfg);

/// True when every check in the report has status "pass".
bool report_all_pass(const nlohmann::ordered_json& report);

/// Serialize with fixed 17-significant-digit number formatting.
std::string dump_report(const nlohmann::ordered_json& report);

/// Residual/density grid CSV: coordinates, |nabla X|, |LapX|, |S(X)|,
/// |bitension|, bienergy density; one row per grid point.
void emit_csv(const Chart& chart, const VectorField& X, const BoxDomain& box,
              const std::vector<int>& per_axis, std::ostream& out);

}  // namespace tbg
