// Command-line front end: batch checks from a config file, residual grid
// sweeps, the fourth-order ODE layer, and the built-in verification suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tbgeo/expr.hpp"
#include "tbgeo/job.hpp"
#include "tbgeo/selftest.hpp"

namespace {

std::vector<double> parse_list(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_grid(const std::string& text) {
  // Accepts "9x9", "9X9" or the multiplication-sign spelling.
  std::string norm;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = text[i];
    if (c == 'x' || c == 'X') {
      norm += ',';
    } else if (c == 0xC3 && i + 1 < text.size() &&
               static_cast<unsigned char>(text[i + 1]) == 0x97) {
      norm += ',';
      ++i;
    } else {
      norm += static_cast<char>(c);
    }
  }
  std::vector<int> out;
  for (double v : parse_list(norm, ',')) out.push_back(static_cast<int>(v));
  return out;
}

int run_check(const std::string& config_path, std::uint64_t* seed, double* tol,
              std::string* backend, std::string* out_path) {
  tbg::JobConfig cfg = tbg::load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (tol) cfg.tolerance = *tol;
  if (backend) cfg.backend = *backend;
  if (out_path && !out_path->empty()) cfg.out_path = *out_path;

  nlohmann::ordered_json report = tbg::run_job(cfg);
  std::string text = tbg::dump_report(report);
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw tbg::ConfigError("cannot write report to " + cfg.out_path);
    out << text;
  } else {
    std::cout << text;
  }
  return tbg::report_all_pass(report) ? 0 : 1;
}

int run_sweep(const std::string& config_path, const std::string& grid,
              const std::string& out_path) {
  tbg::JobConfig cfg = tbg::load_config(config_path);
  tbg::Chart chart = tbg::chart_from_config(cfg);
  tbg::VectorField X = tbg::field_from_config(cfg, chart);
  tbg::BoxDomain box = tbg::box_from_config(cfg, chart);
  std::vector<int> per_axis = parse_grid(grid);
  if (static_cast<int>(per_axis.size()) == 1)
    per_axis.assign(chart.dim, per_axis[0]);
  std::ofstream out(out_path);
  if (!out) throw tbg::ConfigError("cannot write CSV to " + out_path);
  tbg::emit_csv(chart, X, box, per_axis, out);
  return 0;
}

int run_ode(const std::string& id, int n, double c, const std::string& integrate,
            const std::string& span, double step, const std::string& f_text,
            double tol) {
  double t0 = 0.0, t1 = 1.0;
  if (!span.empty()) {
    std::vector<double> ts = parse_list(span, ':');
    if (ts.size() != 2) throw tbg::ConfigError("--span expects t0:t1");
    t0 = ts[0];
    t1 = ts[1];
  }
  if (!integrate.empty()) {
    std::vector<double> v = parse_list(integrate, ',');
    if (v.size() != 4) throw tbg::ConfigError("--integrate expects v0,v1,v2,v3");
    if (id != "transformed")
      throw tbg::ConfigError("integration is supported for the 'transformed' ode id");
    tbg::OdeSpec spec = tbg::transformed_biharmonic_ode(n, c);
    tbg::Trajectory traj =
        tbg::integrate_local(spec, {v[0], v[1], v[2], v[3]}, t0, t1, step);
    const auto& last = traj.state.back();
    std::cout << "steps " << traj.t.size() << "\n";
    std::cout << "final t " << traj.t.back() << "\n";
    std::cout << "final state " << last[0] << " " << last[1] << " " << last[2] << " "
              << last[3] << "\n";
    if (traj.blow_up)
      std::cout << "blow_up_time " << *traj.blow_up << "\n";
    else
      std::cout << "blow_up_time none\n";
    return 0;
  }
  if (f_text.empty())
    throw tbg::ConfigError("residual mode requires --f <expression in one variable>");
  tbg::SmoothScalarFn f = tbg::expr_univariate_fn(tbg::parse_expr(f_text));
  double sup = 0.0;
  const int samples = 21;
  for (int i = 0; i < samples; ++i) {
    double t = t0 + (t1 - t0) * i / (samples - 1);
    sup = std::max(sup, std::abs(tbg::ode_residual(id, f, t, n, c)));
  }
  std::cout << "sup_residual " << sup << "\n";
  return sup < tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vector-field harmonicity and biharmonicity toolkit"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run the checks listed in a config file");
  std::string config_path, out_path, backend;
  std::uint64_t seed = 0;
  double tol = 0.0;
  check->add_option("--config", config_path, "TOML or JSON config")->required();
  auto* seed_opt = check->add_option("--seed", seed, "override the config seed");
  auto* tol_opt = check->add_option("--tol", tol, "override the tolerance");
  auto* backend_opt =
      check->add_option("--backend", backend, "dual or fd")
          ->check(CLI::IsMember({"dual", "fd"}));
  check->add_option("--out", out_path, "write the JSON report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "residual grid CSV over the config domain");
  std::string sweep_config, sweep_grid, sweep_out;
  sweep->add_option("--config", sweep_config, "TOML or JSON config")->required();
  sweep->add_option("--grid", sweep_grid, "per-axis resolution, e.g. 9x9")->required();
  sweep->add_option("--out", sweep_out, "CSV output path")->required();

  auto* ode = app.add_subcommand("ode", "characteristic-equation residuals and integration");
  std::string ode_id, ode_integrate, ode_span, ode_f;
  int ode_n = 2;
  double ode_c = 1.0, ode_step = 1e-3, ode_tol = 1e-6;
  ode->add_option("--id", ode_id,
                  "heisenberg | hyperbolic-harmonic | hyperbolic-biharmonic | transformed")
      ->required();
  ode->add_option("--n", ode_n, "dimension parameter");
  ode->add_option("--c", ode_c, "curvature scale");
  ode->add_option("--integrate", ode_integrate, "initial state v0,v1,v2,v3");
  ode->add_option("--span", ode_span, "t0:t1");
  ode->add_option("--step", ode_step, "integration step");
  ode->add_option("--f", ode_f, "profile expression for the residual mode");
  ode->add_option("--tol", ode_tol, "residual pass threshold");

  auto* selftest = app.add_subcommand("selftest", "run the built-in verification suite");
  std::string filter;
  selftest->add_option("--filter", filter, "only criteria whose name contains this");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check)
      return run_check(config_path, seed_opt->count() ? &seed : nullptr,
                       tol_opt->count() ? &tol : nullptr,
                       backend_opt->count() ? &backend : nullptr, &out_path);
    if (*sweep) return run_sweep(sweep_config, sweep_grid, sweep_out);
    if (*ode)
      return run_ode(ode_id, ode_n, ode_c, ode_integrate, ode_span, ode_step, ode_f,
                     ode_tol);
    if (*selftest) {
      auto results = tbg::run_selftest(filter);
      bool ok = tbg::print_selftest(results, std::cout);
      if (results.empty()) {
        std::cerr << "no criteria match filter '" << filter << "'\n";
        return 2;
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
