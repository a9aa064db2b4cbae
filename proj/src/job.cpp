#include "tbgeo/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tbgeo/expr.hpp"
#include "tbgeo/sampling.hpp"

namespace tbg {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// TOML subset: [tables], key = value, strings, numbers, booleans, flat arrays.
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json parse_toml_scalar(const std::string& raw) {
  std::string v = trim(raw);
  if (v.empty()) throw ConfigError("empty TOML value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') throw ConfigError("unterminated string: " + v);
    return json(v.substr(1, v.size() - 2));
  }
  if (v == "true") return json(true);
  if (v == "false") return json(false);
  try {
    if (v.find_first_of(".eE") == std::string::npos &&
        v.find_first_not_of("+-0123456789") == std::string::npos)
      return json(std::stoll(v));
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw ConfigError("malformed number: " + v);
    return json(d);
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed TOML value: " + v);
  }
}

json parse_toml_value(const std::string& raw) {
  std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError("unterminated array: " + v);
    json arr = json::array();
    std::string body = v.substr(1, v.size() - 2);
    std::string item;
    bool in_string = false;
    for (char ch : body) {
      if (ch == '"') in_string = !in_string;
      if (ch == ',' && !in_string) {
        if (!trim(item).empty()) arr.push_back(parse_toml_scalar(item));
        item.clear();
      } else {
        item += ch;
      }
    }
    if (!trim(item).empty()) arr.push_back(parse_toml_scalar(item));
    return arr;
  }
  return parse_toml_scalar(v);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

json parse_toml(const std::string& text) {
  json root = json::object();
  json* section = &root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed table header at line " + std::to_string(lineno));
      std::string name = trim(line.substr(1, line.size() - 2));
      root[name] = json::object();
      section = &root[name];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    (*section)[key] = parse_toml_value(line.substr(eq + 1));
  }
  return root;
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

std::vector<std::string> get_strings(const json& j, const std::string& key) {
  std::vector<std::string> out;
  if (j.is_object() && j.contains(key))
    for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

std::vector<double> get_doubles(const json& j, const std::string& key) {
  std::vector<double> out;
  if (j.is_object() && j.contains(key))
    for (const auto& v : j.at(key)) out.push_back(v.get<double>());
  return out;
}

}  // namespace

JobConfig config_from_json(const json& j) {
  JobConfig cfg;
  cfg.schema_version = get_or<int>(j, "schema_version", 1);
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
  cfg.tolerance = get_or<double>(j, "tolerance", 1e-5);
  cfg.backend = get_or<std::string>(j, "backend", "dual");
  cfg.grid = get_or<int>(j, "grid", 9);
  cfg.checks = get_strings(j, "checks");

  if (j.contains("manifold")) {
    const json& m = j.at("manifold");
    cfg.manifold_id = get_or<std::string>(m, "id", "euclidean");
    cfg.n = get_or<int>(m, "n", 2);
    cfg.c = get_or<double>(m, "c", 1.0);
  }
  if (j.contains("field")) {
    const json& f = j.at("field");
    cfg.family = get_or<std::string>(f, "family", "");
    cfg.family_params = get_doubles(f, "params");
    for (const char* key : {"f", "u", "v"})
      if (f.contains(key)) cfg.family_profiles.push_back(f.at(key).get<std::string>());
    cfg.components = get_strings(f, "components");
    cfg.variation = get_strings(f, "variation");
  }
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    cfg.lower = get_doubles(d, "lower");
    cfg.upper = get_doubles(d, "upper");
    cfg.quadrature_points = get_or<int>(d, "quadrature_points", 12);
  }
  if (j.contains("ode")) {
    const json& o = j.at("ode");
    cfg.ode_id = get_or<std::string>(o, "id", "");
    cfg.ode_f = get_or<std::string>(o, "f", "");
    cfg.ode_t0 = get_or<double>(o, "t0", 0.0);
    cfg.ode_t1 = get_or<double>(o, "t1", 1.0);
    cfg.ode_step = get_or<double>(o, "step", 1e-3);
    std::vector<double> init = get_doubles(o, "init");
    if (!init.empty()) {
      if (init.size() != 4) throw ConfigError("ode.init must have 4 entries");
      cfg.ode_init = std::array<double, 4>{init[0], init[1], init[2], init[3]};
    }
  }
  cfg.out_path = get_or<std::string>(j, "out", "");
  cfg.csv_path = get_or<std::string>(j, "csv", "");
  if (cfg.backend != "dual" && cfg.backend != "fd")
    throw ConfigError("backend must be 'dual' or 'fd'");
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return config_from_json(json::parse(text));
  return config_from_json(parse_toml(text));
}

Chart chart_from_config(const JobConfig& cfg) {
  return model_chart(cfg.manifold_id, cfg.n, cfg.c);
}

VectorField field_from_config(const JobConfig& cfg, const Chart& chart) {
  if (!cfg.family.empty()) {
    FieldFamilySpec spec;
    spec.id = cfg.family;
    spec.reals = cfg.family_params;
    if (cfg.family == "hyperbolic-fV") spec.reals = {static_cast<double>(cfg.n), cfg.c};
    for (const std::string& text : cfg.family_profiles) {
      Expr e = parse_expr(text);
      if (cfg.family == "r2-xu-plus-v")
        spec.profiles.push_back(expr_scalar_fn(e));
      else
        spec.profiles.push_back(expr_univariate_fn(e));
    }
    return field_family(spec);
  }
  if (cfg.components.empty())
    throw ConfigError("field requires either a family or component expressions");
  if (static_cast<int>(cfg.components.size()) != chart.dim)
    throw ConfigError("field has " + std::to_string(cfg.components.size()) +
                      " components but the chart has dimension " +
                      std::to_string(chart.dim));
  std::vector<Expr> exprs;
  std::string label;
  for (const std::string& text : cfg.components) {
    exprs.push_back(parse_expr(text));
    label += (label.empty() ? "[" : ", ") + text;
  }
  auto fn = [exprs](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    VecX<S> out(static_cast<int>(exprs.size()));
    for (std::size_t i = 0; i < exprs.size(); ++i) out[i] = eval_expr(exprs[i], q);
    return out;
  };
  return VectorField{make_vector_fn(fn), label + "]"};
}

BoxDomain box_from_config(const JobConfig& cfg, const Chart& chart) {
  BoxDomain box = default_box(chart);
  if (!cfg.lower.empty()) {
    if (static_cast<int>(cfg.lower.size()) != chart.dim ||
        static_cast<int>(cfg.upper.size()) != chart.dim)
      throw ConfigError("domain bounds must match the chart dimension");
    box.lower = Eigen::Map<const Eigen::VectorXd>(cfg.lower.data(), chart.dim);
    box.upper = Eigen::Map<const Eigen::VectorXd>(cfg.upper.data(), chart.dim);
  }
  box.points_per_axis = cfg.quadrature_points;
  if (box.points_per_axis < 2) throw ConfigError("quadrature points per axis must be >= 2");
  for (int a = 0; a < chart.dim; ++a)
    if (box.lower[a] >= box.upper[a]) throw ConfigError("empty domain box");
  if (!chart.contains(box.lower) || !chart.contains(box.upper))
    throw ConfigError("domain box leaves the chart domain");
  return box;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_value(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += json(it.key()).dump();
        out += ":";
        dump_value(it.value(), out);
      }
      out += "}";
      return;
    }
    case json::value_t::array: {
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",";
        first = false;
        dump_value(v, out);
      }
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json canonical_config(const JobConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["seed"] = cfg.seed;
  j["tolerance"] = cfg.tolerance;
  j["backend"] = cfg.backend;
  j["manifold"] = {{"id", cfg.manifold_id}, {"n", cfg.n}, {"c", cfg.c}};
  j["field"] = {{"family", cfg.family},
                {"params", cfg.family_params},
                {"profiles", cfg.family_profiles},
                {"components", cfg.components},
                {"variation", cfg.variation}};
  j["domain"] = {{"lower", cfg.lower},
                 {"upper", cfg.upper},
                 {"quadrature_points", cfg.quadrature_points}};
  j["grid"] = cfg.grid;
  j["checks"] = cfg.checks;
  j["ode"] = {{"id", cfg.ode_id}, {"f", cfg.ode_f}, {"t0", cfg.ode_t0},
              {"t1", cfg.ode_t1}, {"step", cfg.ode_step}};
  if (cfg.ode_init) j["ode"]["init"] = *cfg.ode_init;
  return j;
}

json run_classify(const JobConfig& cfg, const Chart& chart, const VectorField& X,
                  const BoxDomain& box) {
  if (cfg.backend == "fd")
    throw CapabilityError(
        "classification needs fourth derivatives; the finite-difference "
        "backend stops at order 2");
  ClassificationReport rep = classify(chart, X, box, cfg.tolerance, cfg.grid);
  json out;
  out["status"] = rep.verdict == Verdict::none ? "fail" : "pass";
  out["verdict"] = to_string(rep.verdict);
  out["residuals"] = {{"nabla", rep.nabla_sup},
                      {"laplacian", rep.laplacian_sup},
                      {"s", rep.s_sup},
                      {"bitension", rep.bitension_sup}};
  return out;
}

json run_bienergy(const JobConfig& cfg, const Chart& chart, const VectorField& X,
                  const BoxDomain& box) {
  QuadResult res = bienergy(chart, X, box, cfg.tolerance);
  json out;
  out["status"] = res.converged ? "pass" : "fail";
  out["residuals"] = {{"value", res.value},
                      {"refined", res.refined},
                      {"quadrature_error", std::abs(res.value - res.refined)}};
  return out;
}

json run_first_variation(const JobConfig& cfg, const Chart& chart, const VectorField& X,
                         const BoxDomain& box) {
  if (cfg.backend == "fd")
    throw CapabilityError(
        "the first variation needs fourth derivatives; the finite-difference "
        "backend stops at order 2");
  VectorField V;
  if (!cfg.variation.empty()) {
    JobConfig vcfg = cfg;
    vcfg.family.clear();
    vcfg.components = cfg.variation;
    V = field_from_config(vcfg, chart);
  } else {
    int m = chart.dim;
    V = VectorField{make_vector_fn([m](const auto& q) {
                      using S = typename std::decay_t<decltype(q)>::Scalar;
                      return VecX<S>(VecX<S>::Ones(m));
                    }),
                    "ones"};
  }
  FirstVariation fv = first_variation(chart, X, V, box, cfg.tolerance);
  double scale = std::max({1.0, std::abs(fv.lhs), std::abs(fv.rhs)});
  bool pass = fv.converged && std::abs(fv.lhs - fv.rhs) <= 1e-3 * scale;
  json out;
  out["status"] = pass ? "pass" : "fail";
  out["residuals"] = {{"lhs", fv.lhs},
                      {"rhs", fv.rhs},
                      {"difference", std::abs(fv.lhs - fv.rhs)}};
  return out;
}

json run_ode(const JobConfig& cfg) {
  if (cfg.ode_id.empty()) throw ConfigError("ode check requires ode.id");
  json out;
  if (cfg.ode_init) {
    OdeSpec spec = transformed_biharmonic_ode(cfg.n, cfg.c);
    if (cfg.ode_id != "transformed")
      throw ConfigError("integration is supported for the 'transformed' ode id");
    Trajectory traj =
        integrate_local(spec, *cfg.ode_init, cfg.ode_t0, cfg.ode_t1, cfg.ode_step);
    double max_v = 0.0;
    for (const auto& s : traj.state) max_v = std::max(max_v, std::abs(s[0]));
    out["status"] = "pass";
    out["residuals"] = {{"steps", static_cast<std::int64_t>(traj.t.size())},
                        {"max_abs_v", max_v}};
    if (traj.blow_up)
      out["residuals"]["blow_up_time"] = *traj.blow_up;
    return out;
  }
  if (cfg.ode_f.empty()) throw ConfigError("ode residual check requires ode.f");
  SmoothScalarFn f = expr_univariate_fn(parse_expr(cfg.ode_f));
  double sup = 0.0;
  const int samples = 21;
  for (int i = 0; i < samples; ++i) {
    double t = cfg.ode_t0 + (cfg.ode_t1 - cfg.ode_t0) * i / (samples - 1);
    sup = std::max(sup, std::abs(ode_residual(cfg.ode_id, f, t, cfg.n, cfg.c)));
  }
  out["status"] = sup < cfg.tolerance ? "pass" : "fail";
  out["residuals"] = {{"sup_residual", sup}};
  return out;
}

}  // namespace

json run_job(const JobConfig& cfg) {
  json report;
  report["schema_version"] = cfg.schema_version;
  std::string canon;
  dump_value(canonical_config(cfg), canon);
  char digest[20];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(fnv1a(canon)));
  report["config_digest"] = digest;
  report["backend"] = {{"kind", cfg.backend},
                       {"depth", cfg.backend == "dual" ? 4 : 0},
                       {"step", cfg.backend == "fd" ? 1e-4 : 0.0}};
  report["seed"] = cfg.seed;

  std::vector<std::string> names = cfg.checks;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  json checks = json::array();
  for (const std::string& name : names) {
    json entry;
    entry["name"] = name;
    try {
      if (name == "classify" || name == "bienergy" || name == "first-variation") {
        Chart chart = chart_from_config(cfg);
        VectorField X = field_from_config(cfg, chart);
        BoxDomain box = box_from_config(cfg, chart);
        json body = name == "classify" ? run_classify(cfg, chart, X, box)
                    : name == "bienergy" ? run_bienergy(cfg, chart, X, box)
                                         : run_first_variation(cfg, chart, X, box);
        entry.update(body);
      } else if (name == "ode") {
        entry.update(run_ode(cfg));
      } else {
        throw ConfigError("unknown check '" + name + "'");
      }
    } catch (const std::exception& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      entry["residuals"] = json::object();
    }
    // Reported as 0 so identical runs stay byte-identical; wall times go to
    // stderr in the CLI layer instead.
    entry["runtime_ms"] = 0.0;
    checks.push_back(entry);
  }
  report["checks"] = checks;
  return report;
}

bool report_all_pass(const json& report) {
  for (const auto& entry : report.at("checks"))
    if (entry.at("status").get<std::string>() != "pass") return false;
  return true;
}

std::string dump_report(const json& report) {
  std::string out;
  dump_value(report, out);
  out += "\n";
  return out;
}

void emit_csv(const Chart& chart, const VectorField& X, const BoxDomain& box,
              const std::vector<int>& per_axis, std::ostream& out) {
  const int m = chart.dim;
  if (static_cast<int>(per_axis.size()) != m)
    throw ConfigError("grid resolution list must match the chart dimension");
  for (int r : per_axis)
    if (r < 2) throw ConfigError("grid resolution must be >= 2 per axis");
  for (int a = 0; a < m; ++a) out << "x" << (a + 1) << ",";
  out << "nabla,laplacian,s,bitension,density\n";
  std::vector<int> idx(m, 0);
  Point p(m);
  bool done = false;
  while (!done) {
    for (int a = 0; a < m; ++a)
      p[a] = box.lower[a] + (box.upper[a] - box.lower[a]) * idx[a] / (per_axis[a] - 1);
    double nabla = 0.0;
    for (int i = 0; i < m; ++i)
      nabla = std::max(nabla,
                       covariant_derivative(chart, X, i, Point(p)).cwiseAbs().maxCoeff());
    double lap = rough_laplacian(chart, X, Point(p)).cwiseAbs().maxCoeff();
    double s = s_tensor(chart, X, Point(p)).cwiseAbs().maxCoeff();
    double bt = bitension(chart, X, p).cwiseAbs().maxCoeff();
    double density = bienergy_density(chart, X, p);
    for (int a = 0; a < m; ++a) out << format_double(p[a]) << ",";
    out << format_double(nabla) << "," << format_double(lap) << "," << format_double(s)
        << "," << format_double(bt) << "," << format_double(density) << "\n";
    int a = 0;
    for (; a < m; ++a) {
      if (++idx[a] < per_axis[a]) break;
      idx[a] = 0;
    }
    done = (a == m);
  }
}

}  // namespace tbg
