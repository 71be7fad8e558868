#include "renasym/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "renasym/burgers.hpp"
#include "renasym/kdv.hpp"
#include "renasym/profiles.hpp"
#include "renasym/verify.hpp"

namespace renasym::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Shortest round-trip form for numeric-looking values; other strings pass
// through unchanged.
std::string normalize_value(const std::string& v) {
  if (v.find(',') != std::string::npos) {
    std::string out;
    std::stringstream ss(v);
    std::string item;
    bool first = true;
    while (std::getline(ss, item, ',')) {
      if (!first) out += ",";
      out += normalize_value(trim(item));
      first = false;
    }
    return out;
  }
  const std::string t = trim(v);
  char* end = nullptr;
  const double d = std::strtod(t.c_str(), &end);
  if (end == nullptr || *end != '\0' || t.empty()) return t;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

}  // namespace

bool RunConfig::has(const std::string& sec, const std::string& key) const {
  const auto s = sections.find(sec);
  return s != sections.end() && s->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& sec,
                           const std::string& key) const {
  if (!has(sec, key))
    throw std::invalid_argument("config: missing [" + sec + "] " + key);
  return sections.at(sec).at(key);
}

std::string RunConfig::get_or(const std::string& sec, const std::string& key,
                              const std::string& fallback) const {
  return has(sec, key) ? sections.at(sec).at(key) : fallback;
}

double RunConfig::get_double(const std::string& sec,
                             const std::string& key) const {
  const std::string v = get(sec, key);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == nullptr || *end != '\0')
    throw std::invalid_argument("config: [" + sec + "] " + key +
                                " is not a number: " + v);
  return d;
}

double RunConfig::get_double_or(const std::string& sec, const std::string& key,
                                double fallback) const {
  return has(sec, key) ? get_double(sec, key) : fallback;
}

int RunConfig::get_int_or(const std::string& sec, const std::string& key,
                          int fallback) const {
  return has(sec, key) ? static_cast<int>(get_double(sec, key)) : fallback;
}

std::vector<double> RunConfig::get_list(const std::string& sec,
                                        const std::string& key) const {
  const std::string v = get(sec, key);
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    char* end = nullptr;
    const double d = std::strtod(item.c_str(), &end);
    if (end == nullptr || *end != '\0')
      throw std::invalid_argument("config: [" + sec + "] " + key +
                                  " has a non-numeric entry: " + item);
    out.push_back(d);
  }
  if (out.empty())
    throw std::invalid_argument("config: [" + sec + "] " + key + " is empty");
  return out;
}

void RunConfig::set(const std::string& sec, const std::string& key,
                    const std::string& value) {
  sections[sec][key] = value;
}

void RunConfig::merge(const RunConfig& other) {
  for (const auto& [sec, kv] : other.sections)
    for (const auto& [k, v] : kv) sections[sec][k] = v;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section = "run";
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: bad section header at line " +
                                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config: empty key at line " +
                                  std::to_string(lineno));
    cfg.sections[section][key] = val;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_canonical(const RunConfig& cfg) {
  std::string out;
  for (const auto& [sec, kv] : cfg.sections) {
    if (kv.empty()) continue;
    out += "[" + sec + "]\n";
    for (const auto& [k, v] : kv)
      out += k + " = " + normalize_value(v) + "\n";
    out += "\n";
  }
  return out;
}

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> kPresets = {
      {"theorem1", R"([run]
command = residual

[residual]
equation = burgers
epsilons = 0.2,0.1,0.05,0.025
t = 0.5
x_min = -4
x_max = 4
x_points = 401
h_rule_c = 0.5
quad_tol = 1e-12

[profile]
family = ramp_burgers
width = 1
)"},
      {"theorem2", R"([run]
command = residual

[residual]
equation = kdv
epsilons = 0.16,0.08,0.04,0.02
t = 0.25
x_min = -3
x_max = 3
x_points = 241
h_rule_c = 0.5
h_floor = 0.04
quad_tol = 1e-12
cache = phi_theorem2.rphi

[profile]
family = ramp_kdv
width = 1

[phi_cache]
L = 150
N = 32768
delta = 0.5
tol = 1e-7
)"},
      {"gp", R"([run]
command = eval

[eval]
evaluator = gp_dsw_z
a = 1
epsilon = 0.01
t = 1
x_min = -1.5
x_max = 1
x_points = 2001
)"},
      {"large-gradient", R"([run]
command = compare

[compare]
evaluator_a = large_gradient_burgers
evaluator_b = cole_hopf_reference
epsilon = 0.1
rho_list = 0.005,0.002,0.001
t = 1
x_min = -3
x_max = 3
x_points = 241
norm = max

[profile]
family = smoothed_step
lambda_minus = 1
lambda_plus = -1
width = 1
)"},
      {"planted-1.0", R"([run]
command = residual

[residual]
equation = burgers
planted_order = 1.0
epsilons = 0.1,0.05,0.025,0.0125
t = 0.5
x_min = -2
x_max = 2
x_points = 101
h_rule_c = 0
h_floor = 0.01
)"},
      {"planted-1.5", R"([run]
command = residual

[residual]
equation = kdv
planted_order = 1.5
epsilons = 0.1,0.05,0.025,0.0125
t = 0.5
x_min = -2
x_max = 2
x_points = 101
h_rule_c = 0
h_floor = 0.01
)"},
  };
  return kPresets;
}

std::string cache_dir() {
  const char* env = std::getenv("RENASYM_CACHE_DIR");
  return env && *env ? std::string(env) : std::string(".");
}

std::string resolve_cache_path(const std::string& name) {
  if (name.empty()) return cache_dir() + "/phi_default.rphi";
  if (name.front() == '/' || std::ifstream(name).good()) return name;
  return cache_dir() + "/" + name;
}

namespace {

profiles::InitialProfile build_profile(const RunConfig& cfg) {
  const std::string family = cfg.get_or("profile", "family", "ramp_burgers");
  const double width = cfg.get_double_or("profile", "width", 1.0);
  if (family == "smoothed_step")
    return profiles::make_smoothed_step(
        cfg.get_double_or("profile", "lambda_minus", 1.0),
        cfg.get_double_or("profile", "lambda_plus", -1.0), width);
  if (family == "ramp_burgers")
    return profiles::make_ramp_profile(profiles::RampKind::kBurgersT1, width);
  if (family == "ramp_kdv")
    return profiles::make_ramp_profile(profiles::RampKind::kKdvT2, width);
  if (family == "power_tail")
    return profiles::make_power_tail_profile(
        cfg.get_double_or("profile", "c_plus", 1.0),
        cfg.get_double_or("profile", "c_minus", 2.0),
        cfg.get_double_or("profile", "S", 2.0));
  if (family == "slow_tail")
    return profiles::make_slow_tail_profile(
        cfg.get_double_or("profile", "c", 1.0));
  throw std::invalid_argument("config: unknown profile family: " + family);
}

struct EvalContext {
  // Keeps the loaded cache alive for fields that reference it.
  std::shared_ptr<kdv::PhiField> phi;
};

verify::Field build_field(const RunConfig& cfg, const std::string& name,
                          EvalContext& ctx) {
  using verify::Field;
  if (name == "u0_weak")
    return [](double x, double t) { return burgers::u0_weak(x, t); };

  if (name == "renorm_weak_burgers") {
    const auto p = build_profile(cfg);
    const double eps = cfg.get_double("eval", "epsilon");
    const double tol = cfg.get_double_or("eval", "quad_tol", 1e-10);
    return [p, eps, tol](double x, double t) {
      return burgers::renorm_weak_burgers(p, x, t, eps, tol);
    };
  }
  if (name == "large_gradient_burgers") {
    const auto p = build_profile(cfg);
    const double eps = cfg.get_double("eval", "epsilon");
    const double rho = cfg.get_double("eval", "rho");
    const double tol = cfg.get_double_or("eval", "quad_tol", 1e-10);
    return [p, eps, rho, tol](double x, double t) {
      return burgers::large_gradient_burgers(p, x, t, eps, rho, tol);
    };
  }
  if (name == "gp_dsw_z") {
    const double a = cfg.get_double_or("eval", "a", 1.0);
    const double eps = cfg.get_double("eval", "epsilon");
    return [a, eps](double x, double t) { return kdv::gp_dsw_Z(x, t, a, eps); };
  }
  if (name == "gp_renormalized") {
    const auto p = build_profile(cfg);
    const double eps = cfg.get_double("eval", "epsilon");
    const double rho = cfg.get_double("eval", "rho");
    return [p, eps, rho](double x, double t) {
      return kdv::gp_renormalized(p, x, t, eps, rho);
    };
  }
  if (name == "renorm_weak_kdv") {
    const auto p = build_profile(cfg);
    const double eps = cfg.get_double("eval", "epsilon");
    const double tol = cfg.get_double_or("eval", "quad_tol", 1e-10);
    if (!ctx.phi) {
      const std::string path =
          resolve_cache_path(cfg.get_or("eval", "cache", ""));
      if (!std::ifstream(path).good())
        throw std::invalid_argument(
            "renorm_weak_kdv needs a solution cache; build one with the "
            "phi-cache command (missing: " + path + ")");
      ctx.phi = std::make_shared<kdv::PhiField>(kdv::PhiField::load(path));
    }
    auto phi = ctx.phi;
    return [p, phi, eps, tol](double x, double t) {
      return kdv::renorm_weak_kdv(p, *phi, x, t, eps, tol);
    };
  }
  if (name == "cole_hopf_reference") {
    const std::string datum = cfg.get_or("eval", "datum", "ramp");
    const double eps = cfg.get_double_or("eval", "viscosity", 1.0);
    burgers::CHDatum d;
    if (datum == "ramp")
      d = burgers::ch_ramp_weak(cfg.get_double_or("eval", "trunc", 60.0));
    else if (datum == "step")
      d = burgers::ch_step(cfg.get_double_or("profile", "lambda_minus", 1.0),
                           cfg.get_double_or("profile", "lambda_plus", -1.0));
    else if (datum == "profile")
      d = burgers::ch_from_profile(build_profile(cfg),
                                   cfg.get_double("eval", "rho"));
    else
      throw std::invalid_argument("config: unknown cole-hopf datum: " + datum);
    return [d, eps](double x, double t) {
      return burgers::cole_hopf_reference(d, x, t, eps);
    };
  }
  if (name == "faminskii_phi") {
    if (!ctx.phi) {
      const std::string path =
          resolve_cache_path(cfg.get_or("eval", "cache", ""));
      if (!std::ifstream(path).good())
        throw std::invalid_argument(
            "faminskii_phi needs a solution cache; build one with the "
            "phi-cache command (missing: " + path + ")");
      ctx.phi = std::make_shared<kdv::PhiField>(kdv::PhiField::load(path));
    }
    auto phi = ctx.phi;
    return [phi](double x, double t) { return phi->value(x, t, true); };
  }
  throw std::invalid_argument("config: unknown evaluator: " + name);
}

std::vector<double> grid_of(const RunConfig& cfg, const std::string& sec) {
  const double x_min = cfg.get_double(sec, "x_min");
  const double x_max = cfg.get_double(sec, "x_max");
  const int n = cfg.get_int_or(sec, "x_points", 101);
  if (!(x_min < x_max) || n < 2)
    throw std::invalid_argument("config: invalid window in [" + sec + "]");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = x_min + (x_max - x_min) * i / double(n - 1);
  return g;
}

std::string json_sibling(const std::string& csv_path) {
  if (csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
    return csv_path.substr(0, csv_path.size() - 4) + ".json";
  return csv_path + ".json";
}

// Capture times a residual sweep will sample: the stencil lines at h and h/2.
std::vector<double> residual_capture_times(double t,
                                           const std::vector<double>& eps_list,
                                           double c, double floor) {
  std::vector<double> out{t};
  for (double eps : eps_list) {
    const double h = std::max(c * eps, floor);
    for (double hh : {h, 0.5 * h}) {
      for (int j = -2; j <= 2; ++j) {
        if (j == 0) continue;
        out.push_back(t + j * hh);
      }
    }
  }
  return out;
}

}  // namespace

int cmd_eval(const RunConfig& cfg, const std::string& out_path) {
  const std::string name = cfg.get("eval", "evaluator");
  EvalContext ctx;
  const verify::Field f = build_field(cfg, name, ctx);
  const auto grid = grid_of(cfg, "eval");
  std::vector<double> ts;
  if (cfg.has("eval", "t"))
    ts = cfg.get_list("eval", "t");
  else
    throw std::invalid_argument("config: [eval] t is required");

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cmd_eval: cannot open " + out_path);
  out << "x,t,u\n";
  char line[192];
  for (double t : ts) {
    for (double x : grid) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", x, t, f(x, t));
      out << line;
    }
  }
  return 0;
}

int cmd_residual(const RunConfig& cfg, const std::string& out_path) {
  const std::string eq_name = cfg.get("residual", "equation");
  verify::Equation eq;
  if (eq_name == "burgers")
    eq = verify::Equation::kBurgersUnitViscosity;
  else if (eq_name == "kdv")
    eq = verify::Equation::kKdvUnitDispersion;
  else
    throw std::invalid_argument("config: unknown equation: " + eq_name);

  verify::Window win;
  win.x_min = cfg.get_double("residual", "x_min");
  win.x_max = cfg.get_double("residual", "x_max");
  win.points = cfg.get_int_or("residual", "x_points", 201);
  win.t = cfg.get_double("residual", "t");

  const auto eps_list = cfg.get_list("residual", "epsilons");
  verify::SweepOptions opts;
  opts.h_rule_c = cfg.get_double_or("residual", "h_rule_c", 0.5);
  opts.h_floor = cfg.get_double_or("residual", "h_floor", 0.0);
  opts.threads = cfg.get_int_or("run", "threads", 1);
  const double quad_tol = cfg.get_double_or("residual", "quad_tol", 1e-12);

  verify::SolutionFamily family;
  const double planted = cfg.get_double_or("residual", "planted_order", 0.0);
  std::shared_ptr<kdv::PhiField> phi;
  if (planted > 0.0) {
    family = [planted](double eps) -> verify::Field {
      return [planted, eps](double x, double t) {
        return std::pow(eps, planted) * std::sin(x - t);
      };
    };
  } else if (eq == verify::Equation::kBurgersUnitViscosity) {
    auto p = build_profile(cfg);
    family = [p, quad_tol](double eps) -> verify::Field {
      return [p, eps, quad_tol](double x, double t) {
        return burgers::renorm_weak_burgers(p, x, t, eps, quad_tol);
      };
    };
  } else {
    const std::string path =
        resolve_cache_path(cfg.get_or("residual", "cache", ""));
    if (!std::ifstream(path).good())
      throw std::invalid_argument(
          "residual: the kdv sweep needs a solution cache; build one with "
          "the phi-cache command (missing: " + path + ")");
    phi = std::make_shared<kdv::PhiField>(kdv::PhiField::load(path));
    // The sweep differentiates in t; demand exact slices at every stencil
    // time so no time interpolation enters the residual.
    for (double tc : residual_capture_times(win.t, eps_list, opts.h_rule_c,
                                            opts.h_floor)) {
      if (!phi->has_time(tc))
        throw std::invalid_argument(
            "residual: cache lacks a slice at t = " + std::to_string(tc) +
            "; rebuild the cache with this config's [residual] section");
    }
    auto p = build_profile(cfg);
    family = [p, phi, quad_tol](double eps) -> verify::Field {
      return [p, phi, eps, quad_tol](double x, double t) {
        return kdv::renorm_weak_kdv(p, *phi, x, t, eps, quad_tol);
      };
    };
  }

  const auto rep = verify::residual_sweep(family, eq, win, eps_list, opts);
  verify::write_residual_csv(rep, out_path);
  verify::write_residual_json(rep, json_sibling(out_path));
  return 0;
}

int cmd_phi_cache(const RunConfig& cfg, const std::string& out_path) {
  kdv::FaminskiiConfig fc;
  fc.L = cfg.get_double_or("phi_cache", "L", 150.0);
  fc.N = cfg.get_int_or("phi_cache", "N", 32768);
  fc.delta = cfg.get_double_or("phi_cache", "delta", 0.5);
  fc.tol = cfg.get_double_or("phi_cache", "tol", 1e-7);
  if (cfg.has("phi_cache", "slice_spacing"))
    fc.slice_spacing = cfg.get_double("phi_cache", "slice_spacing");
  if (cfg.has("phi_cache", "capture_times"))
    fc.capture_times = cfg.get_list("phi_cache", "capture_times");
  if (cfg.has("phi_cache", "sponge_strength"))
    fc.sponge_strength = cfg.get_double("phi_cache", "sponge_strength");
  if (cfg.has("phi_cache", "filter_strength"))
    fc.filter_strength = cfg.get_double("phi_cache", "filter_strength");

  // When a residual sweep is configured alongside, store its stencil times.
  if (cfg.has("residual", "epsilons") && cfg.has("residual", "t")) {
    const auto extra = residual_capture_times(
        cfg.get_double("residual", "t"), cfg.get_list("residual", "epsilons"),
        cfg.get_double_or("residual", "h_rule_c", 0.5),
        cfg.get_double_or("residual", "h_floor", 0.0));
    fc.capture_times.insert(fc.capture_times.end(), extra.begin(),
                            extra.end());
  }

  const auto phi = kdv::solve_faminskii(fc);
  const std::string path = out_path.empty()
                               ? resolve_cache_path("phi_default.rphi")
                               : out_path;
  phi.save(path);
  const auto& d = phi.diagnostics();
  std::printf("phi-cache: wrote %s\n", path.c_str());
  std::printf("  slices=%zu dt=%.3e boundary=%.3e interp=%.3e spot=%.3e\n",
              phi.times().size(), d.dt, d.boundary_contamination,
              d.interp_error_est, d.residual_spot);
  return 0;
}

int cmd_compare(const RunConfig& cfg, const std::string& out_path) {
  const std::string name_a = cfg.get("compare", "evaluator_a");
  const std::string name_b = cfg.get("compare", "evaluator_b");
  verify::Window win;
  win.x_min = cfg.get_double("compare", "x_min");
  win.x_max = cfg.get_double("compare", "x_max");
  win.points = cfg.get_int_or("compare", "x_points", 201);
  win.t = cfg.get_double("compare", "t");

  // The swept parameter: a rho list when present, otherwise a single row.
  std::vector<double> rhos;
  if (cfg.has("compare", "rho_list")) rhos = cfg.get_list("compare", "rho_list");
  else rhos.push_back(cfg.get_double_or("compare", "rho", 0.0));

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cmd_compare: cannot open " + out_path);
  out << "rho,err_max,err_l2\n";
  char line[160];
  for (double rho : rhos) {
    RunConfig local = cfg;
    // Commands reuse the eval dispatch; inject the swept parameter.
    for (const std::string key : {"epsilon", "t", "viscosity"})
      if (cfg.has("compare", key)) local.set("eval", key, cfg.get("compare", key));
    if (rho > 0.0) {
      char b[48];
      const auto r = std::to_chars(b, b + sizeof b, rho);
      local.set("eval", "rho", std::string(b, r.ptr));
    }
    if (cfg.has("compare", "datum")) local.set("eval", "datum", cfg.get("compare", "datum"));
    if (cfg.has("compare", "cache")) local.set("eval", "cache", cfg.get("compare", "cache"));
    if (name_b == "cole_hopf_reference" && !cfg.has("compare", "datum")) {
      // Default oracle datum: the same profile at the swept rho.
      local.set("eval", "datum", "profile");
    }
    EvalContext ctx;
    const auto fa = build_field(local, name_a, ctx);
    const auto fb = build_field(local, name_b, ctx);
    const double emax = verify::compare_fields(fa, fb, win, verify::Norm::kMax);
    const double el2 = verify::compare_fields(fa, fb, win, verify::Norm::kL2);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", rho, emax, el2);
    out << line;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"renormalized asymptotics for Burgers and KdV"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset_name;
  int threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file");
    sub->add_option("--out", out_path, "output path");
    sub->add_option("--preset", preset_name, "built-in configuration name");
    sub->add_option("--threads", threads, "worker threads for sweeps");
  };
  auto* eval = app.add_subcommand("eval", "evaluate a formula on a grid");
  auto* resid = app.add_subcommand("residual", "run a residual sweep");
  auto* cache = app.add_subcommand("phi-cache", "build the solution cache");
  auto* comp = app.add_subcommand("compare", "compare two evaluators");
  for (auto* sub : {eval, resid, cache, comp}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig cfg;
    if (!preset_name.empty()) {
      const auto& p = presets();
      const auto it = p.find(preset_name);
      if (it == p.end())
        throw std::invalid_argument("unknown preset: " + preset_name);
      cfg = parse_config(it->second);
    }
    if (!config_path.empty()) cfg.merge(load_config(config_path));
    if (threads > 0) cfg.set("run", "threads", std::to_string(threads));

    const std::string out = out_path.empty()
                                ? cfg.get_or("run", "out", "renasym_out.csv")
                                : out_path;
    if (app.got_subcommand(eval)) return cmd_eval(cfg, out);
    if (app.got_subcommand(resid)) return cmd_residual(cfg, out);
    if (app.got_subcommand(cache))
      return cmd_phi_cache(cfg, out_path);  // empty means cache_dir default
    return cmd_compare(cfg, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace renasym::cli
