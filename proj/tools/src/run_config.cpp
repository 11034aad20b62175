#include "swme_app/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swme/errors.hpp"
#include "swme/detail/text.hpp"

namespace swme::app {
namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(std::string_view key, std::string_view value) {
  const auto v = text::to_double(value);
  if (!v || !std::isfinite(*v)) throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  return *v;
}

int parse_int(std::string_view key, std::string_view value) {
  const auto v = text::to_double(value);
  if (!v || *v != std::floor(*v) || std::abs(*v) > 1e9) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  }
  return static_cast<int>(*v);
}

std::vector<double> default_times(double t_end) {
  std::vector<double> times;
  for (int k = 0; k <= static_cast<int>(std::floor(t_end)); ++k) times.push_back(k);
  if (times.back() != t_end) times.push_back(t_end);
  return times;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"scenario", "model", "order", "nx",  "ny",    "cfl",   "t_end",
                                             "output_times", "stepper", "out", "L",   "H",     "U",     "rho",
                                             "nu",       "g",     "kappa", "G",   "eps",   "gamma", "re0inv"};
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = text::trim(value);
  if (key == "scenario") {
    cfg.scenario = value;
  } else if (key == "model") {
    cfg.model = value;
  } else if (key == "order") {
    cfg.order = parse_int(key, value);
  } else if (key == "nx") {
    cfg.nx = parse_int(key, value);
  } else if (key == "ny") {
    cfg.ny = parse_int(key, value);
  } else if (key == "cfl") {
    cfg.cfl = parse_real(key, value);
  } else if (key == "t_end" || key == "t-end") {
    cfg.t_end = parse_real("t_end", value);
  } else if (key == "output_times" || key == "output-times") {
    std::vector<double> times;
    if (!value.empty()) {
      for (const auto field : text::split(value)) times.push_back(parse_real("output_times", field));
    }
    cfg.output_times = times;
  } else if (key == "stepper") {
    cfg.stepper = value;
  } else if (key == "out") {
    cfg.out = std::string(value);
  } else if (key == "L") {
    cfg.physical.L = parse_real(key, value);
  } else if (key == "H") {
    cfg.physical.H = parse_real(key, value);
  } else if (key == "U") {
    cfg.physical.U = parse_real(key, value);
  } else if (key == "rho") {
    cfg.physical.rho = parse_real(key, value);
  } else if (key == "nu") {
    cfg.physical.nu = parse_real(key, value);
  } else if (key == "g") {
    cfg.physical.g = parse_real(key, value);
  } else if (key == "kappa") {
    cfg.physical.kappa = parse_real(key, value);
  } else if (key == "G") {
    cfg.G = parse_real(key, value);
  } else if (key == "eps") {
    cfg.eps = parse_real(key, value);
  } else if (key == "gamma") {
    cfg.gamma = parse_real(key, value);
  } else if (key == "re0inv") {
    cfg.re0inv = parse_real(key, value);
  } else {
    throw ConfigError(std::string(key) + ": unknown configuration key");
  }
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open config file '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(base, text::trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return base;
}

ResolvedRun resolve(const RunConfig& cfg) {
  ResolvedRun r;
  r.scenario = scenario_by_name(cfg.scenario);
  r.scenario.physical = cfg.physical;
  try {
    cfg.physical.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("physical: ") + e.what());
  }

  Family family = Family::modified;
  int default_order = 0;
  if (cfg.model == "swe") {
    family = Family::standard;
  } else if (cfg.model == "hswme") {
    family = Family::standard;
    default_order = 1;
  } else if (cfg.model == "mswe") {
    family = Family::modified;
  } else if (cfg.model == "mhswme") {
    family = Family::modified;
    default_order = 1;
  } else {
    throw ConfigError("model: expected swe, hswme, mswe or mhswme, got '" + cfg.model + "'");
  }
  const int order = cfg.order.value_or(default_order);
  if (order < 0) throw ConfigError("order: must be >= 0");
  if (default_order == 0 && order != 0) throw ConfigError("order: " + cfg.model + " carries no moments, use 0");
  if (default_order == 1 && order < 1) throw ConfigError("order: " + cfg.model + " needs order >= 1");

  if (cfg.nx) r.scenario.nx = *cfg.nx;
  if (cfg.ny) {
    if (r.scenario.dims == 1 && *cfg.ny != 1) throw ConfigError("ny: scenario " + cfg.scenario + " is 1D");
    r.scenario.ny = *cfg.ny;
  }
  if (r.scenario.nx < 3) throw ConfigError("nx: must be >= 3");
  if (r.scenario.dims == 2 && r.scenario.ny < 3) throw ConfigError("ny: must be >= 3");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("cfl: must lie in (0, 1], got " + real(cfg.cfl));

  if (cfg.t_end) {
    if (!(*cfg.t_end >= 0.0)) throw ConfigError("t_end: must be >= 0");
    r.scenario.t_end = *cfg.t_end;
    r.scenario.output_times = default_times(*cfg.t_end);
  }
  if (cfg.output_times) {
    r.scenario.output_times = *cfg.output_times;
    for (const double t : r.scenario.output_times) {
      if (!(t >= 0.0 && t <= r.scenario.t_end)) {
        throw ConfigError("output_times: " + real(t) + " lies outside [0, t_end]");
      }
    }
  }

  r.params = nondimensionalize(cfg.physical);
  if (cfg.G) r.params.G = *cfg.G;
  if (cfg.eps) r.params.eps = *cfg.eps;
  if (cfg.gamma) r.params.gamma = *cfg.gamma;
  if (cfg.re0inv) r.params.re0inv = *cfg.re0inv;
  r.params.gamma_over_eps = r.params.gamma / r.params.eps;
  try {
    r.spec = make_model_spec(family, order, r.params);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("model parameters: ") + e.what());
  }

  if (cfg.stepper == "auto") {
    r.options.stepper = Stepper::automatic;
  } else if (cfg.stepper == "explicit") {
    r.options.stepper = Stepper::explicit_euler;
  } else if (cfg.stepper == "semi-implicit") {
    r.options.stepper = Stepper::semi_implicit;
  } else {
    throw ConfigError("stepper: expected explicit or semi-implicit, got '" + cfg.stepper + "'");
  }
  r.options.cfl = cfg.cfl;
  try {
    r.scenario.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return r;
}

std::string render_config(const RunConfig& cfg, const ResolvedRun& r) {
  std::ostringstream os;
  os << "scenario=" << cfg.scenario << '\n';
  os << "model=" << cfg.model << '\n';
  os << "order=" << r.spec.order << '\n';
  os << "nx=" << r.scenario.nx << '\n';
  os << "ny=" << (r.scenario.dims == 2 ? r.scenario.ny : 1) << '\n';
  os << "cfl=" << real(r.options.cfl) << '\n';
  os << "t_end=" << real(r.scenario.t_end) << '\n';
  os << "output_times=";
  for (std::size_t k = 0; k < r.scenario.output_times.size(); ++k) {
    os << (k ? "," : "") << real(r.scenario.output_times[k]);
  }
  os << '\n';
  os << "stepper=" << cfg.stepper << '\n';
  os << "out=" << cfg.out.string() << '\n';
  const PhysicalSetup& p = r.scenario.physical;
  os << "L=" << real(p.L) << "\nH=" << real(p.H) << "\nU=" << real(p.U) << "\nrho=" << real(p.rho)
     << "\nnu=" << real(p.nu) << "\ng=" << real(p.g) << "\nkappa=" << real(p.kappa) << '\n';
  os << "G=" << real(r.spec.G) << "\neps=" << real(r.spec.eps) << "\ngamma=" << real(r.spec.gamma)
     << "\nre0inv=" << real(r.spec.re0inv) << '\n';
  return os.str();
}

}  // namespace swme::app
