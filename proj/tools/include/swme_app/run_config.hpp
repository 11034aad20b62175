#pragma once

// Flat key=value run configuration shared by the config file, --set and the
// metadata written next to every run.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swme/model.hpp"
#include "swme/scenarios.hpp"
#include "swme/solver.hpp"

namespace swme::app {

/// Unset optionals fall back to the scenario / model defaults.
struct RunConfig {
  std::string scenario = "dambreak1d";
  std::string model = "mswe";  ///< swe, hswme, mswe or mhswme
  std::optional<int> order;
  std::optional<int> nx;
  std::optional<int> ny;
  double cfl = 0.7;
  std::optional<double> t_end;
  std::optional<std::vector<double>> output_times;
  std::string stepper = "auto";  ///< auto, explicit or semi-implicit
  std::filesystem::path out = "out";
  PhysicalSetup physical;
  // Direct overrides of the dimensionless parameters.
  std::optional<double> G;
  std::optional<double> eps;
  std::optional<double> gamma;
  std::optional<double> re0inv;
};

/// Keys accepted by apply_setting, in the order metadata files list them.
const std::vector<std::string>& config_keys();

/// Throws ConfigError naming the key for unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Reads `key = value` lines (`#` comments) on top of `base`.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

struct ResolvedRun {
  ScenarioConfig scenario;
  ModelSpec spec;
  DimensionlessParameters params;
  RunOptions options;
};

/// Applies defaults and validates. Throws ConfigError naming the field.
ResolvedRun resolve(const RunConfig& cfg);

/// Every key with its resolved value (%.17g for reals), one `key=value` per
/// line. Loading the text back resolves to the same run.
std::string render_config(const RunConfig& cfg, const ResolvedRun& resolved);

}  // namespace swme::app
