#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swme/reference.hpp"
#include "swme/scenarios.hpp"
#include "swme_app/run_config.hpp"

namespace swme::app {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the configured scenario and writes one snapshot CSV per output time
/// plus metadata.cfg into cfg.out. On a solver failure the snapshots up to
/// the failure and diagnostics.txt are written and kExitFailure returned.
/// Throws ConfigError for invalid configurations.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct CompareConfig {
  std::vector<std::filesystem::path> model_files;
  std::filesystem::path reference;
  /// "y=65.5" (slice along x), "x=55" (slice along y) or "x" for x-z data.
  std::vector<std::string> slices;
  /// "x=55" or "x=65.5,y=65.5".
  std::vector<std::string> profiles;
  /// Subset of h, um, vm; empty means h and um (plus vm for 2D data).
  std::vector<std::string> quantities;
  double threshold = kWaterThreshold;
  bool fraction_weighted = false;
  PhysicalSetup physical;
  std::filesystem::path out = "compare";
};

/// Writes <stem>_norms.csv plus slice and profile files per model file.
int cmd_compare(const CompareConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs one suite: tensors, hyperbolicity, conservation, relaxation, claims,
/// convergence or reference. Prints one PASS/FAIL line per check. Throws ConfigError for unknown suites.
int cmd_verify(const std::string& suite, std::ostream& out);

}  // namespace swme::app
