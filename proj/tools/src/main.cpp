#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swme/errors.hpp"
#include "swme_app/checks.hpp"
#include "swme_app/commands.hpp"
#include "swme_app/run_config.hpp"

namespace {

using swme::app::kExitFailure;
using swme::app::kExitOk;
using swme::app::kExitUsage;

// Flags that map one-to-one onto config keys; applied after --config.
struct RunFlag {
  const char* flag;
  const char* key;
  const char* help;
  std::string value;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shallow water moment model solver"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "Run a scenario and write CSV snapshots");
  std::string run_config_path;
  run->add_option("--config", run_config_path, "key=value configuration file (e.g. a metadata.cfg)");
  std::vector<RunFlag> flags{
      {"--scenario", "scenario", "dambreak1d, radial2d or inflow2d", {}},
      {"--model", "model", "swe, hswme, mswe or mhswme", {}},
      {"--order", "order", "moment order N", {}},
      {"--nx", "nx", "cells along x", {}},
      {"--ny", "ny", "cells along y (2D scenarios)", {}},
      {"--cfl", "cfl", "CFL number in (0, 1]", {}},
      {"--t-end", "t_end", "final dimensionless time", {}},
      {"--output-times", "output_times", "comma-separated output times", {}},
      {"--out", "out", "output directory", {}},
      {"--stepper", "stepper", "explicit or semi-implicit (default: by model family)", {}},
  };
  for (auto& f : flags) {
    CLI::Option* opt = run->add_option(f.flag, f.value, f.help);
    if (std::string(f.key) == "model") opt->check(CLI::IsMember({"swe", "hswme", "mswe", "mhswme"}));
    if (std::string(f.key) == "stepper") opt->check(CLI::IsMember({"explicit", "semi-implicit", "auto"}));
    if (std::string(f.key) == "scenario") opt->check(CLI::IsMember({"dambreak1d", "radial2d", "inflow2d"}));
  }
  std::vector<std::string> sets;
  run->add_option("--set", sets, "override any configuration key, key=value (repeatable)");

  // compare
  CLI::App* cmp = app.add_subcommand("compare", "Compare snapshots against volume-of-fluid reference data");
  swme::app::CompareConfig compare_cfg;
  std::string compare_config_path;
  cmp->add_option("snapshots,--snapshot", compare_cfg.model_files, "snapshot CSV files")->required();
  cmp->add_option("--reference", compare_cfg.reference, "reference CSV")->required();
  cmp->add_option("--slice", compare_cfg.slices, "y=<m> (along x), x=<m> (along y) or x (x-z data)");
  cmp->add_option("--profile", compare_cfg.profiles, "x=<m>[,y=<m>] vertical profile location");
  cmp->add_option("--quantity", compare_cfg.quantities, "h, um or vm (repeatable)")
      ->check(CLI::IsMember({"h", "um", "vm"}));
  cmp->add_option("--threshold", compare_cfg.threshold, "water volume fraction threshold");
  cmp->add_flag("--fraction-weighted", compare_cfg.fraction_weighted, "fraction-weighted depth averages");
  cmp->add_option("--config", compare_config_path, "run configuration supplying the physical scales");
  cmp->add_option("--out", compare_cfg.out, "report directory");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "tensors, hyperbolicity, conservation, relaxation, claims, convergence or reference")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) {
      swme::app::RunConfig cfg;
      if (!run_config_path.empty()) cfg = swme::app::load_config_file(run_config_path);
      for (const auto& f : flags) {
        if (run->count(f.flag) > 0) swme::app::apply_setting(cfg, f.key, f.value);
      }
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw swme::ConfigError("set: expected key=value, got '" + s + "'");
        swme::app::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
      }
      return swme::app::cmd_run(cfg, std::cout, std::cerr);
    }
    if (*cmp) {
      if (!compare_config_path.empty()) {
        compare_cfg.physical = swme::app::load_config_file(compare_config_path).physical;
      }
      return swme::app::cmd_compare(compare_cfg, std::cout, std::cerr);
    }
    if (*verify) return swme::app::cmd_verify(suite, std::cout);
  } catch (const swme::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const swme::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
