#include "swme_app/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "swme/errors.hpp"
#include "swme/detail/text.hpp"
#include "swme/reference.hpp"
#include "swme/snapshot_io.hpp"
#include "swme_app/checks.hpp"

namespace swme::app {
namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct HeightRange {
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;

  void add(const GridField& f) {
    for (int j = 0; j < f.ny(); ++j) {
      for (int i = 0; i < f.nx(); ++i) {
        const double h = f.cell(i, j)[0];
        min = std::min(min, h);
        max = std::max(max, h);
      }
    }
  }
};

std::string step_summary(const RunResult& result, const ModelSpec& spec, const HeightRange& hr) {
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
  double speed = 0.0;
  long floored = 0;
  std::size_t degraded = 0;
  for (const StepReport& s : result.steps) {
    dt_min = std::min(dt_min, s.dt);
    dt_max = std::max(dt_max, s.dt);
    speed = std::max(speed, s.max_speed);
    floored += s.floored_cells;
    if (s.degraded_speed) ++degraded;
  }
  if (result.steps.empty()) dt_min = 0.0;
  std::string out;
  out += "# status=" + std::string(result.ok ? "ok" : "failed") + '\n';
  out += "# steps=" + std::to_string(result.steps.size()) + '\n';
  out += "# dt_min=" + real(dt_min) + "\n# dt_max=" + real(dt_max) + '\n';
  out += "# max_wave_speed=" + real(speed) + '\n';
  out += "# floored_cells_total=" + std::to_string(floored) + '\n';
  out += "# degraded_speed_steps=" + std::to_string(degraded) + '\n';
  out += "# h_min=" + real(hr.min) + "\n# h_max=" + real(hr.max) + '\n';
  // bar_gamma decreases with h.
  out += "# bar_gamma_min=" + real(bar_gamma(spec, hr.max)) + '\n';
  out += "# bar_gamma_max=" + real(bar_gamma(spec, hr.min)) + '\n';
  return out;
}

std::pair<std::string, double> key_value(const std::string& item, const char* what) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw ConfigError(std::string(what) + ": expected axis=value, got '" + item + "'");
  const auto v = text::to_double(std::string_view(item).substr(eq + 1));
  if (!v) throw ConfigError(std::string(what) + ": invalid number in '" + item + "'");
  return {std::string(text::trim(std::string_view(item).substr(0, eq))), *v};
}

Quantity parse_quantity(const std::string& name) {
  if (name == "h") return Quantity::height;
  if (name == "um") return Quantity::mean_u;
  if (name == "vm") return Quantity::mean_v;
  throw ConfigError("quantity: expected h, um or vm, got '" + name + "'");
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolvedRun r = resolve(cfg);
  const GridField initial = build_field(r.scenario, r.spec.order);

  HeightRange heights;
  heights.add(initial);
  RunOptions options = r.options;
  options.observer = [&](const StepReport&, const GridField& f) { heights.add(f); };
  const RunResult result = run(initial, r.spec, r.scenario.t_end, r.scenario.output_times, options);

  std::filesystem::create_directories(cfg.out);
  for (const Snapshot& s : result.snapshots) write_snapshot_file(s.field, s.t, cfg.out);

  const std::filesystem::path meta = cfg.out / "metadata.cfg";
  {
    std::ofstream m(meta);
    if (!m) throw InputError("cannot write '" + meta.string() + "'");
    m << "# swme run metadata; pass back with --config to repeat the run\n";
    m << render_config(cfg, r);
    m << step_summary(result, r.spec, heights);
  }

  if (!result.ok) {
    const std::filesystem::path diag = cfg.out / "diagnostics.txt";
    std::ofstream d(diag);
    d << result.diagnostics << '\n';
    err << "run failed: " << result.diagnostics << "\ndiagnostics: " << diag.string() << '\n';
    return kExitFailure;
  }
  out << "wrote " << result.snapshots.size() << " snapshots (" << result.steps.size() << " steps) to "
      << cfg.out.string() << '\n';
  return kExitOk;
}

int cmd_compare(const CompareConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.model_files.empty()) throw ConfigError("model: at least one snapshot file is required");
  try {
    const ReferenceDataset ds = load_dataset(cfg.reference);
    if (ds.clipped > 0) err << "warning: " << ds.clipped << " volume fractions clipped into [0, 1]\n";

    CompareOptions options;
    options.threshold = cfg.threshold;
    options.averaging = cfg.fraction_weighted ? AveragingMode::fraction_weighted : AveragingMode::water_cells;
    options.quantities.clear();
    if (cfg.quantities.empty()) {
      options.quantities = {Quantity::height, Quantity::mean_u};
      if (ds.dims() == 2) options.quantities.push_back(Quantity::mean_v);
    } else {
      for (const auto& q : cfg.quantities) options.quantities.push_back(parse_quantity(q));
    }
    for (const auto& item : cfg.slices) {
      SliceSpec base;
      if (item != "x") {
        const auto [axis, value] = key_value(item, "slice");
        if (axis == "y") {
          base.along = Direction::x;
        } else if (axis == "x") {
          base.along = Direction::y;
        } else {
          throw ConfigError("slice: axis must be x or y, got '" + axis + "'");
        }
        base.location = value;
      }
      for (const Quantity q : options.quantities) {
        SliceSpec s = base;
        s.quantity = q;
        options.slices.push_back(s);
      }
    }
    for (const auto& item : cfg.profiles) {
      ProfileSpec p;
      for (const auto part : text::split(item)) {
        const auto [axis, value] = key_value(std::string(part), "profile");
        if (axis == "x") {
          p.x = value;
        } else if (axis == "y") {
          p.y = value;
        } else {
          throw ConfigError("profile: axis must be x or y, got '" + axis + "'");
        }
      }
      options.profiles.push_back(p);
    }

    for (const auto& file : cfg.model_files) {
      const Snapshot snap = read_snapshot_file(file);
      const ComparisonReport report = compare(snap, cfg.physical, ds, options);
      const auto written = write_report(report, cfg.out, file.stem().string());
      out << file.string() << " (" << report.columns_compared << " columns)\n";
      for (const auto& q : report.quantities) {
        out << "  " << q.quantity << ": L1 " << text::format(q.norms.l1) << "  L2 " << text::format(q.norms.l2)
            << "  Linf " << text::format(q.norms.linf) << '\n';
      }
      out << "  wrote " << written.size() << " files to " << cfg.out.string() << '\n';
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    err << "compare failed: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::ostream& out) {
  const std::vector<CheckResult> results = run_suite(suite);
  bool ok = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  out << suite << ": " << (ok ? "all checks passed" : "FAILED") << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace swme::app
