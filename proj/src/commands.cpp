#include "mocover/commands.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "mocover/config.hpp"
#include "mocover/io.hpp"
#include "mocover/metrics.hpp"
#include "mocover/solver.hpp"

namespace mocover {
namespace fs = std::filesystem;

namespace {

std::string step_file_name(int depth) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "covering_%02d.json", depth);
  return buf;
}

fs::path step_file(const fs::path& run_dir, int depth) {
  return run_dir / "steps" / step_file_name(depth);
}

RunConfig effective_config(const fs::path& config_path, const CommandOptions& options) {
  RunConfig config = load_config(config_path);
  if (options.seed) config.seed = *options.seed;
  return config;
}

fs::path directory_for(const RunConfig& config, const CommandOptions& options) {
  if (options.out) return *options.out;
  return fs::path(config.output) / (config.name + "-" + config_hash(config));
}

std::optional<BoxCollection> load_step(const fs::path& run_dir, int depth) {
  const fs::path path = step_file(run_dir, depth);
  if (!fs::exists(path)) return std::nullopt;
  return covering_from_json(read_file(path));
}

}  // namespace

fs::path run_directory(const fs::path& config_path, const CommandOptions& options) {
  return directory_for(effective_config(config_path, options), options);
}

int cmd_run(const fs::path& config_path, const CommandOptions& options, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  try {
    config = effective_config(config_path, options);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }
  const fs::path dir = directory_for(config, options);

  std::optional<RunReport> reference_report;
  if (!config.reference.empty()) {
    try {
      reference_report = report_from_csv(read_file(fs::path(config.reference) / "report.csv"));
    } catch (const std::exception& e) {
      err << config_path.string() << ": reference: " << e.what() << "\n";
      return kExitInvalidInput;
    }
  }

  SolverConfig solver = make_solver_config(config);
  solver.keep_history = config.save_steps || reference_report.has_value();

  SolveResult result{BoxCollection(make_region(config)), {}, {}};
  try {
    result = solve(make_problem(config), make_region(config), solver);
  } catch (const EmptyCovering& e) {
    write_file(dir / "report.csv", report_to_csv(e.report()));
    err << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << config_path.string() << ": " << e.what() << "\n";
    return kExitInvalidInput;
  }

  if (reference_report) {
    const fs::path ref_dir = config.reference;
    for (std::size_t s = 0; s < result.report.steps.size(); ++s) {
      auto& record = result.report.steps[s];
      if (const auto ref = load_step(ref_dir, record.depth)) {
        record.hausdorff = covering_hausdorff(result.history[s], *ref);
      }
    }
    if (!reference_report->steps.empty() && reference_report->steps.back().box_count > 0) {
      result.report.ratio_to_reference =
          static_cast<double>(result.covering.size()) /
          static_cast<double>(reference_report->steps.back().box_count);
    }
  }

  write_file(dir / "config.cfg", serialize_config(config));
  write_file(dir / "covering.json", covering_to_json(result.covering));
  write_file(dir / "report.csv", report_to_csv(result.report));
  if (config.save_steps) {
    for (const auto& covering : result.history) {
      write_file(step_file(dir, covering.depth()), covering_to_json(covering));
    }
  }

  out << "run directory: " << dir.string() << "\n"
      << "final depth: " << result.covering.depth() << "\n"
      << "final boxes: " << result.covering.size() << "\n"
      << "final diameter: " << format_double(result.covering.diameter()) << "\n"
      << "evaluations: " << result.report.total_evals << "\n";
  if (result.report.ratio_to_reference) {
    out << "box ratio to reference: " << format_double(*result.report.ratio_to_reference) << "\n";
  }
  return kExitOk;
}

int cmd_compare(const fs::path& run_a, const fs::path& run_b, const CommandOptions& options,
                std::ostream& out, std::ostream& err) {
  RunReport report_a, report_b;
  try {
    report_a = report_from_csv(read_file(run_a / "report.csv"));
    report_b = report_from_csv(read_file(run_b / "report.csv"));
  } catch (const std::exception& e) {
    err << "compare: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  bool same_schedule = report_a.steps.size() == report_b.steps.size();
  for (std::size_t s = 0; same_schedule && s < report_a.steps.size(); ++s) {
    same_schedule = report_a.steps[s].depth == report_b.steps[s].depth;
  }
  if (!same_schedule) {
    err << "compare: runs have different depth schedules\n";
    return kExitInvalidInput;
  }

  std::ostringstream distances, ratios;
  distances << "depth,distance\n";
  ratios << "depth,ratio\n";
  bool included = true;
  int checked = 0;
  std::vector<int> violations;
  try {
    for (std::size_t s = 0; s < report_a.steps.size(); ++s) {
      const int depth = report_a.steps[s].depth;
      auto a = load_step(run_a, depth);
      auto b = load_step(run_b, depth);
      if (s + 1 == report_a.steps.size()) {
        if (!a) a = covering_from_json(read_file(run_a / "covering.json"));
        if (!b) b = covering_from_json(read_file(run_b / "covering.json"));
      }
      if (a && b) {
        distances << depth << ',' << format_double(covering_hausdorff(*a, *b)) << "\n";
        ++checked;
        if (!is_subcovering(*a, *b)) {
          included = false;
          violations.push_back(depth);
        }
      }
      ratios << depth << ','
             << format_double(static_cast<double>(report_b.steps[s].box_count) /
                              static_cast<double>(report_a.steps[s].box_count))
             << "\n";
    }
  } catch (const std::exception& e) {
    err << "compare: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  const fs::path dir = options.out ? *options.out : run_b;
  write_file(dir / "hausdorff.csv", distances.str());
  write_file(dir / "ratio.csv", ratios.str());
  out << "compared depths: " << checked << "\n"
      << "final box ratio: "
      << format_double(static_cast<double>(report_b.steps.back().box_count) /
                       static_cast<double>(report_a.steps.back().box_count))
      << "\n"
      << "inclusion A in B: " << (included ? "pass" : "fail");
  for (const int d : violations) out << ' ' << d;
  out << "\n";
  return kExitOk;
}

int cmd_residual_field(const fs::path& config_path, int resolution, const CommandOptions& options,
                       std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = effective_config(config_path, options);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (config.dim < 2 || config.dim > 3) {
    err << config_path.string() << ": residual field needs dimension 2 or 3, got " << config.dim
        << "\n";
    return kExitInvalidInput;
  }
  if (resolution < 1) {
    err << "residual-field: resolution must be >= 1\n";
    return kExitInvalidInput;
  }
  const ResidualField field = residual_field(make_problem(config), make_region(config), resolution);
  const fs::path dir = directory_for(config, options);
  write_file(dir / "field.csv", residual_field_to_csv(field));
  out << "field: " << (dir / "field.csv").string() << " (" << field.values.size() << " rows)\n"
      << "iso-level: " << format_double(2.0 * config.eps.lpNorm<Eigen::Infinity>()) << "\n";
  return kExitOk;
}

}  // namespace mocover
