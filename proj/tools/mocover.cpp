#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mocover/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Box coverings of Pareto sets under inexact values and gradients"};
  app.require_subcommand(1);

  mocover::CommandOptions options;
  std::uint64_t seed = 0;
  std::string out;
  app.add_option("--seed", seed, "Override the noise seed of the config");
  app.add_option("--out", out, "Output directory");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Solve a configured problem");
  run->add_option("config", config_path, "Run config file")->required();

  std::string run_a, run_b;
  auto* compare = app.add_subcommand("compare", "Compare two completed runs");
  compare->add_option("run_a", run_a, "Reference run directory")->required();
  compare->add_option("run_b", run_b, "Compared run directory")->required();

  int resolution = 100;
  auto* field = app.add_subcommand("residual-field", "Sample the KKT residual on a grid");
  field->add_option("config", config_path, "Run config file")->required();
  field->add_option("--resolution", resolution, "Grid points per axis")->check(CLI::PositiveNumber);

  for (auto* sub : {run, compare, field}) {
    sub->add_option("--seed", seed, "Override the noise seed of the config");
    sub->add_option("--out", out, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mocover::kExitInvalidInput;
  }
  if (app.count("--seed") || run->count("--seed") || compare->count("--seed") || field->count("--seed")) {
    options.seed = seed;
  }
  if (!out.empty()) options.out = out;

  if (*run) return mocover::cmd_run(config_path, options, std::cout, std::cerr);
  if (*compare) return mocover::cmd_compare(run_a, run_b, options, std::cout, std::cerr);
  return mocover::cmd_residual_field(config_path, resolution, options, std::cout, std::cerr);
}
