#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mocover/problem.hpp"
#include "mocover/solver.hpp"

namespace mocover {

/// A run description as read from a flat `key = value` config file.
/// Vectors are written as `[a, b, c]`; `#` starts a comment.
struct RunConfig {
  std::string name;  ///< label of the run directory; defaults to the problem name
  std::string problem;
  int dim = 0;
  Vector lower;
  Vector upper;
  SolverMode mode = SolverMode::Gradient;
  int steps = 1;
  Vector xi;
  Vector eps;
  std::uint64_t seed = 0;
  int points_per_axis = 2;
  int inner_iterations = 5;
  int max_descent_rounds = 50;
  LineSearchConfig linesearch;
  ProductionForm production_form = ProductionForm::Product;
  std::string output = "runs";
  std::string reference;  ///< optional run directory to measure against
  bool save_steps = true;
  unsigned threads = 0;

  bool operator==(const RunConfig& other) const;
};

/// Config error with the 1-based line it refers to (0: whole file).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// 16 hex digits identifying the canonical text form.
std::string config_hash(const RunConfig& config);

std::string_view mode_name(SolverMode mode);

UncertainProblem make_problem(const RunConfig& config);
HyperBox make_region(const RunConfig& config);
SolverConfig make_solver_config(const RunConfig& config);

}  // namespace mocover
