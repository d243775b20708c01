#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mocover/geometry.hpp"
#include "mocover/linesearch.hpp"
#include "mocover/metrics.hpp"
#include "mocover/problem.hpp"

namespace mocover {

enum class SolverMode { Gradient, Sampling, Combined };

struct SolverConfig {
  int steps = 1;
  int points_per_axis = 2;
  SolverMode mode = SolverMode::Gradient;
  /// Descent-map applications per sample point before locating its image.
  int inner_iterations = 5;
  /// Overrides the problem's noise seed when set.
  std::optional<std::uint64_t> seed;
  LineSearchConfig linesearch;
  int max_descent_rounds = 50;
  /// Inequality constraints; boxes whose sample points all violate it are dropped.
  std::function<bool(const Vector&)> feasibility;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Keep the covering of every depth in SolveResult::history.
  bool keep_history = false;

  void validate() const;
};

struct SolveResult {
  BoxCollection covering;
  RunReport report;
  std::vector<BoxCollection> history;
};

/// Raised when a selection step discards every box.
class EmptyCovering : public std::runtime_error {
 public:
  EmptyCovering(int depth, RunReport report);
  int depth() const { return depth_; }
  const RunReport& report() const { return report_; }

 private:
  int depth_;
  RunReport report_;
};

/// y_star + xi <= y - xi componentwise, strictly in at least one component.
bool confidently_dominates(const Vector& y_star, const Vector& y, const Vector& xi);

/// For each value vector, whether some other vector in `values` confidently
/// dominates it.
std::vector<bool> confidently_dominated(const std::vector<Vector>& values, const Vector& xi);

/// Gradient-based subdivision: keep the boxes hit by the images of the sample
/// points under the inexact descent map. Requires mode Gradient or Combined.
SolveResult subdivision_solve(const UncertainProblem& problem, const HyperBox& region,
                              const SolverConfig& cfg);

/// Gradient-free sampling: drop a box iff every sample point is confidently
/// dominated. Requires mode Sampling.
SolveResult sampling_solve(const UncertainProblem& problem, const HyperBox& region,
                           const SolverConfig& cfg);

/// Gradient selection followed by the nondominance test on the survivors.
/// Requires mode Combined.
SolveResult combined_solve(const UncertainProblem& problem, const HyperBox& region,
                           const SolverConfig& cfg);

/// Dispatches on cfg.mode.
SolveResult solve(const UncertainProblem& problem, const HyperBox& region, const SolverConfig& cfg);

}  // namespace mocover
