#pragma once

#include <cstdint>

#include "mocover/descent.hpp"
#include "mocover/problem.hpp"

namespace mocover {

struct LineSearchConfig {
  double c1 = 1e-4;
  double h0 = 1.0;
  double backtrack_factor = 0.5;
  double h_min = 1e-10;

  /// Throws std::invalid_argument when a constant is out of range.
  void validate() const;
};

/// Objective evaluations performed on behalf of a caller.
struct EvalCounter {
  std::uint64_t values = 0;
  std::uint64_t gradients = 0;

  std::uint64_t total() const { return values + gradients; }
  EvalCounter& operator+=(const EvalCounter& other) {
    values += other.values;
    gradients += other.gradients;
    return *this;
  }
};

struct StepResult {
  double h = 0.0;      ///< accepted step, 0 if none
  Vector value;        ///< f~(x + h d) when h > 0
};

/// Largest h in {h0 * factor^m} with h >= h_min such that for every objective
///   f~_i(x + h d) + xi_i <= f~_i(x) - xi_i + c1 h d . grad f~_i(x).
/// `value` and `gradient` are f~(x) and grad f~(x).
StepResult armijo_backtrack(const UncertainProblem& problem, const Vector& x, const Vector& value,
                            const Matrix& gradient, const Vector& direction,
                            const LineSearchConfig& cfg, EvalCounter* counter = nullptr);

/// Convenience form that evaluates f~(x) and grad f~(x) itself.
double armijo_step(const UncertainProblem& problem, const Vector& x, const Vector& direction,
                   const LineSearchConfig& cfg, EvalCounter* counter = nullptr);

/// One application of the inexact descent map: x + h q_u(x), or x itself if
/// no guaranteed descent direction or no admissible step exists.
Vector descent_map(const UncertainProblem& problem, const Vector& x, const LineSearchConfig& cfg,
                   int max_rounds = 50, EvalCounter* counter = nullptr);

/// `iterations` applications of descent_map, stopping early at a fixed point.
/// Reuses the value computed by the accepted line-search trial. If `start_value`
/// is non-null it receives f~(x) at the starting point.
Vector iterate_descent_map(const UncertainProblem& problem, const Vector& x,
                           const LineSearchConfig& cfg, int iterations, int max_rounds = 50,
                           EvalCounter* counter = nullptr, Vector* start_value = nullptr);

}  // namespace mocover
