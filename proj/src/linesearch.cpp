#include "mocover/linesearch.hpp"

#include <cmath>
#include <stdexcept>

namespace mocover {

void LineSearchConfig::validate() const {
  if (!(c1 > 0.0 && c1 < 1.0)) throw std::invalid_argument("linesearch: c1 must lie in (0, 1)");
  if (!(h0 > 0.0)) throw std::invalid_argument("linesearch: h0 must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw std::invalid_argument("linesearch: backtrack_factor must lie in (0, 1)");
  }
  if (!(h_min > 0.0)) throw std::invalid_argument("linesearch: h_min must be positive");
}

StepResult armijo_backtrack(const UncertainProblem& problem, const Vector& x, const Vector& value,
                            const Matrix& gradient, const Vector& direction,
                            const LineSearchConfig& cfg, EvalCounter* counter) {
  if (!(direction.norm() > 0.0)) throw std::invalid_argument("armijo: zero direction");
  const Vector slope = gradient.transpose() * direction;  // d . grad f~_i
  const Vector& xi = problem.xi();
  for (double h = cfg.h0; h >= cfg.h_min; h *= cfg.backtrack_factor) {
    Vector trial = problem.value(x + h * direction);
    if (counter) ++counter->values;
    const bool accepted =
        ((trial + xi).array() <= (value - xi + cfg.c1 * h * slope).array()).all();
    if (accepted) return StepResult{h, std::move(trial)};
  }
  return StepResult{};
}

double armijo_step(const UncertainProblem& problem, const Vector& x, const Vector& direction,
                   const LineSearchConfig& cfg, EvalCounter* counter) {
  const Vector value = problem.value(x);
  const Matrix gradient = problem.gradient(x);
  if (counter) {
    ++counter->values;
    ++counter->gradients;
  }
  return armijo_backtrack(problem, x, value, gradient, direction, cfg, counter).h;
}

Vector descent_map(const UncertainProblem& problem, const Vector& x, const LineSearchConfig& cfg,
                   int max_rounds, EvalCounter* counter) {
  return iterate_descent_map(problem, x, cfg, 1, max_rounds, counter);
}

Vector iterate_descent_map(const UncertainProblem& problem, const Vector& x,
                           const LineSearchConfig& cfg, int iterations, int max_rounds,
                           EvalCounter* counter, Vector* start_value) {
  Vector current = x;
  Vector value = problem.value(current);
  if (counter) ++counter->values;
  if (start_value) *start_value = value;

  for (int it = 0; it < iterations; ++it) {
    const Matrix gradient = problem.gradient(current);
    if (counter) ++counter->gradients;
    const DescentOutcome outcome = inexact_descent(gradient, problem.eps(), max_rounds);
    if (outcome.status == DescentStatus::StationaryDetected) break;
    StepResult step =
        armijo_backtrack(problem, current, value, gradient, outcome.direction, cfg, counter);
    if (step.h == 0.0) break;
    current += step.h * outcome.direction;
    value = std::move(step.value);
  }
  return current;
}

}  // namespace mocover
