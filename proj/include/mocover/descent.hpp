#pragma once

#include <optional>

#include "mocover/simplex_qp.hpp"

namespace mocover {

enum class DescentStatus { Descent, StationaryDetected };

struct DescentOutcome {
  Vector direction;  ///< zero iff status == StationaryDetected
  SimplexWeights weights;
  DescentStatus status = DescentStatus::StationaryDetected;
  int iterations = 0;  ///< QOP solves performed
};

/// Worst-case angle arcsin(eps / ||g||) between an exact gradient and its
/// approximation. Returns nullopt when eps exceeds the norm: the point is then
/// already close to the substationary set and no angle bound exists.
std::optional<double> max_angle(double gradient_norm, double eps);

/// Lower bounds on the weights that make the inexact direction a descent
/// direction for every admissible exact gradient:
///   (||q|| eps_i - sum_{j != i} alpha_j g_j . g_i) / ||g_i||^2, clamped at 0.
/// Throws std::domain_error if some gradient is zero.
Vector alpha_lower_bounds(const Matrix& gradients, const Vector& alpha, double q_norm,
                          const Vector& eps);

/// -g_i . q >= eps_i ||q|| - tolerance for every objective.
/// Throws std::invalid_argument for a zero direction.
bool validity_check(const Vector& direction, const Matrix& gradients, const Vector& eps,
                    double tolerance = 1e-9);

/// Descent direction under gradient errors bounded by eps.
///
/// Solves the QOP, derives weight lower bounds from the result and re-solves
/// with the (monotonically tightened) bounds until the weights satisfy them
/// (Descent) or the bounds sum to at least one (StationaryDetected, no
/// direction is guaranteed to descend). Also stationary when some
/// ||g_i|| <= eps_i, when ||q|| < 1e-12, or when `max_rounds` is exhausted.
DescentOutcome inexact_descent(const Matrix& gradients, const Vector& eps, int max_rounds = 50);

}  // namespace mocover
