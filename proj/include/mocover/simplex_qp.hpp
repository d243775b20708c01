#pragma once

#include <stdexcept>

#include "mocover/geometry.hpp"

namespace mocover {

/// Convex-combination weights with per-coordinate lower bounds.
struct SimplexWeights {
  Vector alpha;
  Vector alpha_min;
};

/// Thrown by solve_qop when sum(alpha_min) > 1.
class InfeasibleBounds : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Euclidean projection of v onto {b >= 0, sum b = mass} (sort based).
Vector project_to_simplex(const Vector& v, double mass);

/// Minimizes ||sum_i alpha_i g_i||^2 over alpha >= alpha_min, sum alpha = 1.
/// `gradients` is n x k with one gradient per column.
///
/// The bounds are shifted out (b = alpha - alpha_min) and the problem is
/// solved by projected gradient with step 1/||G||_F^2 on the scaled simplex,
/// stopping when successive objectives differ by less than 1e-12 or after
/// 10^4 iterations. The result is then refined by solving the equality
/// constrained problem on the identified support, which is kept whenever it
/// is feasible and no worse.
SimplexWeights solve_qop(const Matrix& gradients, const Vector& alpha_min);

/// Zero lower bounds.
SimplexWeights solve_qop(const Matrix& gradients);

/// -sum_i alpha_i g_i.
Vector combination(const Matrix& gradients, const Vector& alpha);

/// ||sum_i alpha_i g_i||^2.
double qop_objective(const Matrix& gradients, const Vector& alpha);

}  // namespace mocover
