#include "mocover/descent.hpp"

#include <cmath>
#include <stdexcept>

namespace mocover {
namespace {

constexpr double kStationaryNorm = 1e-12;

DescentOutcome stationary(Eigen::Index n, SimplexWeights weights, int iterations) {
  return DescentOutcome{Vector::Zero(n), std::move(weights), DescentStatus::StationaryDetected,
                        iterations};
}

}  // namespace

std::optional<double> max_angle(double gradient_norm, double eps) {
  if (!(gradient_norm > 0.0) || eps < 0.0) {
    throw std::invalid_argument("max_angle: need gradient_norm > 0 and eps >= 0");
  }
  if (eps > gradient_norm) return std::nullopt;
  return std::asin(eps / gradient_norm);
}

Vector alpha_lower_bounds(const Matrix& gradients, const Vector& alpha, double q_norm,
                          const Vector& eps) {
  const auto k = gradients.cols();
  if (alpha.size() != k || eps.size() != k) {
    throw std::invalid_argument("alpha_lower_bounds: length mismatch");
  }
  const Matrix gram = gradients.transpose() * gradients;
  Vector bounds(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double norm2 = gram(i, i);
    if (!(norm2 > 0.0)) throw std::domain_error("alpha_lower_bounds: zero gradient");
    double cross = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j != i) cross += alpha[j] * gram(j, i);
    }
    bounds[i] = std::max(0.0, (q_norm * eps[i] - cross) / norm2);
  }
  return bounds;
}

bool validity_check(const Vector& direction, const Matrix& gradients, const Vector& eps,
                    double tolerance) {
  const double q_norm = direction.norm();
  if (!(q_norm > 0.0)) throw std::invalid_argument("validity_check: zero direction");
  if (gradients.rows() != direction.size() || eps.size() != gradients.cols()) {
    throw std::invalid_argument("validity_check: dimension mismatch");
  }
  for (Eigen::Index i = 0; i < gradients.cols(); ++i) {
    if (-gradients.col(i).dot(direction) < eps[i] * q_norm - tolerance) return false;
  }
  return true;
}

DescentOutcome inexact_descent(const Matrix& gradients, const Vector& eps, int max_rounds) {
  const auto n = gradients.rows();
  const auto k = gradients.cols();
  if (eps.size() != k) throw std::invalid_argument("inexact_descent: eps has wrong length");
  if ((eps.array() < 0.0).any()) throw std::invalid_argument("inexact_descent: eps must be >= 0");

  Vector bounds = Vector::Zero(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double norm = gradients.col(i).norm();
    if (norm == 0.0 || !max_angle(norm, eps[i]) || norm == eps[i]) {
      return stationary(n, SimplexWeights{Vector::Unit(k, i), bounds}, 0);
    }
  }

  SimplexWeights weights{Vector::Constant(k, 1.0 / static_cast<double>(k)), bounds};
  for (int round = 1; round <= max_rounds; ++round) {
    weights = solve_qop(gradients, bounds);
    const Vector q = combination(gradients, weights.alpha);
    const double q_norm = q.norm();
    if (q_norm < kStationaryNorm) return stationary(n, std::move(weights), round);

    const Vector fresh = alpha_lower_bounds(gradients, weights.alpha, q_norm, eps);
    bounds = bounds.cwiseMax(fresh);
    if (bounds.sum() >= 1.0) {
      weights.alpha_min = bounds;
      return stationary(n, std::move(weights), round);
    }
    if ((weights.alpha.array() >= bounds.array()).all() && validity_check(q, gradients, eps, 0.0)) {
      return DescentOutcome{q, std::move(weights), DescentStatus::Descent, round};
    }
  }
  weights.alpha_min = bounds;
  return stationary(n, std::move(weights), max_rounds);
}

}  // namespace mocover
