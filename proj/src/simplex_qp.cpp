#include "mocover/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace mocover {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kObjectiveTolerance = 1e-12;

// 0.5 (b + lo)^T H (b + lo)
double half_objective(const Matrix& gram, const Vector& shifted) {
  return 0.5 * shifted.dot(gram * shifted);
}

// Minimizer on the affine hull of `support` (may leave the simplex); other
// coordinates stay at 0.
// Solved as least squares in the gradients themselves (beta = base + N z with
// N spanning the zero-sum directions), which keeps ||G alpha|| accurate to
// machine precision instead of its square root.
bool solve_on_support(const Matrix& gradients, const Vector& lo, double mass,
                      const std::vector<Eigen::Index>& support, Vector& beta) {
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 0) return false;
  Vector base = lo;
  for (const auto i : support) base[i] += mass / static_cast<double>(s);
  Vector candidate = Vector::Zero(lo.size());
  if (s > 1) {
    Matrix moves(gradients.rows(), s - 1);
    for (Eigen::Index a = 0; a + 1 < s; ++a) {
      moves.col(a) = gradients.col(support[a]) - gradients.col(support[s - 1]);
    }
    const Vector z = Eigen::CompleteOrthogonalDecomposition<Matrix>(moves).solve(-(gradients * base));
    if (!z.allFinite()) return false;
    for (Eigen::Index a = 0; a + 1 < s; ++a) {
      candidate[support[a]] += z[a];
      candidate[support[s - 1]] -= z[a];
    }
  }
  for (const auto i : support) candidate[i] += mass / static_cast<double>(s);
  beta = candidate;
  return true;
}

}  // namespace

Vector project_to_simplex(const Vector& v, double mass) {
  const auto k = v.size();
  if (mass <= 0.0) return Vector::Zero(k);
  std::vector<double> sorted(v.data(), v.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    cumulative += sorted[j];
    const double t = (cumulative - mass) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0.0) threshold = t;
  }
  return (v.array() - threshold).max(0.0).matrix();
}

SimplexWeights solve_qop(const Matrix& gradients, const Vector& alpha_min) {
  const auto k = gradients.cols();
  if (k < 1) throw std::invalid_argument("solve_qop: need at least one gradient");
  if (alpha_min.size() != k) throw std::invalid_argument("solve_qop: alpha_min has wrong length");
  if ((alpha_min.array() < 0.0).any()) {
    throw std::invalid_argument("solve_qop: lower bounds must be non-negative");
  }
  const double bound_sum = alpha_min.sum();
  if (bound_sum > 1.0 + 1e-12) {
    throw InfeasibleBounds("solve_qop: lower bounds sum to more than 1");
  }
  const double mass = std::max(0.0, 1.0 - bound_sum);

  SimplexWeights out{alpha_min, alpha_min};
  if (k == 1 || mass == 0.0) {
    if (k == 1) out.alpha[0] = 1.0;
    return out;
  }

  const Matrix gram = gradients.transpose() * gradients;
  const double lipschitz = gram.trace();
  Vector beta = Vector::Constant(k, mass / static_cast<double>(k));
  if (lipschitz == 0.0) {
    out.alpha = alpha_min + beta;
    return out;
  }

  double objective = half_objective(gram, beta + alpha_min);
  for (int it = 0; it < kMaxIterations; ++it) {
    const Vector grad = gram * (beta + alpha_min);
    beta = project_to_simplex(beta - grad / lipschitz, mass);
    const double next = half_objective(gram, beta + alpha_min);
    const bool converged = std::abs(objective - next) < kObjectiveTolerance;
    objective = next;
    if (converged) break;
  }

  // Refine on the identified support. When the support minimizer leaves the
  // simplex, walk toward it up to the boundary, drop the blocking coordinate
  // and retry; the objective cannot increase along the way.
  std::vector<Eigen::Index> support;
  const double zero_level = 1e-10 * mass;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (beta[i] > zero_level) support.push_back(i);
  }
  Vector current = Vector::Zero(k);
  for (const auto i : support) current[i] = beta[i];
  current *= mass / current.sum();
  while (!support.empty()) {
    Vector target;
    if (!solve_on_support(gradients, alpha_min, mass, support, target)) break;
    double step = 1.0;
    Eigen::Index blocking = -1;
    for (const auto i : support) {
      if (target[i] < 0.0) {
        const double t = current[i] / (current[i] - target[i]);
        if (t < step) {
          step = t;
          blocking = i;
        }
      }
    }
    current += step * (target - current);
    if (blocking < 0) break;
    current[blocking] = 0.0;
    std::erase(support, blocking);
  }
  current = current.cwiseMax(0.0);
  if (current.sum() > 0.0 && (gradients * (current + alpha_min)).squaredNorm() <=
                                 (gradients * (beta + alpha_min)).squaredNorm()) {
    beta = current * (mass / current.sum());
  }

  out.alpha = alpha_min + beta;
  return out;
}

SimplexWeights solve_qop(const Matrix& gradients) {
  return solve_qop(gradients, Vector::Zero(gradients.cols()));
}

Vector combination(const Matrix& gradients, const Vector& alpha) {
  if (gradients.cols() != alpha.size()) {
    throw std::invalid_argument("combination: weight count does not match gradient count");
  }
  return -(gradients * alpha);
}

double qop_objective(const Matrix& gradients, const Vector& alpha) {
  return (gradients * alpha).squaredNorm();
}

}  // namespace mocover
