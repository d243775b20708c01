#include "mocover/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "mocover/noise.hpp"

namespace mocover {

UncertainProblem::UncertainProblem(std::string name, int n, int k, ValueFunction value,
                                   GradientFunction gradient)
    : name_(std::move(name)),
      n_(n),
      k_(k),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      xi_(Vector::Zero(k)),
      eps_(Vector::Zero(k)) {
  if (n < 1 || k < 1) throw std::invalid_argument("UncertainProblem: n and k must be positive");
  if (!value_) throw std::invalid_argument("UncertainProblem: value callback is required");
}

UncertainProblem UncertainProblem::with_errors(Vector xi, Vector eps) const {
  if (xi.size() != k_ || eps.size() != k_) {
    throw std::invalid_argument("UncertainProblem: xi and eps must have one entry per objective");
  }
  if ((xi.array() < 0.0).any() || (eps.array() < 0.0).any() || !xi.allFinite() ||
      !eps.allFinite()) {
    throw std::invalid_argument("UncertainProblem: error bounds must be finite and non-negative");
  }
  UncertainProblem copy = *this;
  copy.xi_ = std::move(xi);
  copy.eps_ = std::move(eps);
  return copy;
}

UncertainProblem UncertainProblem::with_seed(std::uint64_t seed) const {
  UncertainProblem copy = *this;
  copy.seed_ = seed;
  return copy;
}

UncertainProblem UncertainProblem::with_region(HyperBox region) const {
  if (region.dim() != n_) throw std::invalid_argument("UncertainProblem: region dimension mismatch");
  UncertainProblem copy = *this;
  copy.region_ = std::move(region);
  return copy;
}

void UncertainProblem::check_point(const Vector& x) const {
  if (x.size() != n_) {
    throw std::invalid_argument("UncertainProblem '" + name_ + "': point has dimension " +
                                std::to_string(x.size()) + ", expected " + std::to_string(n_));
  }
}

Vector UncertainProblem::exact_value(const Vector& x) const {
  check_point(x);
  Vector f = value_(x);
  if (f.size() != k_) throw std::logic_error("UncertainProblem: value callback returned wrong length");
  return f;
}

Matrix UncertainProblem::exact_gradient(const Vector& x) const {
  check_point(x);
  if (!gradient_) throw std::logic_error("UncertainProblem '" + name_ + "' has no gradient");
  Matrix g = gradient_(x);
  if (g.rows() != n_ || g.cols() != k_) {
    throw std::logic_error("UncertainProblem: gradient callback returned wrong shape");
  }
  return g;
}

Vector UncertainProblem::value(const Vector& x) const {
  Vector f = exact_value(x);
  for (int i = 0; i < k_; ++i) {
    if (xi_[i] == 0.0) continue;
    const double noise = perturbation(seed_, x, i, xi_[i], 1, NoiseChannel::Value)[0];
    if (!(std::abs(noise) <= xi_[i])) throw std::logic_error("value perturbation exceeds xi");
    f[i] += noise;
  }
  return f;
}

Matrix UncertainProblem::gradient(const Vector& x) const {
  Matrix g = exact_gradient(x);
  for (int i = 0; i < k_; ++i) {
    if (eps_[i] == 0.0) continue;
    const Vector noise = perturbation(seed_, x, i, eps_[i], n_, NoiseChannel::Gradient);
    if (!(noise.norm() <= eps_[i])) throw std::logic_error("gradient perturbation exceeds eps");
    g.col(i) += noise;
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

UncertainProblem two_paraboloids() {
  auto value = [](const Vector& x) {
    Vector f(2);
    f[0] = std::pow(x[0] - 1.0, 2) + std::pow(x[1] - 1.0, 4);
    f[1] = std::pow(x[0] + 1.0, 2) + std::pow(x[1] + 1.0, 2);
    return f;
  };
  auto gradient = [](const Vector& x) {
    Matrix g(2, 2);
    g(0, 0) = 2.0 * (x[0] - 1.0);
    g(1, 0) = 4.0 * std::pow(x[1] - 1.0, 3);
    g(0, 1) = 2.0 * (x[0] + 1.0);
    g(1, 1) = 2.0 * (x[1] + 1.0);
    return g;
  };
  return UncertainProblem("two-paraboloids", 2, 2, value, gradient)
      .with_region(HyperBox(Vector::Zero(2), Vector::Constant(2, 2.0)));
}

UncertainProblem tri_paraboloids() {
  auto value = [](const Vector& x) {
    Vector f(3);
    f[0] = std::pow(x[0] - 1.0, 4) + std::pow(x[1] - 1.0, 2) + std::pow(x[2] - 1.0, 2);
    f[1] = std::pow(x[0] + 1.0, 2) + std::pow(x[1] + 1.0, 4) + std::pow(x[2] + 1.0, 2);
    f[2] = std::pow(x[0] - 1.0, 2) + std::pow(x[1] + 1.0, 2) + std::pow(x[2] - 1.0, 4);
    return f;
  };
  auto gradient = [](const Vector& x) {
    Matrix g(3, 3);
    g.col(0) << 4.0 * std::pow(x[0] - 1.0, 3), 2.0 * (x[1] - 1.0), 2.0 * (x[2] - 1.0);
    g.col(1) << 2.0 * (x[0] + 1.0), 4.0 * std::pow(x[1] + 1.0, 3), 2.0 * (x[2] + 1.0);
    g.col(2) << 2.0 * (x[0] - 1.0), 2.0 * (x[1] + 1.0), 4.0 * std::pow(x[2] - 1.0, 3);
    return g;
  };
  return UncertainProblem("tri-paraboloids", 3, 3, value, gradient)
      .with_region(HyperBox(Vector::Zero(3), Vector::Constant(3, 2.0)));
}

// Component failure probabilities. The first two components follow a Weibull
// law in their own cost; components 3..n depend on x_1. The Weibull terms use
// max(x, 0), a C^1 extension of the formula to negative costs.
struct Failure {
  Vector p;     // p_j(x)
  Matrix dp;    // n x n, column j = grad p_j
};

Failure failure_probabilities(const Vector& x) {
  const auto n = x.size();
  Failure out{Vector(n), Matrix::Zero(n, n)};
  for (int j = 0; j < 2; ++j) {
    const double t = std::max(x[j], 0.0) / 20.0;
    out.p[j] = 0.01 * std::exp(-std::pow(t, 2.5));
    out.dp(j, j) = out.p[j] * (-2.5 / 20.0) * std::pow(t, 1.5);
  }
  for (Eigen::Index j = 2; j < n; ++j) {
    out.p[j] = 0.01 * std::exp(-x[0] / 15.0);
    out.dp(0, j) = -out.p[j] / 15.0;
  }
  return out;
}

UncertainProblem production(int n, ProductionForm form) {
  auto value = [form](const Vector& x) {
    const Failure fail = failure_probabilities(x);
    Vector f(2);
    f[0] = x.sum();
    if (form == ProductionForm::Product) {
      f[1] = 1.0 - (1.0 - fail.p.array()).prod();
    } else {
      f[1] = 1.0 - (1.0 - fail.p.array()).sum();
    }
    return f;
  };
  auto gradient = [form](const Vector& x) {
    const Failure fail = failure_probabilities(x);
    const auto n = x.size();
    Matrix g(n, 2);
    g.col(0).setOnes();
    g.col(1).setZero();
    for (Eigen::Index j = 0; j < n; ++j) {
      double weight = 1.0;
      if (form == ProductionForm::Product) {
        for (Eigen::Index l = 0; l < n; ++l) {
          if (l != j) weight *= 1.0 - fail.p[l];
        }
      }
      g.col(1) += weight * fail.dp.col(j);
    }
    return g;
  };
  return UncertainProblem("production", n, 2, value, gradient)
      .with_region(HyperBox(Vector::Constant(n, 20.0), Vector::Constant(n, 20.0)));
}

}  // namespace

UncertainProblem builtin(std::string_view name, int n, const BuiltinOptions& options) {
  if (name == "two-paraboloids") {
    if (n != 2) throw std::invalid_argument("two-paraboloids requires n = 2");
    return two_paraboloids();
  }
  if (name == "tri-paraboloids") {
    if (n != 3) throw std::invalid_argument("tri-paraboloids requires n = 3");
    return tri_paraboloids();
  }
  if (name == "production") {
    if (n < 3) throw std::invalid_argument("production requires n >= 3");
    return production(n, options.production_form);
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"two-paraboloids", "tri-paraboloids", "production"};
}

int builtin_default_dim(std::string_view name) {
  if (name == "two-paraboloids") return 2;
  if (name == "tri-paraboloids") return 3;
  if (name == "production") return 5;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

int builtin_objectives(std::string_view name) {
  if (name == "two-paraboloids") return 2;
  if (name == "tri-paraboloids") return 3;
  if (name == "production") return 2;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace mocover
