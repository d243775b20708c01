#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mocover/geometry.hpp"

namespace mocover {

/// Objective vector F(x), length k.
using ValueFunction = std::function<Vector(const Vector&)>;
/// Jacobian transposed: n x k, column i holds the gradient of f_i.
using GradientFunction = std::function<Matrix(const Vector&)>;

/// A k-objective problem on R^n whose values and gradients are only available
/// up to bounded errors: |f~_i - f_i| <= xi_i and ||grad f~_i - grad f_i|| <= eps_i.
/// The perturbation is a fixed function of (noise_seed, x), so f~ is a
/// well-defined function and repeated evaluations agree.
class UncertainProblem {
 public:
  UncertainProblem(std::string name, int n, int k, ValueFunction value,
                   GradientFunction gradient = {});

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int k() const { return k_; }
  const Vector& xi() const { return xi_; }
  const Vector& eps() const { return eps_; }
  std::uint64_t noise_seed() const { return seed_; }
  bool has_gradient() const { return static_cast<bool>(gradient_); }
  const std::optional<HyperBox>& default_region() const { return region_; }

  UncertainProblem with_errors(Vector xi, Vector eps) const;
  UncertainProblem with_seed(std::uint64_t seed) const;
  UncertainProblem with_region(HyperBox region) const;

  Vector exact_value(const Vector& x) const;
  Matrix exact_gradient(const Vector& x) const;

  /// Perturbed objective values f~(x).
  Vector value(const Vector& x) const;
  /// Perturbed gradients, n x k.
  Matrix gradient(const Vector& x) const;

 private:
  void check_point(const Vector& x) const;

  std::string name_;
  int n_;
  int k_;
  ValueFunction value_;
  GradientFunction gradient_;
  Vector xi_;
  Vector eps_;
  std::uint64_t seed_ = 0;
  std::optional<HyperBox> region_;
};

/// How the failure objective of the production problem aggregates the
/// component failure probabilities.
enum class ProductionForm {
  Product,      ///< 1 - prod_j (1 - p_j)
  VerbatimSum,  ///< 1 - sum_j (1 - p_j)
};

struct BuiltinOptions {
  ProductionForm production_form = ProductionForm::Product;
};

/// "two-paraboloids" (n = 2), "tri-paraboloids" (n = 3) or "production"
/// (n >= 3), error-free, with their default regions [-2,2]^2, [-2,2]^3 and
/// [0,40]^n. Throws std::invalid_argument on unknown names or dimensions.
UncertainProblem builtin(std::string_view name, int n, const BuiltinOptions& options = {});

std::vector<std::string> builtin_names();

/// Natural decision dimension of a builtin (production reports 5).
int builtin_default_dim(std::string_view name);

/// Objective count of a builtin.
int builtin_objectives(std::string_view name);

}  // namespace mocover
