#include "mocover/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mocover/simplex_qp.hpp"

namespace mocover {

double directed_hausdorff(std::span<const Vector> a, std::span<const Vector> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: point sets must be non-empty");
  double worst = 0.0;  // squared
  for (const Vector& p : a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vector& r : b) {
      const double d = (p - r).squaredNorm();
      if (d < nearest) {
        nearest = d;
        // p cannot raise the maximum any more
        if (nearest <= worst) break;
      }
    }
    if (nearest > worst) worst = nearest;
  }
  return std::sqrt(worst);
}

double hausdorff(std::span<const Vector> a, std::span<const Vector> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<Vector> covering_centers(const BoxCollection& covering) {
  std::vector<Vector> centers;
  centers.reserve(covering.size());
  for (std::size_t i = 0; i < covering.size(); ++i) centers.push_back(covering.cell_center(i));
  return centers;
}

double covering_hausdorff(const BoxCollection& a, const BoxCollection& b) {
  const auto ca = covering_centers(a);
  const auto cb = covering_centers(b);
  return hausdorff(ca, cb);
}

double kkt_residual(const UncertainProblem& problem, const Vector& x) {
  const Matrix g = problem.exact_gradient(x);
  const SimplexWeights w = solve_qop(g);
  return combination(g, w.alpha).norm();
}

ResidualField residual_field(const UncertainProblem& problem, const HyperBox& region,
                             int resolution) {
  const auto n = region.dim();
  if (n != 2 && n != 3) {
    throw std::invalid_argument("residual_field: only 2- and 3-dimensional regions are supported");
  }
  if (resolution < 1) throw std::invalid_argument("residual_field: resolution must be >= 1");

  // same cell-centered stencil as box sampling
  const std::vector<Vector> points = sample_points(region, resolution);
  ResidualField field;
  field.resolution = resolution;
  field.points = points;
  field.values.reserve(points.size());
  for (const Vector& x : points) field.values.push_back(kkt_residual(problem, x));
  return field;
}

}  // namespace mocover
