#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mocover/geometry.hpp"
#include "mocover/problem.hpp"

namespace mocover {

struct StepRecord {
  int depth = 0;
  std::size_t box_count = 0;
  double max_diameter = 0.0;
  std::uint64_t eval_count = 0;
  std::optional<double> hausdorff;
};

struct RunReport {
  std::vector<StepRecord> steps;
  std::uint64_t total_evals = 0;
  std::optional<double> ratio_to_reference;
};

/// max(sup_a inf_b |a - b|, sup_b inf_a |a - b|), exact for finite sets.
/// Throws std::invalid_argument if either set is empty.
double hausdorff(std::span<const Vector> a, std::span<const Vector> b);

/// sup_a inf_b |a - b|.
double directed_hausdorff(std::span<const Vector> a, std::span<const Vector> b);

/// Cell centers of a covering, in key order.
std::vector<Vector> covering_centers(const BoxCollection& covering);

/// Hausdorff distance between the cell centers of two coverings.
double covering_hausdorff(const BoxCollection& a, const BoxCollection& b);

/// ||sum_i alpha_i grad f_i(x)|| at the QOP optimum over exact gradients.
double kkt_residual(const UncertainProblem& problem, const Vector& x);

/// kkt_residual on the cell-centered regular grid with `resolution` points per
/// axis, lexicographic order with the first coordinate varying slowest.
struct ResidualField {
  int resolution = 0;
  std::vector<Vector> points;
  std::vector<double> values;
};

/// Throws std::invalid_argument unless the dimension is 2 or 3.
ResidualField residual_field(const UncertainProblem& problem, const HyperBox& region,
                             int resolution);

}  // namespace mocover
