#pragma once

#include <cstdint>

#include "mocover/geometry.hpp"

namespace mocover {

enum class NoiseChannel : std::uint64_t { Value = 1, Gradient = 2 };

/// Deterministic bounded perturbation: a pseudo-random vector of Euclidean
/// norm <= bound that depends only on (seed, x quantized to 1e-12, objective,
/// channel). Direction is uniform on the sphere, radius uniform in [0, bound].
/// dim == 1 gives a scalar uniform on [-bound, bound].
Vector perturbation(std::uint64_t seed, const Vector& x, int objective, double bound, int dim,
                    NoiseChannel channel = NoiseChannel::Gradient);

}  // namespace mocover
