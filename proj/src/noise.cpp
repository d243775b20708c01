#include "mocover/noise.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mocover {
namespace {

constexpr double kQuantum = 1e-12;

std::uint64_t mix(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t quantize(double v) {
  if (std::abs(v) < 1e6) {
    return static_cast<std::uint64_t>(std::llround(v / kQuantum));
  }
  return std::bit_cast<std::uint64_t>(v);
}

class HashStream {
 public:
  explicit HashStream(std::uint64_t state) : state_(state) {}

  double uniform() {
    state_ = mix(state_);
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

  double normal() {
    // Box-Muller; 1 - u keeps the log argument in (0, 1]
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace

Vector perturbation(std::uint64_t seed, const Vector& x, int objective, double bound, int dim,
                    NoiseChannel channel) {
  if (!(bound >= 0.0)) throw std::invalid_argument("perturbation: bound must be non-negative");
  if (dim < 1) throw std::invalid_argument("perturbation: dim must be positive");
  Vector out = Vector::Zero(dim);
  if (bound == 0.0) return out;

  std::uint64_t h = mix(seed);
  h = mix(h ^ static_cast<std::uint64_t>(channel));
  h = mix(h ^ static_cast<std::uint64_t>(objective));
  h = mix(h ^ static_cast<std::uint64_t>(dim));
  for (Eigen::Index d = 0; d < x.size(); ++d) h = mix(h ^ quantize(x[d]));
  HashStream stream(h);

  // shrink slightly so rounding in the scaled vector never leaves the ball
  const double radius = bound * (1.0 - 8.0 * std::numeric_limits<double>::epsilon()) * stream.uniform();
  if (dim == 1) {
    out[0] = stream.uniform() < 0.5 ? -radius : radius;
    return out;
  }
  double norm = 0.0;
  do {
    for (int d = 0; d < dim; ++d) out[d] = stream.normal();
    norm = out.norm();
  } while (norm == 0.0);
  out *= radius / norm;
  return out;
}

}  // namespace mocover
