#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mocover/descent.hpp"

using namespace mocover;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Matrix cols(std::initializer_list<Vector> columns) {
  Matrix g(columns.begin()->size(), static_cast<Eigen::Index>(columns.size()));
  Eigen::Index j = 0;
  for (const auto& c : columns) g.col(j++) = c;
  return g;
}

}  // namespace

TEST_CASE("worst-case angle") {
  CHECK(*max_angle(1.0, 0.0) == 0.0);
  CHECK(*max_angle(0.3, 0.3) == doctest::Approx(std::numbers::pi / 2));
  CHECK(*max_angle(0.2, 0.1) == doctest::Approx(std::numbers::pi / 6));
  CHECK_FALSE(max_angle(0.1, 0.2).has_value());
  CHECK(*max_angle(1.0, 0.2) < *max_angle(1.0, 0.3));
  CHECK(*max_angle(2.0, 0.2) < *max_angle(1.0, 0.2));
}

TEST_CASE("weight lower bounds") {
  const Matrix orth = cols({vec({1, 0}), vec({0, 1})});
  CHECK(alpha_lower_bounds(orth, vec({0.5, 0.5}), std::sqrt(0.5), vec({0, 0})) == vec({0, 0}));

  CHECK(alpha_lower_bounds(cols({vec({2, 0})}), vec({1}), 2.0, vec({0.5})) == vec({0.25}));

  const Matrix anti = cols({vec({1, 0}), vec({-1, 0})});
  CHECK(alpha_lower_bounds(anti, vec({0.5, 0.5}), 0.0, vec({0, 0})) == vec({0.5, 0.5}));

  // clamped at zero when the cross terms help
  const Matrix acute = cols({vec({1, 0}), vec({1, 1})});
  CHECK(alpha_lower_bounds(acute, vec({0.5, 0.5}), 1.0, vec({0, 0})) == vec({0, 0}));

  CHECK_THROWS_AS(alpha_lower_bounds(cols({vec({0, 0})}), vec({1}), 0.0, vec({0})),
                  std::domain_error);
}

TEST_CASE("exact case matches the plain minimum-norm direction") {
  const Matrix g = cols({vec({1, 0}), vec({0, 1})});
  const auto out = inexact_descent(g, vec({0, 0}));
  CHECK(out.status == DescentStatus::Descent);
  CHECK((out.direction - vec({-0.5, -0.5})).norm() < 1e-12);
}

TEST_CASE("single objective with error") {
  const auto out = inexact_descent(cols({vec({2, 0})}), vec({0.5}));
  CHECK(out.status == DescentStatus::Descent);
  CHECK(out.direction == vec({-2, 0}));
}

TEST_CASE("stationary cases") {
  const auto kkt = inexact_descent(cols({vec({1, 0}), vec({-1, 0})}), vec({0.1, 0.1}));
  CHECK(kkt.status == DescentStatus::StationaryDetected);
  CHECK(kkt.direction == Vector::Zero(2));

  const auto small = inexact_descent(cols({vec({0.05, 0}), vec({0, 1})}), vec({0.1, 0.1}));
  CHECK(small.status == DescentStatus::StationaryDetected);

  // obtuse pair: a cone exists exactly but is too narrow for the error
  const double c = std::cos(2.9), s = std::sin(2.9);
  const auto narrow = inexact_descent(cols({vec({1, 0}), vec({c, s})}), vec({0.3, 0.3}));
  CHECK(narrow.status == DescentStatus::StationaryDetected);
  CHECK(inexact_descent(cols({vec({1, 0}), vec({c, s})}), vec({0, 0})).status ==
        DescentStatus::Descent);
}

TEST_CASE("weight bounds can tilt the direction") {
  // g2 much shorter: the plain direction hugs g2 and violates the cone of g1
  const Matrix g = cols({vec({1, 0}), vec({0.1, 0.4})});
  const Vector eps = vec({0.05, 0.05});
  const auto out = inexact_descent(g, eps);
  REQUIRE(out.status == DescentStatus::Descent);
  CHECK(validity_check(out.direction, g, eps, 0.0));
  CHECK(((out.weights.alpha - out.weights.alpha_min).array() >= -1e-12).all());
}

TEST_CASE("validity check") {
  const Matrix g = cols({vec({2, 1})});
  CHECK(validity_check(vec({-2, -1}), g, vec({0})));
  CHECK_FALSE(validity_check(vec({-1, 2}), g, vec({0.1})));
  CHECK(validity_check(vec({-1, 2}), g, vec({0})));
  CHECK_THROWS_AS(validity_check(vec({0, 0}), g, vec({0})), std::invalid_argument);
}

TEST_CASE("descent outcomes are valid under every admissible gradient error") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int descents = 0;
  for (int t = 0; t < 1000; ++t) {
    const int k = 2 + t % 3, n = 2 + t % 5;
    Vector common(n);
    for (int i = 0; i < n; ++i) common[i] = normal(rng);
    Matrix exact(n, k), noisy(n, k);
    Vector eps(k);
    for (int j = 0; j < k; ++j) {
      Vector dir(n);
      for (int i = 0; i < n; ++i) dir[i] = normal(rng);
      exact.col(j) = common + 0.7 * dir;
      eps[j] = 0.4 * u(rng);
      Vector e(n);
      for (int i = 0; i < n; ++i) e[i] = normal(rng);
      noisy.col(j) = exact.col(j) + eps[j] * u(rng) * e / e.norm();
    }
    const auto out = inexact_descent(noisy, eps);
    CHECK((out.status == DescentStatus::Descent) == (out.direction.norm() > 0.0));
    if (out.status != DescentStatus::Descent) continue;
    ++descents;
    CHECK(validity_check(out.direction, noisy, eps));
    for (int j = 0; j < k; ++j) CHECK(-exact.col(j).dot(out.direction) >= -1e-9);
  }
  CHECK(descents > 300);
}

TEST_CASE("round budget exhaustion is stationary") {
  const Matrix g = cols({vec({1, 0}), vec({0.1, 0.4})});
  const auto out = inexact_descent(g, vec({0.05, 0.05}), 0);
  CHECK(out.status == DescentStatus::StationaryDetected);
  CHECK(out.direction == Vector::Zero(2));
  CHECK(inexact_descent(g, vec({0.05, 0.05}), 50).status == DescentStatus::Descent);
}
