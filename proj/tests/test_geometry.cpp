#include <doctest.h>

#include <random>

#include "mocover/geometry.hpp"

using namespace mocover;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

BoxCollection subdivide_n(BoxCollection c, int steps) {
  for (int s = 0; s < steps; ++s) c = c.subdivide();
  return c;
}

}  // namespace

TEST_CASE("box rejects non-positive radius") {
  CHECK_THROWS_AS(HyperBox(vec({0, 0}), vec({1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(HyperBox(vec({0}), vec({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(HyperBox::from_bounds(vec({1}), vec({1})), std::invalid_argument);
}

TEST_CASE("box bounds and containment") {
  const HyperBox b = HyperBox::from_bounds(vec({-1, 2}), vec({3, 4}));
  CHECK(b.center() == vec({1, 3}));
  CHECK(b.radius() == vec({2, 1}));
  CHECK(b.diameter() == 4.0);
  CHECK(b.volume() == 8.0);
  CHECK(b.contains(vec({3, 4})));
  CHECK_FALSE(b.contains(vec({3.0001, 4})));
}

TEST_CASE("first subdivision of the unit square splits axis 0") {
  const BoxCollection c = BoxCollection(HyperBox(vec({0, 0}), vec({1, 1}))).subdivide();
  REQUIRE(c.size() == 2);
  CHECK(c.cell_lower(0) == vec({-1, -1}));
  CHECK(c.cell_upper(0) == vec({0, 1}));
  CHECK(c.cell_lower(1) == vec({0, -1}));
  CHECK(c.cell_upper(1) == vec({1, 1}));
  CHECK(c.cell_center(0) == vec({-0.5, 0}));
  CHECK(c.cell_box(0).radius() == vec({0.5, 1}));
}

TEST_CASE("second subdivision splits axis 1") {
  const BoxCollection c = subdivide_n(BoxCollection(HyperBox(vec({0, 0}), vec({1, 1}))), 2);
  CHECK(c.size() == 4);
  CHECK(c.cell_width() == vec({1, 1}));
  CHECK(c.split_axis(0) == 0);
  CHECK(c.split_axis(1) == 1);
  CHECK(c.split_axis(2) == 0);
}

TEST_CASE("diameter law") {
  SUBCASE("16 steps on [-2,2]^2") {
    const auto c = subdivide_n(BoxCollection(HyperBox::from_bounds(vec({-2, -2}), vec({2, 2}))), 16);
    CHECK(c.diameter() == 1.0 / 64.0);
    CHECK(c.size() == 65536u);
  }
  SUBCASE("25 steps on [0,40]^5") {
    const HyperBox root(Vector::Constant(5, 20.0), Vector::Constant(5, 20.0));
    // keep only the cells touching the lower corner so the collection stays small
    BoxCollection c(root);
    for (int s = 0; s < 25; ++s) {
      c = c.subdivide();
      std::vector<CellKey> keep;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const CellIndex idx = c.cell_index(i);
        bool corner = true;
        for (auto v : idx) corner = corner && v == 0;
        if (corner) keep.push_back(c.key(i));
      }
      c = c.with_keys(keep);
    }
    CHECK(c.size() == 1u);
    CHECK(c.cell_width() == Vector::Constant(5, 1.25));
    CHECK(c.diameter() == 1.25);
  }
  SUBCASE("n * r steps halve every edge r times") {
    for (int n = 1; n <= 3; ++n) {
      for (int r = 1; r <= 3; ++r) {
        const HyperBox root(Vector::Zero(n), Vector::Constant(n, 1.5));
        const auto c = subdivide_n(BoxCollection(root), n * r);
        CHECK(c.cell_width() == Vector::Constant(n, 3.0 / (1 << r)));
      }
    }
  }
}

TEST_CASE("sample points") {
  const HyperBox unit(vec({0, 0}), vec({1, 1}));
  const auto four = sample_points(unit, 2);
  REQUIRE(four.size() == 4u);
  CHECK(four[0] == vec({-0.5, -0.5}));
  CHECK(four[1] == vec({-0.5, 0.5}));
  CHECK(four[2] == vec({0.5, -0.5}));
  CHECK(four[3] == vec({0.5, 0.5}));

  const auto one = sample_points(HyperBox(vec({3, -1}), vec({2, 5})), 1);
  REQUIRE(one.size() == 1u);
  CHECK(one[0] == vec({3, -1}));

  const HyperBox box(vec({1, 2}), vec({0.5, 2}));
  const auto nine = sample_points(box, 3);
  REQUIRE(nine.size() == 9u);
  Vector mean = Vector::Zero(2);
  for (const auto& p : nine) {
    CHECK((p - box.lower()).minCoeff() > 0.0);
    CHECK((box.upper() - p).minCoeff() > 0.0);
    // mirror image through the center is also a sample point
    const Vector mirror = 2.0 * box.center() - p;
    bool found = false;
    for (const auto& q : nine) found = found || (q - mirror).norm() < 1e-12;
    CHECK(found);
    mean += p;
  }
  CHECK((mean / 9.0 - box.center()).norm() < 1e-12);
}

TEST_CASE("locate uses half-open cells with a closed root") {
  const BoxCollection c = subdivide_n(BoxCollection(HyperBox::from_bounds(vec({0, 0}), vec({4, 4}))), 4);
  CHECK(c.cell_index(*c.locate(vec({1, 1}))) == CellIndex{1, 1});
  CHECK(c.cell_index(*c.locate(vec({0, 0}))) == CellIndex{0, 0});
  CHECK(c.cell_index(*c.locate(vec({4, 4}))) == CellIndex{3, 3});
  CHECK(c.cell_index(*c.locate(vec({3.999, 2}))) == CellIndex{3, 2});
  CHECK_FALSE(c.locate(vec({4.0001, 1})).has_value());
  CHECK_FALSE(c.locate(vec({-1e-9, 1})).has_value());
  CHECK_FALSE(c.grid_key(vec({5, 5})).has_value());
}

TEST_CASE("locate only finds occupied cells") {
  const BoxCollection full = subdivide_n(BoxCollection(HyperBox::from_bounds(vec({0, 0}), vec({4, 4}))), 2);
  const BoxCollection some = full.with_keys({full.key(0), full.key(3), full.key(3)});
  CHECK(some.size() == 2u);
  CHECK(some.locate(vec({0.5, 0.5})).has_value());
  CHECK_FALSE(some.locate(vec({0.5, 3.5})).has_value());
  CHECK(some.grid_key(vec({0.5, 3.5})) == full.key(1));
}

TEST_CASE("random coverings: disjointness, nesting and round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const HyperBox root = HyperBox::from_bounds(Vector::Constant(n, -1.3), Vector::Constant(n, 2.1));
    BoxCollection c(root);
    for (int depth = 1; depth <= 6; ++depth) {
      const BoxCollection parent = c;
      c = c.subdivide();
      REQUIRE(c.size() == 2 * parent.size());
      // children pair up exactly onto their parent
      for (std::size_t i = 0; i < parent.size(); ++i) {
        const auto lo = c.locate(parent.cell_lower(i) + 1e-9 * Vector::Ones(n));
        const auto hi = c.locate(parent.cell_upper(i) - 1e-9 * Vector::Ones(n));
        REQUIRE(lo);
        REQUIRE(hi);
        CHECK(c.cell_lower(*lo) == parent.cell_lower(i));
        CHECK(c.cell_upper(*hi) == parent.cell_upper(i));
        const int axis = c.split_axis(depth - 1);
        CHECK(c.cell_upper(*lo)[axis] == c.cell_lower(*hi)[axis]);
      }
      std::vector<CellKey> keep;
      for (auto k : c.keys())
        if (u(rng) < 0.6) keep.push_back(k);
      if (keep.empty()) keep.push_back(c.key(0));
      c = c.with_keys(keep);

      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          const Vector lo = c.cell_lower(i).cwiseMax(c.cell_lower(j));
          const Vector hi = c.cell_upper(i).cwiseMin(c.cell_upper(j));
          CHECK((hi - lo).minCoeff() <= 0.0);
        }
        for (const auto& x : sample_points(c.cell_box(i), 3)) CHECK(c.locate(x) == i);
        CHECK(c.encode(c.cell_index(i)) == c.key(i));
      }
    }
  }
}

TEST_CASE("subcovering") {
  const BoxCollection full = subdivide_n(BoxCollection(HyperBox::from_bounds(vec({0, 0}), vec({1, 1}))), 3);
  const BoxCollection part = full.with_keys({full.key(1), full.key(5)});
  CHECK(is_subcovering(part, full));
  CHECK_FALSE(is_subcovering(full, part));
  CHECK(is_subcovering(part, part));
  CHECK_FALSE(is_subcovering(part, full.subdivide()));
}

TEST_CASE("explicit cells and depth limits") {
  const HyperBox root = HyperBox::from_bounds(vec({0, 0}), vec({8, 8}));
  const BoxCollection c(root, 3, std::vector<CellIndex>{{3, 1}, {0, 0}});
  CHECK(c.size() == 2u);
  CHECK(c.cell_index(0) == CellIndex{0, 0});
  CHECK(c.cell_center(1) == vec({7, 6}));  // widths (2, 4)
  CHECK_THROWS_AS(BoxCollection(root, 3, std::vector<CellIndex>{{4, 0}}), std::invalid_argument);
  CHECK_THROWS(BoxCollection(root, 63, std::vector<CellIndex>{}));
}
