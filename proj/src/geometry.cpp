#include "mocover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mocover {

HyperBox::HyperBox(Vector center, Vector radius)
    : center_(std::move(center)), radius_(std::move(radius)) {
  if (center_.size() == 0 || center_.size() != radius_.size()) {
    throw std::invalid_argument("HyperBox: center and radius must be non-empty and of equal length");
  }
  for (Eigen::Index d = 0; d < radius_.size(); ++d) {
    if (!(radius_[d] > 0.0) || !std::isfinite(radius_[d]) || !std::isfinite(center_[d])) {
      throw std::invalid_argument("HyperBox: radius must be positive and finite on every axis");
    }
  }
}

HyperBox HyperBox::from_bounds(const Vector& lower, const Vector& upper) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("HyperBox: lower and upper bounds differ in length");
  }
  return HyperBox(0.5 * (lower + upper), 0.5 * (upper - lower));
}

bool HyperBox::contains(const Vector& x) const {
  if (x.size() != dim()) return false;
  return ((x - center_).cwiseAbs().array() <= radius_.array()).all();
}

double HyperBox::volume() const { return (2.0 * radius_).prod(); }

std::vector<Vector> sample_points(const HyperBox& box, int points_per_axis) {
  if (points_per_axis < 1) {
    throw std::invalid_argument("sample_points: points_per_axis must be at least 1");
  }
  const auto n = box.dim();
  const int m = points_per_axis;
  std::size_t count = 1;
  for (Eigen::Index d = 0; d < n; ++d) count *= static_cast<std::size_t>(m);

  std::vector<Vector> points;
  points.reserve(count);
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  for (std::size_t p = 0; p < count; ++p) {
    Vector x(n);
    for (Eigen::Index d = 0; d < n; ++d) {
      const double offset = static_cast<double>(2 * digit[d] + 1 - m) / m;
      x[d] = box.center()[d] + box.radius()[d] * offset;
    }
    points.push_back(std::move(x));
    // odometer, last axis fastest
    for (Eigen::Index d = n - 1; d >= 0; --d) {
      if (++digit[d] < m) break;
      digit[d] = 0;
    }
  }
  return points;
}

// ---------------------------------------------------------------------------

BoxCollection::BoxCollection(HyperBox root) : root_(std::move(root)), depth_(0), keys_{0} {}

BoxCollection::BoxCollection(HyperBox root, int depth, std::vector<CellKey> keys)
    : root_(std::move(root)), depth_(depth), keys_(std::move(keys)) {}

BoxCollection::BoxCollection(HyperBox root, int depth, const std::vector<CellIndex>& cells)
    : root_(std::move(root)), depth_(depth) {
  if (depth < 0 || depth > kMaxDepth) {
    throw std::invalid_argument("BoxCollection: depth out of range [0, 62]");
  }
  keys_.reserve(cells.size());
  for (const auto& c : cells) keys_.push_back(encode(c));
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

int BoxCollection::splits_on_axis(int axis) const {
  const int n = static_cast<int>(dim());
  return depth_ / n + (axis < depth_ % n ? 1 : 0);
}

Vector BoxCollection::cell_width() const {
  Vector w = 2.0 * root_.radius();
  for (Eigen::Index d = 0; d < w.size(); ++d) {
    w[d] = std::ldexp(w[d], -splits_on_axis(static_cast<int>(d)));
  }
  return w;
}

double BoxCollection::measure() const {
  return static_cast<double>(keys_.size()) * cell_width().prod();
}

CellKey BoxCollection::encode(const CellIndex& index) const {
  const int n = static_cast<int>(dim());
  if (static_cast<int>(index.size()) != n) {
    throw std::invalid_argument("BoxCollection: cell index has wrong dimension");
  }
  CellKey key = 0;
  for (int d = 0; d < n; ++d) {
    const int bits = splits_on_axis(d);
    if (index[d] < 0 || index[d] >= (std::int64_t{1} << bits)) {
      throw std::invalid_argument("BoxCollection: cell index " + std::to_string(index[d]) +
                                  " outside the grid on axis " + std::to_string(d));
    }
    key = (key << bits) | static_cast<CellKey>(index[d]);
  }
  return key;
}

CellIndex BoxCollection::decode(CellKey key) const {
  const int n = static_cast<int>(dim());
  CellIndex index(static_cast<std::size_t>(n));
  for (int d = n - 1; d >= 0; --d) {
    const int bits = splits_on_axis(d);
    index[d] = static_cast<std::int64_t>(key & ((CellKey{1} << bits) - 1));
    key >>= bits;
  }
  return index;
}

Vector BoxCollection::cell_lower(std::size_t i) const {
  const CellIndex idx = cell_index(i);
  const Vector w = cell_width();
  Vector lo = root_.lower();
  for (Eigen::Index d = 0; d < lo.size(); ++d) lo[d] += static_cast<double>(idx[d]) * w[d];
  return lo;
}

Vector BoxCollection::cell_upper(std::size_t i) const {
  const CellIndex idx = cell_index(i);
  const Vector w = cell_width();
  Vector up = root_.lower();
  for (Eigen::Index d = 0; d < up.size(); ++d) up[d] += static_cast<double>(idx[d] + 1) * w[d];
  return up;
}

Vector BoxCollection::cell_center(std::size_t i) const {
  const CellIndex idx = cell_index(i);
  const Vector w = cell_width();
  Vector c = root_.lower();
  for (Eigen::Index d = 0; d < c.size(); ++d) c[d] += (static_cast<double>(idx[d]) + 0.5) * w[d];
  return c;
}

HyperBox BoxCollection::cell_box(std::size_t i) const {
  return HyperBox(cell_center(i), 0.5 * cell_width());
}

std::optional<CellKey> BoxCollection::grid_key(const Vector& x) const {
  if (x.size() != dim() || !root_.contains(x)) return std::nullopt;
  const Vector lo = root_.lower();
  const Vector w = cell_width();
  CellIndex idx(static_cast<std::size_t>(dim()));
  for (Eigen::Index d = 0; d < dim(); ++d) {
    const std::int64_t count = cells_per_axis(static_cast<int>(d));
    auto j = static_cast<std::int64_t>(std::floor((x[d] - lo[d]) / w[d]));
    j = std::clamp<std::int64_t>(j, 0, count - 1);
    // make membership agree with the lo + j * w face arithmetic
    while (j > 0 && x[d] < lo[d] + static_cast<double>(j) * w[d]) --j;
    while (j + 1 < count && x[d] >= lo[d] + static_cast<double>(j + 1) * w[d]) ++j;
    idx[d] = j;
  }
  return encode(idx);
}

std::optional<std::size_t> BoxCollection::find(CellKey key) const {
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

std::optional<std::size_t> BoxCollection::locate(const Vector& x) const {
  const auto key = grid_key(x);
  if (!key) return std::nullopt;
  return find(*key);
}

BoxCollection BoxCollection::subdivide() const {
  if (depth_ >= kMaxDepth) {
    throw std::length_error("BoxCollection: maximum depth reached");
  }
  const int axis = split_axis(depth_);
  BoxCollection child(root_, depth_ + 1, std::vector<CellKey>{});
  child.keys_.reserve(2 * keys_.size());
  for (const CellKey key : keys_) {
    CellIndex idx = decode(key);
    idx[axis] *= 2;
    child.keys_.push_back(child.encode(idx));
    idx[axis] += 1;
    child.keys_.push_back(child.encode(idx));
  }
  std::sort(child.keys_.begin(), child.keys_.end());
  return child;
}

BoxCollection BoxCollection::with_keys(std::vector<CellKey> keys) const {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  const int bits = depth_;
  if (!keys.empty() && bits < 64 && (keys.back() >> bits) != 0) {
    throw std::invalid_argument("BoxCollection: key outside the grid");
  }
  return BoxCollection(root_, depth_, std::move(keys));
}

bool is_subcovering(const BoxCollection& inner, const BoxCollection& outer) {
  if (inner.depth() != outer.depth() || inner.dim() != outer.dim()) return false;
  return std::includes(outer.keys().begin(), outer.keys().end(), inner.keys().begin(),
                       inner.keys().end());
}

}  // namespace mocover
