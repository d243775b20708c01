#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace mocover {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned box given by its center and per-axis half-widths.
class HyperBox {
 public:
  HyperBox(Vector center, Vector radius);

  static HyperBox from_bounds(const Vector& lower, const Vector& upper);

  Eigen::Index dim() const { return center_.size(); }
  const Vector& center() const { return center_; }
  const Vector& radius() const { return radius_; }
  Vector lower() const { return center_ - radius_; }
  Vector upper() const { return center_ + radius_; }

  /// Closed containment.
  bool contains(const Vector& x) const;

  /// Longest edge.
  double diameter() const { return 2.0 * radius_.maxCoeff(); }

  double volume() const;

 private:
  Vector center_;
  Vector radius_;
};

/// Tensor-product grid of points_per_axis^n points strictly inside the box,
/// coordinates center +- radius * (2j + 1 - m) / m.
std::vector<Vector> sample_points(const HyperBox& box, int points_per_axis);

using CellIndex = std::vector<std::int64_t>;
using CellKey = std::uint64_t;

/// A set of occupied cells of the dyadic grid obtained from `root` after
/// `depth` cyclic bisections (axis s mod n is split at step s).
///
/// Cells are stored as packed integer keys, sorted ascending, so iteration
/// order is deterministic and point location is a binary search. The key
/// concatenates the per-axis indices with axis 0 in the most significant bits,
/// which limits depth to 62.
class BoxCollection {
 public:
  static constexpr int kMaxDepth = 62;

  /// Depth 0: the single cell covering the root.
  explicit BoxCollection(HyperBox root);

  BoxCollection(HyperBox root, int depth, const std::vector<CellIndex>& cells);

  const HyperBox& root() const { return root_; }
  int depth() const { return depth_; }
  Eigen::Index dim() const { return root_.dim(); }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  /// Axis bisected when going from `depth` to `depth + 1`.
  int split_axis(int depth) const { return depth % static_cast<int>(dim()); }

  /// Number of bisections axis `axis` has received at the current depth.
  int splits_on_axis(int axis) const;
  std::int64_t cells_per_axis(int axis) const { return std::int64_t{1} << splits_on_axis(axis); }

  /// Edge lengths of every cell at this depth.
  Vector cell_width() const;
  double diameter() const { return cell_width().maxCoeff(); }
  double measure() const;

  const std::vector<CellKey>& keys() const { return keys_; }
  CellKey key(std::size_t i) const { return keys_[i]; }
  CellIndex cell_index(std::size_t i) const { return decode(keys_[i]); }

  Vector cell_lower(std::size_t i) const;
  Vector cell_upper(std::size_t i) const;
  Vector cell_center(std::size_t i) const;
  HyperBox cell_box(std::size_t i) const;

  /// Key of the grid cell containing x, whether or not it is occupied.
  /// Cells are half-open except at the upper face of the root.
  std::optional<CellKey> grid_key(const Vector& x) const;

  /// Position of the occupied cell containing x.
  std::optional<std::size_t> locate(const Vector& x) const;

  std::optional<std::size_t> find(CellKey key) const;
  bool contains_key(CellKey key) const { return find(key).has_value(); }

  BoxCollection subdivide() const;

  /// Collection at the same depth restricted to `keys` (need not be sorted,
  /// duplicates allowed; keys must be valid grid keys at this depth).
  BoxCollection with_keys(std::vector<CellKey> keys) const;

  CellKey encode(const CellIndex& index) const;
  CellIndex decode(CellKey key) const;

 private:
  BoxCollection(HyperBox root, int depth, std::vector<CellKey> keys);

  HyperBox root_;
  int depth_ = 0;
  std::vector<CellKey> keys_;
};

/// True iff every cell of `inner` is a cell of `outer` (same root and depth).
bool is_subcovering(const BoxCollection& inner, const BoxCollection& outer);

}  // namespace mocover
