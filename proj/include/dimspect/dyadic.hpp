#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dimspect/core.hpp"

namespace dimspect {

/// Integer cell coordinates of a dyadic cube at some level.
using CellKey = std::array<std::uint64_t, 3>;

/// Z-order comparison on the first `dim` coordinates. Children of one
/// parent are contiguous under this order, and parents stay sorted.
bool morton_less(const CellKey& a, const CellKey& b, int dim) noexcept;

/// Affine frame for a dyadic hierarchy: level j cubes have side side0 * 2^-j
/// and the lattice starts at `origin`. With `clamp`, coordinates are assumed
/// to lie in [origin, origin + side0] and the far face is folded into the
/// last cell (the unit-box convention).
struct DyadicFrame {
  Point origin{};
  double side0 = 1.0;
  int dim = 1;
  bool clamp = false;

  [[nodiscard]] double side(int level) const noexcept;
  [[nodiscard]] double diameter(int level) const noexcept;
  [[nodiscard]] CellKey cell(const Point& x, int level) const;
  [[nodiscard]] Point corner(const CellKey& key, int level) const noexcept;
};

/// Frame of the bounding box scaled to a unit cube (zero extent maps to scale 1).
DyadicFrame unit_box_frame(const PointCloud& points);

/// Occupied cells of a point cloud per level, from `top` down to `bottom`.
/// Stored top first; each non-bottom level records CSR child ranges into the
/// next level. Bottom cells remember the lowest index of a point they hold,
/// which is the lexicographically least point since clouds are sorted.
class DyadicLevels {
 public:
  DyadicLevels(const PointCloud& points, const DyadicFrame& frame, int top, int bottom);

  [[nodiscard]] const DyadicFrame& frame() const noexcept { return frame_; }
  [[nodiscard]] int top() const noexcept { return top_; }
  [[nodiscard]] int bottom() const noexcept { return bottom_; }
  [[nodiscard]] int depth_count() const noexcept { return bottom_ - top_ + 1; }

  /// Cells at absolute level j.
  [[nodiscard]] std::span<const CellKey> keys(int level) const;
  /// child_begin(j)[i] .. child_begin(j)[i+1] index level j+1.
  [[nodiscard]] std::span<const std::uint32_t> child_begin(int level) const;
  [[nodiscard]] std::span<const std::uint32_t> representatives() const noexcept { return reps_; }
  [[nodiscard]] std::size_t node_count() const noexcept;

 private:
  DyadicFrame frame_;
  int top_;
  int bottom_;
  std::vector<std::vector<CellKey>> keys_;
  std::vector<std::vector<std::uint32_t>> child_begin_;
  std::vector<std::uint32_t> reps_;
};

}  // namespace dimspect
