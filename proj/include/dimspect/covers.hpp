#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dimspect/core.hpp"
#include "dimspect/dyadic.hpp"
#include "dimspect/kernels.hpp"

namespace dimspect {

enum class SetKind { interval, cube };

/// Closed axis-aligned cube [lower, lower + side]^n (an interval when n = 1).
struct CoverSet {
  SetKind kind = SetKind::interval;
  int dim = 1;
  Point lower{};
  double side = 0.0;

  [[nodiscard]] double diameter() const noexcept;
  /// Closed containment with a 1e-12 relative slack on the side.
  [[nodiscard]] bool contains(const Point& x) const noexcept;
};

CoverSet make_cover_set(int dim, const Point& lower, double side);

/// A cover whose diameters should lie in the band of `range`, with its cost at
/// exponent s.
class RestrictedCover {
 public:
  RestrictedCover(std::vector<CoverSet> sets, ScaleRange range, double s);

  [[nodiscard]] std::span<const CoverSet> sets() const noexcept { return sets_; }
  [[nodiscard]] std::size_t size() const noexcept { return sets_.size(); }
  [[nodiscard]] const ScaleRange& range() const noexcept { return range_; }
  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] double cost() const noexcept { return cost_; }

  /// Sum of diameter^t over the sets.
  [[nodiscard]] double cost_at(double t) const noexcept;
  /// Every point lies in some set.
  [[nodiscard]] bool covers(const PointCloud& points) const;
  /// Every diameter lies in [lo (1 - 1e-12), hi (1 + 1e-12)].
  [[nodiscard]] bool admissible() const;

 private:
  std::vector<CoverSet> sets_;
  ScaleRange range_;
  double s_;
  double cost_;
};

/// Band actually searched by the optimizers: scale_bounds with the theta = 0
/// lower end raised to kMinScale.
ScaleBounds search_bounds(const ScaleRange& range);

/// `count` log-uniform diameters from lo to hi, endpoints exact. A degenerate
/// band (lo == hi) gives the single diameter hi.
std::vector<double> geometric_menu(double lo, double hi, int count);

/// Minimal cost of covering sorted coordinates `xs` by intervals with
/// diameters from `menu`. Intervals start at the first uncovered point.
double optimal_cost_1d(std::span<const double> xs, std::span<const double> menu, double s);

/// Minimal-cost interval cover of a 1-D cloud over a geometric menu of
/// `menu_size` diameters spanning the band. Ties go to fewer sets, then to
/// larger diameters.
RestrictedCover optimal_cover_1d(const PointCloud& points, const ScaleRange& range, double s,
                                 int menu_size = 16);

/// Optimal cost over the levels: each cube takes min{diameter^s, sum over
/// children}, and the top-level cubes are summed in order.
double dyadic_cost(const DyadicLevels& levels, double s, Exec exec = Exec::parallel);

/// unit_box: lattice of the bounding box scaled to the unit cube.
/// top_scale: lattice whose coarsest cubes have diameter exactly delta,
/// anchored at the lower bounding-box corner.
enum class DyadicAnchor { unit_box, top_scale };

/// Occupied dyadic cubes restricted to the admissible levels of a band.
class DyadicTree {
 public:
  DyadicTree(const PointCloud& points, const ScaleRange& range,
             DyadicAnchor anchor = DyadicAnchor::unit_box);

  /// Optimal cost: each cube takes min{diameter^s, sum over children}.
  [[nodiscard]] double cost(double s, Exec exec = Exec::parallel) const;
  [[nodiscard]] double cost_reference(double s) const { return cost(s, Exec::serial); }
  [[nodiscard]] RestrictedCover extract(double s) const;

  [[nodiscard]] const DyadicLevels& levels() const noexcept { return levels_; }
  [[nodiscard]] const ScaleRange& range() const noexcept { return range_; }
  [[nodiscard]] std::size_t node_count() const noexcept { return levels_.node_count(); }

 private:
  ScaleRange range_;
  DyadicLevels levels_;
};

RestrictedCover optimal_cover_dyadic(const PointCloud& points, const ScaleRange& range, double s,
                                     DyadicAnchor anchor = DyadicAnchor::unit_box);

/// 4^n n^(n/2).
double refine_constant(int n);

/// Moves a cover into the band of ScaleRange(new_delta, phi): sets already in
/// the band are kept, larger ones are cut into cubes of diameter new_delta,
/// smaller ones are grown to the new lower end about the same centre.
RestrictedCover refine_cover(const RestrictedCover& cover, Theta phi, double new_delta);

/// The explicit cover of {0} U {k^-p} with diameters in [delta, delta^theta]:
/// M intervals of length delta centred at k^-p and ceil(M^-p / delta^theta)
/// intervals of length delta^theta tiling [0, M^-p],
/// with M = ceil(delta^-(s + theta(1-s))/(p+1)).
RestrictedCover fp_witness_cover(double p, double delta, Theta theta, double s);

/// M from the cover above.
long long fp_witness_count(double p, double delta, Theta theta, double s);

}  // namespace dimspect
