#include "dimspect/covers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dimspect {

namespace {

constexpr double kDiamSlack = 1e-12;

void check_exponent(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("cover exponent must be >= 0");
}

// Admissible levels of a frame for the band [lo, hi].
std::pair<int, int> level_window(const DyadicFrame& frame, const ScaleRange& range,
                                 const ScaleBounds& b) {
  int top = 0;
  while (frame.diameter(top) > b.hi * (1.0 + kDiamSlack)) {
    if (++top > 4 * kMaxDepth) break;
  }
  int bottom = top;
  while (frame.diameter(bottom + 1) >= b.lo * (1.0 - kDiamSlack)) {
    ++bottom;
    if (bottom > kMaxDepth) break;
  }
  if (bottom > kMaxDepth) {
    if (range.theta().value() > 0.0) {
      throw ScaleRangeTooDeep("dyadic cover needs more than " + std::to_string(kMaxDepth) +
                              " levels");
    }
    bottom = kMaxDepth;
  }
  if (top > bottom || frame.diameter(top) < b.lo * (1.0 - kDiamSlack)) {
    throw RangeTooNarrow("no dyadic diameter lies in the admissible band");
  }
  return {top, bottom};
}

DyadicFrame frame_for(const PointCloud& points, const ScaleRange& range, DyadicAnchor anchor) {
  if (anchor == DyadicAnchor::unit_box) return unit_box_frame(points);
  DyadicFrame f;
  f.origin = points.bbox().min;
  f.dim = points.dimension();
  f.side0 = range.delta() / std::sqrt(static_cast<double>(f.dim));
  f.clamp = false;
  return f;
}

DyadicLevels build_levels(const PointCloud& points, const ScaleRange& range,
                          DyadicAnchor anchor) {
  const auto b = search_bounds(range);
  const auto frame = frame_for(points, range, anchor);
  const auto [top, bottom] = level_window(frame, range, b);
  return DyadicLevels(points, frame, top, bottom);
}

}  // namespace

double CoverSet::diameter() const noexcept {
  return kind == SetKind::interval ? side : side * std::sqrt(static_cast<double>(dim));
}

bool CoverSet::contains(const Point& x) const noexcept {
  const double slack = side * kDiamSlack;
  for (int k = 0; k < dim; ++k) {
    if (x[k] < lower[k] - slack || x[k] > lower[k] + side + slack) return false;
  }
  return true;
}

CoverSet make_cover_set(int dim, const Point& lower, double side) {
  return {dim == 1 ? SetKind::interval : SetKind::cube, dim, lower, side};
}

RestrictedCover::RestrictedCover(std::vector<CoverSet> sets, ScaleRange range, double s)
    : sets_(std::move(sets)), range_(range), s_(s), cost_(0.0) {
  check_exponent(s);
  for (const auto& c : sets_) {
    if (!(c.side > 0.0)) throw InvalidArgument("cover sets need positive diameter");
  }
  cost_ = cost_at(s);
}

double RestrictedCover::cost_at(double t) const noexcept {
  // right to left, the order the interval DP accumulates in
  double acc = 0.0;
  for (auto it = sets_.rbegin(); it != sets_.rend(); ++it) acc = std::pow(it->diameter(), t) + acc;
  return acc;
}

bool RestrictedCover::covers(const PointCloud& points) const {
  for (const auto& p : points.points()) {
    bool hit = false;
    for (const auto& c : sets_) {
      if (c.contains(p)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

bool RestrictedCover::admissible() const {
  const auto b = scale_bounds(range_);
  for (const auto& c : sets_) {
    const double d = c.diameter();
    if (d < b.lo * (1.0 - kDiamSlack) || d > b.hi * (1.0 + kDiamSlack)) return false;
  }
  return true;
}

ScaleBounds search_bounds(const ScaleRange& range) {
  auto b = scale_bounds(range);
  if (range.theta().value() == 0.0) b.lo = kMinScale;
  return b;
}

std::vector<double> geometric_menu(double lo, double hi, int count) {
  if (count < 2) throw InvalidArgument("scale menu needs at least two entries");
  if (!(lo > 0.0 && lo <= hi)) throw InvalidArgument("scale menu needs 0 < lo <= hi");
  if (hi <= lo * (1.0 + kDiamSlack)) return {hi};
  std::vector<double> menu(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) menu[i] = std::exp(a + (b - a) * i / (count - 1));
  menu.front() = lo;
  menu.back() = hi;
  return menu;
}

double optimal_cost_1d(std::span<const double> xs, std::span<const double> menu, double s) {
  const std::size_t n = xs.size();
  const std::size_t k = menu.size();
  std::vector<double> w(k);
  for (std::size_t m = 0; m < k; ++m) w[m] = std::pow(menu[m], s);
  std::vector<double> cost(n + 1, 0.0);
  std::vector<std::size_t> next(k, n);
  for (std::size_t i = n; i-- > 0;) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < k; ++m) {
      const double lim = xs[i] + menu[m];
      std::size_t j = next[m];
      while (j - 1 > i && xs[j - 1] > lim) --j;
      while (j < n && xs[j] <= lim) ++j;
      next[m] = j;
      best = std::min(best, w[m] + cost[j]);
    }
    cost[i] = best;
  }
  return cost[0];
}

RestrictedCover optimal_cover_1d(const PointCloud& points, const ScaleRange& range, double s,
                                 int menu_size) {
  if (points.dimension() != 1) throw InvalidArgument("interval covers need 1-D points");
  check_exponent(s);
  const auto b = search_bounds(range);
  const auto menu = geometric_menu(b.lo, b.hi, menu_size);
  const auto pts = points.points();
  const std::size_t n = pts.size();
  const std::size_t k = menu.size();
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = pts[i][0];
  std::vector<double> w(k);
  for (std::size_t m = 0; m < k; ++m) w[m] = std::pow(menu[m], s);

  std::vector<double> cost(n + 1, 0.0);
  std::vector<std::size_t> count(n + 1, 0), jump(n, n), pick(n, 0);
  std::vector<std::size_t> next(k, n);
  for (std::size_t i = n; i-- > 0;) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_count = 0;
    for (std::size_t m = 0; m < k; ++m) {
      const double lim = xs[i] + menu[m];
      std::size_t j = next[m];
      while (j - 1 > i && xs[j - 1] > lim) --j;
      while (j < n && xs[j] <= lim) ++j;
      next[m] = j;
      const double c = w[m] + cost[j];
      const std::size_t cnt = count[j] + 1;
      // menu is ascending, so <= on the count prefers the larger diameter
      if (c < best || (c == best && cnt <= best_count)) {
        best = c;
        best_count = cnt;
        jump[i] = j;
        pick[i] = m;
      }
    }
    cost[i] = best;
    count[i] = best_count;
  }
  std::vector<CoverSet> sets;
  for (std::size_t i = 0; i < n; i = jump[i]) {
    sets.push_back(make_cover_set(1, {xs[i], 0.0, 0.0}, menu[pick[i]]));
  }
  return RestrictedCover(std::move(sets), range, s);
}

DyadicTree::DyadicTree(const PointCloud& points, const ScaleRange& range, DyadicAnchor anchor)
    : range_(range), levels_(build_levels(points, range, anchor)) {}

double dyadic_cost(const DyadicLevels& levels, double s, Exec exec) {
  check_exponent(s);
  const int top = levels.top();
  const int bottom = levels.bottom();
  const auto& frame = levels.frame();
  std::vector<double> below(levels.keys(bottom).size(), std::pow(frame.diameter(bottom), s));
  for (int lv = bottom - 1; lv >= top; --lv) {
    const auto begin = levels.child_begin(lv);
    const double own = std::pow(frame.diameter(lv), s);
    const auto count = static_cast<std::ptrdiff_t>(levels.keys(lv).size());
    std::vector<double> here(static_cast<std::size_t>(count));
    auto body = [&](std::ptrdiff_t i) {
      double sum = 0.0;
      for (auto c = begin[i]; c < begin[i + 1]; ++c) sum += below[c];
      here[i] = std::min(own, sum);
    };
    if (exec == Exec::parallel && count > 2048) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
    } else {
      for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
    }
    below = std::move(here);
  }
  double total = 0.0;
  for (double c : below) total += c;
  return total;
}

double DyadicTree::cost(double s, Exec exec) const { return dyadic_cost(levels_, s, exec); }

RestrictedCover DyadicTree::extract(double s) const {
  check_exponent(s);
  const int top = levels_.top();
  const int bottom = levels_.bottom();
  const auto& frame = levels_.frame();
  const auto depth = static_cast<std::size_t>(levels_.depth_count());
  std::vector<std::vector<double>> cost(depth);
  std::vector<std::vector<char>> keep(depth);
  cost[depth - 1].assign(levels_.keys(bottom).size(), std::pow(frame.diameter(bottom), s));
  keep[depth - 1].assign(levels_.keys(bottom).size(), 1);
  for (int lv = bottom - 1; lv >= top; --lv) {
    const auto li = static_cast<std::size_t>(lv - top);
    const auto begin = levels_.child_begin(lv);
    const double own = std::pow(frame.diameter(lv), s);
    const auto count = levels_.keys(lv).size();
    cost[li].resize(count);
    keep[li].resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      double sum = 0.0;
      for (auto c = begin[i]; c < begin[i + 1]; ++c) sum += cost[li + 1][c];
      // equal cost: one own cube is never more sets than its children
      keep[li][i] = own <= sum;
      cost[li][i] = std::min(own, sum);
    }
  }
  std::vector<CoverSet> sets;
  struct Item {
    int level;
    std::uint32_t index;
  };
  std::vector<Item> stack;
  const auto roots = levels_.keys(top).size();
  for (std::size_t r = roots; r-- > 0;) stack.push_back({top, static_cast<std::uint32_t>(r)});
  while (!stack.empty()) {
    const auto it = stack.back();
    stack.pop_back();
    const auto li = static_cast<std::size_t>(it.level - top);
    if (keep[li][it.index]) {
      const auto& key = levels_.keys(it.level)[it.index];
      sets.push_back(make_cover_set(frame.dim, frame.corner(key, it.level), frame.side(it.level)));
      continue;
    }
    const auto begin = levels_.child_begin(it.level);
    for (auto c = begin[it.index + 1]; c-- > begin[it.index];) stack.push_back({it.level + 1, c});
  }
  return RestrictedCover(std::move(sets), range_, s);
}

RestrictedCover optimal_cover_dyadic(const PointCloud& points, const ScaleRange& range, double s,
                                     DyadicAnchor anchor) {
  if (s > points.dimension()) throw InvalidArgument("dyadic cover exponent must be <= n");
  return DyadicTree(points, range, anchor).extract(s);
}

double refine_constant(int n) {
  return std::pow(4.0, n) * std::pow(static_cast<double>(n), 0.5 * n);
}

RestrictedCover refine_cover(const RestrictedCover& cover, Theta phi, double new_delta) {
  if (!(cover.range().theta() < phi)) throw InvalidArgument("refine_cover needs phi > theta");
  const ScaleRange target(new_delta, phi);
  const auto b = scale_bounds(target);
  std::vector<CoverSet> out;
  for (const auto& c : cover.sets()) {
    const double d = c.diameter();
    const double root_n = c.diameter() / c.side;
    if (d > b.hi * (1.0 + kDiamSlack)) {
      const double piece = b.hi / root_n;
      const auto per_axis = static_cast<long long>(std::max(1.0, std::ceil(c.side / piece - 1e-9)));
      long long total = 1;
      for (int k = 0; k < c.dim; ++k) total *= per_axis;
      for (long long idx = 0; idx < total; ++idx) {
        Point lower = c.lower;
        long long rest = idx;
        for (int k = 0; k < c.dim; ++k) {
          lower[k] += static_cast<double>(rest % per_axis) * piece;
          rest /= per_axis;
        }
        out.push_back({c.kind, c.dim, lower, piece});
      }
    } else if (d < b.lo * (1.0 - kDiamSlack)) {
      const double grown = b.lo / root_n;
      Point lower = c.lower;
      for (int k = 0; k < c.dim; ++k) lower[k] += 0.5 * (c.side - grown);
      out.push_back({c.kind, c.dim, lower, grown});
    } else {
      out.push_back(c);
    }
  }
  return RestrictedCover(std::move(out), target, cover.s());
}

long long fp_witness_count(double p, double delta, Theta theta, double s) {
  if (!(p > 0.0)) throw InvalidArgument("sequence exponent p must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  const double t = theta.value();
  return static_cast<long long>(std::ceil(std::pow(delta, -(s + t * (1.0 - s)) / (p + 1.0))));
}

RestrictedCover fp_witness_cover(double p, double delta, Theta theta, double s) {
  if (!(theta.value() > 0.0)) throw InvalidArgument("witness cover needs theta > 0");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("witness cover needs 0 < s < 1");
  const long long big_m = fp_witness_count(p, delta, theta, s);
  const double coarse = std::pow(delta, theta.value());
  std::vector<CoverSet> sets;
  sets.reserve(static_cast<std::size_t>(big_m) + 8);
  for (long long k = 1; k <= big_m; ++k) {
    const double x = std::pow(static_cast<double>(k), -p);
    sets.push_back(make_cover_set(1, {x - 0.5 * delta, 0.0, 0.0}, delta));
  }
  const double tail = std::pow(static_cast<double>(big_m), -p);
  const auto tiles = static_cast<long long>(std::ceil(tail / coarse));
  for (long long i = 0; i < tiles; ++i) {
    sets.push_back(make_cover_set(1, {static_cast<double>(i) * coarse, 0.0, 0.0}, coarse));
  }
  return RestrictedCover(std::move(sets), ScaleRange(coarse, theta), s);
}

}  // namespace dimspect
