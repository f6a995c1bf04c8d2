#include "dimspect/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dimspect {

namespace {

bool msb_less(std::uint64_t a, std::uint64_t b) noexcept { return a < b && a < (a ^ b); }

}  // namespace

bool morton_less(const CellKey& a, const CellKey& b, int dim) noexcept {
  int top = 0;
  std::uint64_t x = 0;
  for (int k = 0; k < dim; ++k) {
    const std::uint64_t y = a[k] ^ b[k];
    if (msb_less(x, y)) {
      top = k;
      x = y;
    }
  }
  return a[top] < b[top];
}

double DyadicFrame::side(int level) const noexcept { return std::ldexp(side0, -level); }

double DyadicFrame::diameter(int level) const noexcept {
  return side(level) * std::sqrt(static_cast<double>(dim));
}

CellKey DyadicFrame::cell(const Point& x, int level) const {
  CellKey key{0, 0, 0};
  const double cells = std::ldexp(1.0, level);
  for (int k = 0; k < dim; ++k) {
    double u = std::ldexp((x[k] - origin[k]) / side0, level);
    if (!(u >= 0.0)) u = 0.0;
    if (clamp && u >= cells) u = cells - 1.0;
    if (u >= 0x1p62) throw ScaleRangeTooDeep("dyadic cell index overflows at this depth");
    key[k] = static_cast<std::uint64_t>(std::floor(u));
  }
  return key;
}

Point DyadicFrame::corner(const CellKey& key, int level) const noexcept {
  Point p{};
  const double s = side(level);
  for (int k = 0; k < dim; ++k) p[k] = origin[k] + static_cast<double>(key[k]) * s;
  return p;
}

DyadicFrame unit_box_frame(const PointCloud& points) {
  DyadicFrame f;
  f.origin = points.bbox().min;
  const double e = points.bbox().extent(points.dimension());
  f.side0 = e > 0.0 ? e : 1.0;
  f.dim = points.dimension();
  f.clamp = true;
  return f;
}

DyadicLevels::DyadicLevels(const PointCloud& points, const DyadicFrame& frame, int top,
                           int bottom)
    : frame_(frame), top_(top), bottom_(bottom) {
  if (top < 0 || bottom < top) throw InvalidArgument("dyadic levels need 0 <= top <= bottom");
  if (bottom > kMaxDepth) {
    throw ScaleRangeTooDeep("dyadic construction needs more than " + std::to_string(kMaxDepth) +
                            " levels");
  }
  const auto pts = points.points();
  const int dim = frame.dim;
  std::vector<CellKey> raw(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) raw[i] = frame.cell(pts[i], bottom);
  std::vector<std::uint32_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (raw[a] != raw[b]) return morton_less(raw[a], raw[b], dim);
    return a < b;
  });

  keys_.resize(static_cast<std::size_t>(depth_count()));
  child_begin_.resize(static_cast<std::size_t>(depth_count()));
  auto& leaf = keys_.back();
  for (auto i : idx) {
    if (leaf.empty() || leaf.back() != raw[i]) {
      leaf.push_back(raw[i]);
      reps_.push_back(i);
    }
  }
  for (int lv = bottom - 1; lv >= top; --lv) {
    const auto& child = keys_[static_cast<std::size_t>(lv + 1 - top)];
    auto& mine = keys_[static_cast<std::size_t>(lv - top)];
    auto& begin = child_begin_[static_cast<std::size_t>(lv - top)];
    for (std::size_t c = 0; c < child.size(); ++c) {
      CellKey p{child[c][0] >> 1, child[c][1] >> 1, child[c][2] >> 1};
      if (mine.empty() || mine.back() != p) {
        mine.push_back(p);
        begin.push_back(static_cast<std::uint32_t>(c));
      }
    }
    begin.push_back(static_cast<std::uint32_t>(child.size()));
  }
}

std::span<const CellKey> DyadicLevels::keys(int level) const {
  if (level < top_ || level > bottom_) throw InvalidArgument("dyadic level out of range");
  return keys_[static_cast<std::size_t>(level - top_)];
}

std::span<const std::uint32_t> DyadicLevels::child_begin(int level) const {
  if (level < top_ || level >= bottom_) throw InvalidArgument("dyadic level has no children");
  return child_begin_[static_cast<std::size_t>(level - top_)];
}

std::size_t DyadicLevels::node_count() const noexcept {
  std::size_t n = 0;
  for (const auto& k : keys_) n += k.size();
  return n;
}

}  // namespace dimspect
