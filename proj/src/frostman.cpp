#include "dimspect/frostman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>

namespace dimspect {

double DyadicCascade::max_cap_ratio() const {
  double worst = 0.0;
  for (const auto& lv : levels) {
    for (double m : lv.mass) worst = std::max(worst, m / lv.cap);
  }
  return worst;
}

double DyadicCascade::max_attainment_gap() const {
  if (levels.empty()) return 0.0;
  const std::size_t depth = levels.size();
  // parent pointers by walking the key shifts level to level
  std::vector<std::vector<std::size_t>> parent(depth);
  for (std::size_t li = depth - 1; li > 0; --li) {
    const auto& child = levels[li];
    const auto& up = levels[li - 1];
    parent[li].resize(child.keys.size());
    std::size_t p = 0;
    for (std::size_t i = 0; i < child.keys.size(); ++i) {
      const CellKey k{child.keys[i][0] >> 1, child.keys[i][1] >> 1, child.keys[i][2] >> 1};
      while (up.keys[p] != k) ++p;
      parent[li][i] = p;
    }
  }
  double worst = 0.0;
  const auto& base = levels.back();
  for (std::size_t leaf = 0; leaf < base.keys.size(); ++leaf) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t idx = leaf;
    for (std::size_t li = depth; li-- > 0;) {
      const auto& lv = levels[li];
      best = std::min(best, std::fabs(lv.mass[idx] - lv.cap) / lv.cap);
      if (li > 0) idx = parent[li][idx];
    }
    worst = std::max(worst, best);
  }
  return worst;
}

FrostmanMeasure build_frostman_measure(const PointCloud& points, double s, double delta,
                                       Theta theta, Exec exec) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("Frostman exponent s must be positive");
  if (!(theta.value() > 0.0)) throw InvalidArgument("the Frostman construction needs theta > 0");
  const auto band = scale_bounds(ScaleRange(delta, theta));
  const int dim = points.dimension();
  const double root_n = std::sqrt(static_cast<double>(dim));

  int m = static_cast<int>(std::floor(-std::log2(band.lo)));
  while (std::ldexp(1.0, -m) < band.lo) --m;
  while (std::ldexp(1.0, -m - 1) >= band.lo) ++m;
  int top = 0;
  while (std::ldexp(root_n, -top) > delta) ++top;
  if (top > m) {
    throw RangeTooNarrow("delta and delta^(1/theta) are too close for a dyadic ladder");
  }

  DyadicFrame frame;
  frame.origin = points.bbox().min;
  frame.side0 = std::max(1.0, points.bbox().extent(dim));
  frame.dim = dim;
  frame.clamp = true;
  const DyadicLevels tree(points, frame, top, m);

  const std::size_t depth = static_cast<std::size_t>(m - top + 1);
  DyadicCascade cascade;
  cascade.base_level = m;
  cascade.stop_level = top;
  cascade.frame = frame;
  cascade.levels.resize(depth);
  std::vector<std::vector<double>> factor(depth);
  for (int lv = m; lv >= top; --lv) {
    const auto li = static_cast<std::size_t>(lv - top);
    auto& out = cascade.levels[li];
    out.level = lv;
    out.cap = std::exp2(-static_cast<double>(lv) * s);
    const auto keys = tree.keys(lv);
    out.keys.assign(keys.begin(), keys.end());
    out.capped_mass.resize(keys.size());
    factor[li].assign(keys.size(), 1.0);
    if (lv == m) {
      std::fill(out.capped_mass.begin(), out.capped_mass.end(), out.cap);
      continue;
    }
    const auto begin = tree.child_begin(lv);
    const auto& below = cascade.levels[li + 1].capped_mass;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      double raw = 0.0;
      for (auto c = begin[i]; c < begin[i + 1]; ++c) raw += below[c];
      if (raw > out.cap) {
        factor[li][i] = out.cap / raw;
        out.capped_mass[i] = out.cap;
      } else {
        out.capped_mass[i] = raw;
      }
    }
  }
  // push the coarser rescalings down to every level
  std::vector<double> cum(cascade.levels[0].keys.size(), 1.0);
  for (std::size_t li = 0; li < depth; ++li) {
    auto& lv = cascade.levels[li];
    lv.mass.resize(lv.keys.size());
    for (std::size_t i = 0; i < lv.keys.size(); ++i) lv.mass[i] = lv.capped_mass[i] * cum[i];
    if (li + 1 == depth) break;
    const auto begin = tree.child_begin(lv.level);
    std::vector<double> next(cascade.levels[li + 1].keys.size(), 1.0);
    for (std::size_t i = 0; i < lv.keys.size(); ++i) {
      for (auto c = begin[i]; c < begin[i + 1]; ++c) next[c] = cum[i] * factor[li][i];
    }
    cum = std::move(next);
  }

  const auto reps = tree.representatives();
  cascade.atom_points.assign(reps.begin(), reps.end());
  const auto& base = cascade.levels.back();
  double total = 0.0;
  for (double v : base.mass) total += v;
  std::vector<Atom> atoms;
  atoms.reserve(base.mass.size());
  for (std::size_t i = 0; i < base.mass.size(); ++i) {
    atoms.push_back({points.points()[reps[i]], base.mass[i] / total});
  }
  AtomicMeasure measure(dim, std::move(atoms));

  const double r_lo = band.lo * frame.side0;
  const double r_hi = delta * frame.side0;
  const auto sup = max_ball_ratio(measure, s, r_lo, 2.0 * r_hi, exec);
  const double c = std::max(2.0, std::exp2(s)) * sup.ratio;
  return {std::move(measure), std::move(cascade), total, c, r_lo, r_hi};
}

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

MdpReport check_mdp(std::span<const MdpInput> measures, double s, Theta theta, double a, double c,
                    int ball_samples, std::uint64_t seed, Exec exec) {
  if (measures.empty()) throw InvalidArgument("check_mdp needs at least one measure");
  if (!(a > 0.0 && c > 0.0)) throw InvalidArgument("check_mdp needs a > 0 and c > 0");
  if (ball_samples < 1) throw InvalidArgument("check_mdp needs at least one ball sample");
  if (!(s >= 0.0)) throw InvalidArgument("check_mdp needs s >= 0");
  std::mt19937_64 rng(seed);
  MdpReport report{true, 0.0, {}};
  for (const auto& in : measures) {
    if (!(in.delta > 0.0 && in.delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    MdpEntry e{in.delta, in.measure.total(), false, 0.0, {}, 0.0, 0, false};
    e.mass_ok = in.measure.total() >= a * (1.0 - 1e-12);
    const double dlo = in.delta;
    const double dhi = std::pow(in.delta, theta.value());
    e.weak_certification = dhi / dlo < 10.0;
    const auto atoms = in.measure.atoms();
    if (atoms.empty()) {
      e.mass_ok = false;
      report.pass = false;
      report.entries.push_back(e);
      continue;
    }
    std::vector<Point> centers(static_cast<std::size_t>(ball_samples));
    std::vector<double> radii(static_cast<std::size_t>(ball_samples));
    for (int j = 0; j < ball_samples; ++j) {
      const auto pick = std::min<std::size_t>(
          atoms.size() - 1, static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(atoms.size())));
      const double diam = std::exp(std::log(dlo) + unit_draw(rng) * (std::log(dhi) - std::log(dlo)));
      centers[j] = atoms[pick].x;
      radii[j] = 0.5 * diam;
    }
    const auto masses = ball_masses(in.measure, centers, radii, exec);
    for (int j = 0; j < ball_samples; ++j) {
      const double ratio = masses[j] / (c * std::pow(2.0 * radii[j], s));
      if (ratio > 1.0 + 1e-12) ++e.violations;
      if (ratio > e.worst_ratio) {
        e.worst_ratio = ratio;
        e.worst_center = centers[j];
        e.worst_radius = radii[j];
      }
    }
    report.worst_ratio = std::max(report.worst_ratio, e.worst_ratio);
    if (!e.mass_ok || e.violations > 0) report.pass = false;
    report.entries.push_back(e);
  }
  return report;
}

AtomicMeasure fp_witness_measure(double p, double delta, Theta theta) {
  if (!(p > 0.0)) throw InvalidArgument("sequence exponent p must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  const double t = theta.value();
  const double s = t / (p + t);
  const double big_m = std::ceil(std::pow(delta, -(s + t * (1.0 - s)) / (p + 1.0)));
  if (big_m > 5e7) throw NumericRangeError("witness measure would need too many atoms");
  const double w = std::pow(delta, s);
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(big_m));
  for (long long k = 1; k <= static_cast<long long>(big_m); ++k) {
    atoms.push_back({{std::pow(static_cast<double>(k), -p), 0.0, 0.0}, w});
  }
  return AtomicMeasure(1, std::move(atoms));
}

AtomicMeasure separated_witness_measure(const PointCloud& points, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("separation delta must be positive");
  const int dim = points.dimension();
  const auto& origin = points.bbox().min;
  auto cell_of = [&](const Point& x) {
    std::array<long long, 3> c{0, 0, 0};
    for (int k = 0; k < dim; ++k) c[k] = static_cast<long long>(std::floor((x[k] - origin[k]) / delta));
    return c;
  };
  struct Hash {
    std::size_t operator()(const std::array<long long, 3>& c) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (auto v : c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
      return h;
    }
  };
  std::unordered_map<std::array<long long, 3>, std::vector<std::size_t>, Hash> grid;
  std::vector<Point> kept;
  for (const auto& p : points.points()) {
    const auto c = cell_of(p);
    bool clash = false;
    const int r0 = -1, r1 = 1;
    for (int dx = r0; dx <= r1 && !clash; ++dx) {
      for (int dy = (dim > 1 ? r0 : 0); dy <= (dim > 1 ? r1 : 0) && !clash; ++dy) {
        for (int dz = (dim > 2 ? r0 : 0); dz <= (dim > 2 ? r1 : 0) && !clash; ++dz) {
          auto it = grid.find({c[0] + dx, c[1] + dy, c[2] + dz});
          if (it == grid.end()) continue;
          for (auto idx : it->second) {
            if (distance(kept[idx], p, dim) < delta) {
              clash = true;
              break;
            }
          }
        }
      }
    }
    if (!clash) {
      grid[c].push_back(kept.size());
      kept.push_back(p);
    }
  }
  std::vector<Atom> atoms;
  atoms.reserve(kept.size());
  const double w = 1.0 / static_cast<double>(kept.size());
  for (const auto& p : kept) atoms.push_back({p, w});
  return AtomicMeasure(dim, std::move(atoms));
}

}  // namespace dimspect
