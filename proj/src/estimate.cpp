#include "dimspect/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>

namespace dimspect {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Largest s in [0, hi] where pred(s) is false, assuming pred is monotone
// (false then true). Returns 0 if pred(0) holds and hi if pred(hi) fails.
double bisect(const std::function<bool(double)>& pred, double hi, double tol) {
  if (pred(0.0)) return 0.0;
  if (!pred(hi)) return hi;
  double a = 0.0;
  double b = hi;
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (pred(m)) {
      b = m;
    } else {
      a = m;
    }
  }
  return 0.5 * (a + b);
}

void check_options(const EstimateOptions& o) {
  if (o.menu_size < 2) throw InvalidArgument("menu size must be at least 2");
  if (!(o.threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  if (!(o.s_tolerance > 0.0)) throw InvalidArgument("s tolerance must be positive");
}

}  // namespace

CoverCost::CoverCost(const PointCloud& points, const ScaleRange& range,
                     const EstimateOptions& options)
    : dim_(points.dimension()), engine_(options.engine), exec_(options.exec) {
  check_options(options);
  if (engine_ == CoverEngine::dyadic) {
    tree_.emplace(points, range, options.anchor);
    const auto& lv = tree_->levels();
    const auto b = search_bounds(range);
    const double r = std::log2(b.hi / b.lo);
    const double frac = r - (lv.bottom() - lv.top());
    // a band that does not end on a level: blend in one more level below it
    if (options.level_interpolation && options.anchor == DyadicAnchor::top_scale &&
        frac > 1e-9 && frac < 1.0 && lv.bottom() < kMaxDepth) {
      extended_.emplace(points, lv.frame(), lv.top(), lv.bottom() + 1);
      weight_ = frac;
    }
    return;
  }
  if (dim_ != 1) throw InvalidArgument("the menu engine only handles 1-D points");
  const auto b = search_bounds(range);
  menu_ = geometric_menu(b.lo, b.hi, options.menu_size);
  for (const auto& p : points.points()) xs_.push_back(p[0]);
}

double CoverCost::operator()(double s) const {
  if (tree_) {
    const double c = tree_->cost(s, exec_);
    if (!extended_) return c;
    const double e = dyadic_cost(*extended_, s, exec_);
    return std::exp((1.0 - weight_) * std::log(c) + weight_ * std::log(e));
  }
  return optimal_cost_1d(xs_, menu_, s);
}

CriticalExponent critical_exponent(const PointCloud& points, double delta, Theta theta,
                                   double threshold, const EstimateOptions& options) {
  if (!(threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  const CoverCost cost(points, ScaleRange(delta, theta), options);
  const double s = bisect([&](double t) { return cost(t) <= threshold; }, points.dimension(),
                          options.s_tolerance);
  return {delta, theta, s, cost(s)};
}

double scale_balance(const PointCloud& points, double coarse_delta, double fine_delta, Theta theta,
                     const EstimateOptions& options) {
  if (!(fine_delta < coarse_delta)) throw InvalidArgument("scale balance needs fine < coarse");
  const CoverCost coarse(points, ScaleRange(coarse_delta, theta), options);
  const CoverCost fine(points, ScaleRange(fine_delta, theta), options);
  return bisect([&](double t) { return std::log(fine(t)) <= std::log(coarse(t)); },
                points.dimension(), options.s_tolerance);
}

double floor_sensitivity_exponent(const PointCloud& points, double delta,
                                  const EstimateOptions& options) {
  check_options(options);
  const DyadicTree full(points, ScaleRange(delta, Theta(0.0)), DyadicAnchor::unit_box);
  const auto& lv = full.levels();
  if (lv.bottom() == lv.top()) return 0.0;
  const DyadicLevels cut(points, lv.frame(), lv.top(), lv.bottom() - 1);
  const double s = bisect(
      [&](double t) { return full.cost(t, options.exec) < dyadic_cost(cut, t, options.exec); },
      points.dimension(), options.s_tolerance);
  return s <= options.s_tolerance ? 0.0 : s;
}

DimensionSpectrum estimate_spectrum(const PointCloud& points, std::span<const Theta> grid,
                                    std::span<const double> deltas,
                                    const EstimateOptions& options) {
  check_options(options);
  if (grid.empty()) throw InvalidArgument("theta grid is empty");
  if (deltas.size() < 3) throw InvalidArgument("estimation needs at least three deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < 1.0)) throw InvalidArgument("deltas must lie in (0, 1)");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw InvalidArgument("deltas must be strictly decreasing");
    }
  }
  const double n = points.dimension();
  const auto cells = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<SpectrumSample> out(grid.size(), {Theta(0.0), 0.0, 0.0, Method::estimated});
  std::vector<std::exception_ptr> failure(grid.size());
  std::vector<char> skipped(grid.size(), 0);

  EstimateOptions inner = options;
  inner.exec = Exec::serial;  // parallelism lives at the cell level

  auto run_cell = [&](std::ptrdiff_t i) {
    const Theta t = grid[i];
    try {
      if (t.value() == 0.0) {
        const double v = floor_sensitivity_exponent(points, deltas.back(), inner);
        out[i] = {t, v, v, Method::estimated};
        return;
      }
      std::vector<double> usable;
      for (double d : deltas) {
        if (ScaleRange(d, t).representable()) usable.push_back(d);
      }
      if (usable.size() < 2 && options.skip_too_deep) {
        skipped[i] = 1;
        return;
      }
      if (usable.size() < 2) {
        throw ScaleRangeTooDeep("theta=" + num(t.value()) +
                                ": fewer than two deltas have delta^(1/theta) >= " + num(kMinScale));
      }
      std::vector<double> est;
      for (std::size_t k = 0; k + 1 < usable.size(); ++k) {
        est.push_back(std::clamp(scale_balance(points, usable[k], usable[k + 1], t, inner), 0.0, n));
      }
      const std::size_t from = est.size() >= 2 ? est.size() - 2 : 0;
      const double lo = *std::min_element(est.begin() + static_cast<std::ptrdiff_t>(from), est.end());
      const double hi = *std::max_element(est.begin() + static_cast<std::ptrdiff_t>(from), est.end());
      out[i] = {t, lo, hi, Method::estimated};
    } catch (...) {
      failure[i] = std::current_exception();
    }
  };

  if (options.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < cells; ++i) run_cell(i);
  } else {
    for (std::ptrdiff_t i = 0; i < cells; ++i) run_cell(i);
  }
  for (const auto& f : failure) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<SpectrumSample> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!skipped[i]) kept.push_back(out[i]);
  }
  if (kept.empty()) {
    throw ScaleRangeTooDeep("no theta in the grid has two deltas with delta^(1/theta) >= " +
                            num(kMinScale));
  }
  const auto dropped = out.size() - kept.size();

  if (options.monotone_bracket) {
    // lower(phi) <= dim(phi) <= dim(theta) for phi <= theta, and symmetrically above
    for (std::size_t i = 1; i < kept.size(); ++i) {
      kept[i].lower = std::max(kept[i].lower, kept[i - 1].lower);
    }
    for (std::size_t i = kept.size() - 1; i-- > 0;) {
      kept[i].upper = std::min(kept[i].upper, kept[i + 1].upper);
    }
    for (const auto& smp : kept) {
      if (smp.lower > smp.upper) {
        throw InvariantViolation("estimates at theta=" + num(smp.theta.value()) +
                                 " contradict monotonicity: tightened lower " + num(smp.lower) +
                                 " > upper " + num(smp.upper));
      }
    }
  }

  DimensionSpectrum::Metadata meta;
  std::string ds;
  for (double d : deltas) ds += (ds.empty() ? "" : ",") + num(d);
  meta["deltas"] = ds;
  meta["surrogate"] = "scale-balance:last-two-pairs";
  meta["theta0"] = "floor-sensitivity";
  meta["engine"] = options.engine == CoverEngine::dyadic ? "dyadic" : "menu_1d";
  meta["anchor"] = options.anchor == DyadicAnchor::top_scale ? "top_scale" : "unit_box";
  meta["menu_size"] = std::to_string(options.menu_size);
  meta["level_interpolation"] = options.level_interpolation ? "true" : "false";
  meta["threshold"] = num(options.threshold);
  meta["s_tolerance"] = num(options.s_tolerance);
  meta["seed"] = std::to_string(options.seed);
  meta["points"] = std::to_string(points.size());
  meta["monotone_bracket"] = options.monotone_bracket ? "true" : "false";
  if (dropped > 0) meta["skipped_thetas"] = std::to_string(dropped);
  return DimensionSpectrum(points.dimension(), std::move(kept), std::move(meta));
}

namespace {

long long snapped_ceil(double x) {
  const double r = std::round(x);
  if (std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

}  // namespace

long long coupled_truncation(double p, double delta) {
  if (!(p > 0.0)) throw InvalidArgument("sequence exponent p must be positive");
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (delta >= 1.0) return 4;
  return 4 * snapped_ceil(std::pow(p / delta, 1.0 / (p + 1.0)));
}

long long log_sequence_truncation(double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (delta >= 1.0) return 4;
  long long k = 2;
  while (1.0 / (static_cast<double>(k) * std::pow(std::log(static_cast<double>(k)), 2)) >= delta) {
    if (++k > 50'000'000) throw NumericRangeError("log sequence truncation is too large");
  }
  return 4 * k;
}

PointCloud sequence_points(double p, long long count) {
  if (!(p > 0.0)) throw InvalidArgument("sequence exponent p must be positive");
  if (count < 0) throw InvalidArgument("point count must be non-negative");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count) + 1);
  pts.push_back({0.0, 0.0, 0.0});
  for (long long k = 1; k <= count; ++k) pts.push_back({std::pow(static_cast<double>(k), -p), 0.0, 0.0});
  return PointCloud(1, std::move(pts));
}

PointCloud log_sequence_points(long long count) {
  if (count < 0) throw InvalidArgument("point count must be non-negative");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count) + 1);
  pts.push_back({0.0, 0.0, 0.0});
  for (long long k = 2; k <= count + 1; ++k) {
    pts.push_back({1.0 / std::log(static_cast<double>(k)), 0.0, 0.0});
  }
  return PointCloud(1, std::move(pts));
}

}  // namespace dimspect
