#include "dimspect/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace dimspect {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

Theta::Theta(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument("theta must lie in [0, 1], got " + num(value));
  }
}

ScaleRange::ScaleRange(double delta, Theta theta) : delta_(delta), theta_(theta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1), got " + num(delta));
  }
}

double ScaleRange::raw_lower() const noexcept {
  if (theta_.value() == 0.0) return 0.0;
  if (theta_.value() == 1.0) return delta_;
  return std::pow(delta_, 1.0 / theta_.value());
}

bool ScaleRange::representable() const noexcept {
  if (theta_.value() == 0.0) return true;
  // the relative slack keeps e.g. (1e-3)^(1/0.25) = 1e-12 usable
  return raw_lower() >= kMinScale * (1.0 - 1e-9);
}

ScaleBounds scale_bounds(const ScaleRange& range) {
  if (!range.representable()) {
    throw ScaleRangeTooDeep("delta^(1/theta) = " + num(range.raw_lower()) +
                            " is below the minimum scale " + num(kMinScale));
  }
  return {range.raw_lower(), range.delta()};
}

double Box::extent(int dimension) const noexcept {
  double e = 0.0;
  for (int k = 0; k < dimension; ++k) e = std::max(e, max[k] - min[k]);
  return e;
}

double distance(const Point& a, const Point& b, int dimension) noexcept {
  if (dimension == 1) return std::fabs(a[0] - b[0]);
  double acc = 0.0;
  for (int k = 0; k < dimension; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

PointCloud::PointCloud(int dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension < 1 || dimension > 3) {
    throw InvalidArgument("point dimension must be 1, 2 or 3");
  }
  if (points_.empty()) throw InvalidArgument("point cloud is empty");
  for (auto& p : points_) {
    for (int k = 0; k < 3; ++k) {
      if (k >= dimension) {
        p[k] = 0.0;
      } else if (!std::isfinite(p[k])) {
        throw InvalidArgument("non-finite coordinate in point cloud");
      }
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  bbox_.min = bbox_.max = points_.front();
  for (const auto& p : points_) {
    for (int k = 0; k < dimension; ++k) {
      bbox_.min[k] = std::min(bbox_.min[k], p[k]);
      bbox_.max[k] = std::max(bbox_.max[k], p[k]);
    }
  }
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::exact: return "exact";
    case Method::bound: return "bound";
    case Method::trivial: return "trivial";
    case Method::estimated: return "estimated";
    case Method::merged: return "merged";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (auto m : {Method::exact, Method::bound, Method::trivial, Method::estimated,
                 Method::merged}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidArgument("unknown method tag '" + std::string(name) + "'");
}

DimensionSpectrum::DimensionSpectrum(int ambient_dimension, std::vector<SpectrumSample> samples,
                                     Metadata metadata)
    : ambient_dimension_(ambient_dimension),
      samples_(std::move(samples)),
      metadata_(std::move(metadata)) {
  if (ambient_dimension < 1) throw InvalidArgument("ambient dimension must be positive");
  if (samples_.empty()) throw InvalidArgument("spectrum has no samples");
  const double n = ambient_dimension;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!(std::isfinite(s.lower) && std::isfinite(s.upper))) {
      throw InvariantViolation("non-finite spectrum value at theta=" + num(s.theta.value()));
    }
    if (!(s.lower >= 0.0 && s.lower <= s.upper && s.upper <= n)) {
      throw InvariantViolation("spectrum bounds cross or leave [0, n] at theta=" + num(s.theta.value()) +
                               ": lower=" + num(s.lower) + " upper=" + num(s.upper));
    }
    if (i > 0 && !(samples_[i - 1].theta < s.theta)) {
      throw InvariantViolation("spectrum thetas must be strictly increasing");
    }
  }
  const double tol = monotonicity_tolerance();
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const auto& a = samples_[i - 1];
    const auto& b = samples_[i];
    if (b.lower < a.lower - tol || b.upper < a.upper - tol) {
      throw InvariantViolation("spectrum decreases between theta=" + num(a.theta.value()) +
                               " and theta=" + num(b.theta.value()));
    }
  }
}

std::vector<Theta> DimensionSpectrum::grid() const {
  std::vector<Theta> g;
  g.reserve(samples_.size());
  for (const auto& s : samples_) g.push_back(s.theta);
  return g;
}

bool DimensionSpectrum::estimated() const noexcept {
  return std::any_of(samples_.begin(), samples_.end(),
                     [](const SpectrumSample& s) { return s.method == Method::estimated; });
}

double DimensionSpectrum::monotonicity_tolerance() const noexcept {
  return estimated() ? kTolMonoEstimated : kTolMonoExact;
}

DimensionSpectrum spectrum_merge(const DimensionSpectrum& a, const DimensionSpectrum& b,
                                 MergeMode mode) {
  if (a.size() != b.size()) throw GridMismatch("spectra have different grid sizes");
  std::vector<SpectrumSample> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.theta != y.theta) throw GridMismatch("spectra have different theta grids");
    SpectrumSample s{x.theta, 0.0, 0.0, x.method == y.method ? x.method : Method::merged};
    switch (mode) {
      case MergeMode::max:
        s.lower = std::max(x.lower, y.lower);
        s.upper = std::max(x.upper, y.upper);
        break;
      case MergeMode::min:
        s.lower = std::min(x.lower, y.lower);
        s.upper = std::min(x.upper, y.upper);
        break;
      case MergeMode::intersect:
        s.lower = std::max(x.lower, y.lower);
        s.upper = std::min(x.upper, y.upper);
        if (s.lower > s.upper) {
          throw EmptyIntersection("intersection is empty at theta=" + num(x.theta.value()));
        }
        break;
    }
    out.push_back(s);
  }
  auto meta = a.metadata();
  for (const auto& [k, v] : b.metadata()) meta.emplace(k, v);
  return DimensionSpectrum(std::max(a.ambient_dimension(), b.ambient_dimension()),
                           std::move(out), std::move(meta));
}

std::vector<Theta> uniform_theta_grid(int count) {
  if (count < 2) throw InvalidArgument("theta grid needs at least two points");
  std::vector<Theta> g;
  g.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    g.emplace_back(i == count - 1 ? 1.0 : static_cast<double>(i) / (count - 1));
  }
  return g;
}

AtomicMeasure::AtomicMeasure(int dimension, std::vector<Atom> atoms)
    : dimension_(dimension), atoms_(std::move(atoms)), total_(0.0) {
  if (dimension < 1 || dimension > 3) throw InvalidArgument("measure dimension must be 1, 2 or 3");
  for (const auto& a : atoms_) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw InvalidArgument("atom masses must be positive and finite");
    }
    total_ += a.mass;
  }
}

double AtomicMeasure::ball_mass(const Point& center, double radius) const noexcept {
  double m = 0.0;
  for (const auto& a : atoms_) {
    if (distance(a.x, center, dimension_) <= radius) m += a.mass;
  }
  return m;
}

AtomicMeasure AtomicMeasure::normalized() const {
  if (atoms_.empty()) throw InvalidArgument("cannot normalize an empty measure");
  std::vector<Atom> out = atoms_;
  for (auto& a : out) a.mass /= total_;
  return AtomicMeasure(dimension_, std::move(out));
}

}  // namespace dimspect
