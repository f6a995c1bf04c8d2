#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dimspect {

/// Smallest cover diameter the library will reason about. Ranges whose lower
/// end falls below this are refused.
inline constexpr double kMinScale = 1e-12;

/// Monotonicity slack for closed-form spectra and for estimated spectra.
inline constexpr double kTolMonoExact = 1e-9;
inline constexpr double kTolMonoEstimated = 0.02;

inline constexpr int kDefaultGridSize = 101;

/// Deepest dyadic level any construction may use.
inline constexpr int kMaxDepth = 40;

// ---------------------------------------------------------------------------
// Errors. The CLI maps these onto exit codes: InvalidArgument -> 2,
// InvariantViolation -> 3, NumericRangeError -> 4.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A bound was requested outside the parameter domain where it holds.
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Two spectra that must share a theta grid do not.
class GridMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Intersecting two spectra left lower > upper somewhere.
class EmptyIntersection : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NumericRangeError : public Error {
 public:
  using Error::Error;
};

/// delta^(1/theta) underflows kMinScale, or a dyadic construction would
/// need more than kMaxDepth levels.
class ScaleRangeTooDeep : public NumericRangeError {
 public:
  using NumericRangeError::NumericRangeError;
};

/// The admissible diameter band is too thin for the requested construction.
class RangeTooNarrow : public NumericRangeError {
 public:
  using NumericRangeError::NumericRangeError;
};

// ---------------------------------------------------------------------------

/// Interpolation parameter in [0, 1]; 0 is the Hausdorff end, 1 the box end.
class Theta {
 public:
  constexpr Theta() = default;
  explicit Theta(double value);

  [[nodiscard]] constexpr double value() const noexcept { return value_; }

  friend constexpr auto operator<=>(const Theta&, const Theta&) = default;

 private:
  double value_ = 0.0;
};

struct ScaleBounds {
  double lo;
  double hi;
};

/// The cover diameter band [delta^(1/theta), delta].
class ScaleRange {
 public:
  ScaleRange(double delta, Theta theta);

  [[nodiscard]] double delta() const noexcept { return delta_; }
  [[nodiscard]] Theta theta() const noexcept { return theta_; }

  /// Lower end without the kMinScale check; 0 when theta == 0.
  [[nodiscard]] double raw_lower() const noexcept;
  [[nodiscard]] bool representable() const noexcept;

 private:
  double delta_;
  Theta theta_;
};

/// Returns (delta^(1/theta), delta), or (0, delta) when theta == 0.
/// Throws ScaleRangeTooDeep when the lower end is below kMinScale.
ScaleBounds scale_bounds(const ScaleRange& range);

// ---------------------------------------------------------------------------

/// Coordinates in R^n for n <= 3; unused trailing coordinates are zero.
using Point = std::array<double, 3>;

struct Box {
  Point min{};
  Point max{};

  /// Longest side over the first n axes.
  [[nodiscard]] double extent(int dimension) const noexcept;
};

double distance(const Point& a, const Point& b, int dimension) noexcept;

/// Finite point set in R^n, n in {1, 2, 3}. Points are sorted
/// lexicographically and exact duplicates are dropped on construction.
class PointCloud {
 public:
  PointCloud(int dimension, std::vector<Point> points);

  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::span<const Point> points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] const Box& bbox() const noexcept { return bbox_; }

 private:
  int dimension_;
  std::vector<Point> points_;
  Box bbox_;
};

// ---------------------------------------------------------------------------

enum class Method { exact, bound, trivial, estimated, merged };

std::string_view to_string(Method method) noexcept;
Method method_from_string(std::string_view name);

struct SpectrumSample {
  Theta theta;
  double lower;
  double upper;
  Method method;
};

/// Sampled map theta -> [lower, upper]. Construction enforces
/// 0 <= lower <= upper <= n, strictly increasing theta, and monotone
/// columns (kTolMonoEstimated if any sample is estimated, else kTolMonoExact).
class DimensionSpectrum {
 public:
  using Metadata = std::map<std::string, std::string>;

  DimensionSpectrum(int ambient_dimension, std::vector<SpectrumSample> samples,
                    Metadata metadata = {});

  [[nodiscard]] int ambient_dimension() const noexcept { return ambient_dimension_; }
  [[nodiscard]] std::span<const SpectrumSample> samples() const noexcept { return samples_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] const SpectrumSample& operator[](std::size_t i) const { return samples_[i]; }
  [[nodiscard]] const Metadata& metadata() const noexcept { return metadata_; }
  [[nodiscard]] std::vector<Theta> grid() const;
  [[nodiscard]] bool estimated() const noexcept;
  [[nodiscard]] double monotonicity_tolerance() const noexcept;

 private:
  int ambient_dimension_;
  std::vector<SpectrumSample> samples_;
  Metadata metadata_;
};

enum class MergeMode { max, min, intersect };

/// Pointwise combination of two spectra on identical grids. Intersect keeps
/// (max of lowers, min of uppers) and throws InvariantViolation if it crosses.
DimensionSpectrum spectrum_merge(const DimensionSpectrum& a, const DimensionSpectrum& b,
                                 MergeMode mode);

/// `count` equally spaced values on [0, 1], endpoints included.
std::vector<Theta> uniform_theta_grid(int count = kDefaultGridSize);

// ---------------------------------------------------------------------------

struct Atom {
  Point x;
  double mass;
};

/// Finite sum of point masses. Every mass is strictly positive.
class AtomicMeasure {
 public:
  AtomicMeasure(int dimension, std::vector<Atom> atoms);

  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
  [[nodiscard]] double total() const noexcept { return total_; }

  /// Mass of the closed ball B(center, radius).
  [[nodiscard]] double ball_mass(const Point& center, double radius) const noexcept;

  /// Same atoms rescaled to total mass 1.
  [[nodiscard]] AtomicMeasure normalized() const;

 private:
  int dimension_;
  std::vector<Atom> atoms_;
  double total_;
};

}  // namespace dimspect
