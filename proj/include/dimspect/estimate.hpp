#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dimspect/core.hpp"
#include "dimspect/covers.hpp"
#include "dimspect/kernels.hpp"

namespace dimspect {

enum class CoverEngine { dyadic, menu_1d };

struct EstimateOptions {
  CoverEngine engine = CoverEngine::dyadic;
  DyadicAnchor anchor = DyadicAnchor::top_scale;
  int menu_size = 16;
  /// Dyadic engine, top_scale anchor: when log2(delta / delta^(1/theta)) = r is
  /// not an integer, the log cost is interpolated between floor(r) and
  /// floor(r) + 1 levels with weight frac(r). Without it the cost jumps
  /// whenever the lower band end crosses a level, and the coarse and fine
  /// scales of a pair jump at different thetas.
  bool level_interpolation = true;
  double threshold = 1.0;
  double s_tolerance = 1e-3;
  std::uint64_t seed = 0;  // recorded only; the estimator is deterministic
  Exec exec = Exec::parallel;
  /// Drop thetas with fewer than two usable deltas instead of throwing.
  bool skip_too_deep = false;
  /// Raise each lower to the running max from the left and cut each upper to
  /// the running min from the right. Sound because the dimension is monotone
  /// in theta; throws InvariantViolation if the columns then cross.
  bool monotone_bracket = false;
};

/// Optimal restricted-cover cost as a function of s for one point set and band.
class CoverCost {
 public:
  CoverCost(const PointCloud& points, const ScaleRange& range, const EstimateOptions& options);
  [[nodiscard]] double operator()(double s) const;
  [[nodiscard]] int dimension() const noexcept { return dim_; }

 private:
  int dim_;
  CoverEngine engine_;
  Exec exec_;
  std::optional<DyadicTree> tree_;
  std::optional<DyadicLevels> extended_;
  double weight_ = 0.0;
  std::vector<double> xs_;
  std::vector<double> menu_;
};

struct CriticalExponent {
  double delta;
  Theta theta;
  double s_star;
  double cost_at_s_star;
};

/// The s in [0, n] where the optimal cost crosses `threshold`, by bisection.
/// Returns 0 when the cost is already at or below the threshold at s = 0.
CriticalExponent critical_exponent(const PointCloud& points, double delta, Theta theta,
                                   double threshold = 1.0, const EstimateOptions& options = {});

/// The s at which the optimal costs at two scales coincide (the zero-slope
/// exponent between them). `coarse_delta` > `fine_delta`.
double scale_balance(const PointCloud& points, double coarse_delta, double fine_delta, Theta theta,
                     const EstimateOptions& options = {});

/// Estimate at theta = 0 from unrestricted unit-box dyadic covers floored at
/// kMinScale / kMaxDepth: the largest s at which dropping the deepest level
/// leaves the optimal cost unchanged. Any finite set gives 0.
double floor_sensitivity_exponent(const PointCloud& points, double delta,
                                  const EstimateOptions& options = {});

/// Estimated spectrum. Each theta > 0 takes scale-balance exponents over
/// consecutive usable deltas (those with delta^(1/theta) >= kMinScale) and
/// reports min / max of the last two. Throws ScaleRangeTooDeep if fewer than
/// two deltas are usable at some theta.
DimensionSpectrum estimate_spectrum(const PointCloud& points, std::span<const Theta> grid,
                                    std::span<const double> deltas,
                                    const EstimateOptions& options = {});

/// Points of {0} U {k^-p} to keep so that neighbouring gaps stay resolved at
/// scale delta: 4 ceil((p/delta)^(1/(p+1))), or 4 when delta >= 1.
long long coupled_truncation(double p, double delta);

/// Same rule for {0} U {1/log k}: 4 N with N the first k where the gap
/// 1/(k log^2 k) drops below delta.
long long log_sequence_truncation(double delta);

/// {0} U {k^-p : 1 <= k <= count}.
PointCloud sequence_points(double p, long long count);

/// {0} U {1/log k : 2 <= k <= count + 1}.
PointCloud log_sequence_points(long long count);

}  // namespace dimspect
