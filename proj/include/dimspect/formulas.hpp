#pragma once

#include <span>
#include <utility>

#include "dimspect/core.hpp"

namespace dimspect {

/// theta/(p+theta): the intermediate dimensions of {0} U {k^-p : k >= 1}.
double sequence_dim(double p, Theta theta);

/// Closed-form spectrum of the polynomial sequence on the given grid.
DimensionSpectrum sequence_spectrum(double p, std::span<const Theta> grid);

/// Closed-form spectrum of {0} U {1/log k : k >= 2}: 1 for theta > 0, 0 at theta = 0.
DimensionSpectrum log_sequence_spectrum(std::span<const Theta> grid);

struct SpectrumValue {
  double lower;
  double upper;
};

/// The four worked examples. 1: log sequence. 2: max{theta/(1+theta), 1/3}.
/// 3: max{theta/(1+theta), 1/4} with 0 at theta = 0. 4: theta/(1+theta) + 1
/// with 0 at theta = 0. Lower and upper always coincide.
SpectrumValue example_spectrum(int which, Theta theta);
DimensionSpectrum example_curve(int which, std::span<const Theta> grid);

/// Ambient dimension of example `which` (2 for the planar product, else 1).
int example_ambient_dimension(int which);

/// Upper bound on the dimension at phi given its value at theta < phi:
/// dim + (1 - theta/phi)(n - dim).
double envelope_bound(double dim_at_theta, Theta theta, Theta phi, int ambient_n);

/// Largest value(phi) - envelope_bound(value(theta), theta, phi, n) over all grid
/// pairs theta < phi, for both columns. Non-positive means the envelope holds.
double max_envelope_excess(const DimensionSpectrum& spectrum);

/// Largest drop of either column between consecutive samples (0 if monotone).
double max_monotonicity_drop(const DimensionSpectrum& spectrum);

struct BoundInputs {
  double dim_h;
  double dim_b_lower;
  double dim_b_upper;
  double dim_a;
  int ambient_n;

  /// Throws InvalidArgument unless 0 <= dim_h <= dim_b_lower <= dim_b_upper <= dim_a <= n.
  void validate() const;
};

/// max{0, dim_A - (dim_A - dim_B)/theta}, with the lower or upper box dimension.
double assouad_lower_bound(const BoundInputs& inputs, Theta theta, bool use_upper_box);

/// Bounds for a product E x F: lower_E + lower_F below and
/// upper_E + box_upper_F above, capped at the summed ambient dimension.
DimensionSpectrum product_bounds(const DimensionSpectrum& spec_e, const DimensionSpectrum& spec_f,
                                 double box_upper_f);

}  // namespace dimspect
