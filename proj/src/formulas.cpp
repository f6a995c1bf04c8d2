#include "dimspect/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace dimspect {

namespace {

void check_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidArgument("sequence exponent p must be positive");
  }
}

DimensionSpectrum from_values(int n, std::span<const Theta> grid, Method method,
                              const std::function<SpectrumValue(Theta)>& f) {
  std::vector<SpectrumSample> samples;
  samples.reserve(grid.size());
  for (auto t : grid) {
    const auto v = f(t);
    samples.push_back({t, v.lower, v.upper, method});
  }
  return DimensionSpectrum(n, std::move(samples));
}

}  // namespace

double sequence_dim(double p, Theta theta) {
  check_p(p);
  const double t = theta.value();
  return t / (p + t);
}

DimensionSpectrum sequence_spectrum(double p, std::span<const Theta> grid) {
  check_p(p);
  return from_values(1, grid, Method::exact, [p](Theta t) {
    const double v = sequence_dim(p, t);
    return SpectrumValue{v, v};
  });
}

DimensionSpectrum log_sequence_spectrum(std::span<const Theta> grid) {
  return from_values(1, grid, Method::exact, [](Theta t) { return example_spectrum(1, t); });
}

int example_ambient_dimension(int which) {
  if (which < 1 || which > 4) throw InvalidArgument("unknown example " + std::to_string(which));
  return which == 4 ? 2 : 1;
}

SpectrumValue example_spectrum(int which, Theta theta) {
  example_ambient_dimension(which);
  const double t = theta.value();
  const double f1 = t / (1.0 + t);
  double v = 0.0;
  switch (which) {
    case 1: v = t > 0.0 ? 1.0 : 0.0; break;
    case 2: v = std::max(f1, 1.0 / 3.0); break;
    case 3: v = t > 0.0 ? std::max(f1, 0.25) : 0.0; break;
    case 4: v = t > 0.0 ? f1 + 1.0 : 0.0; break;
    default: break;
  }
  return {v, v};
}

DimensionSpectrum example_curve(int which, std::span<const Theta> grid) {
  return from_values(example_ambient_dimension(which), grid, Method::exact,
                     [which](Theta t) { return example_spectrum(which, t); });
}

double envelope_bound(double dim_at_theta, Theta theta, Theta phi, int ambient_n) {
  if (!(theta < phi)) throw InvalidArgument("envelope needs theta < phi");
  if (ambient_n < 1) throw InvalidArgument("ambient dimension must be positive");
  const double n = ambient_n;
  if (!(dim_at_theta >= 0.0 && dim_at_theta <= n)) {
    throw InvalidArgument("dimension value outside [0, n]");
  }
  const double r = theta.value() / phi.value();
  return std::clamp(dim_at_theta + (1.0 - r) * (n - dim_at_theta), dim_at_theta, n);
}

double max_envelope_excess(const DimensionSpectrum& spectrum) {
  const auto s = spectrum.samples();
  const int n = spectrum.ambient_dimension();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      worst = std::max(worst, s[j].lower - envelope_bound(s[i].lower, s[i].theta, s[j].theta, n));
      worst = std::max(worst, s[j].upper - envelope_bound(s[i].upper, s[i].theta, s[j].theta, n));
    }
  }
  return s.size() < 2 ? 0.0 : worst;
}

double max_monotonicity_drop(const DimensionSpectrum& spectrum) {
  const auto s = spectrum.samples();
  double drop = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    drop = std::max(drop, s[i - 1].lower - s[i].lower);
    drop = std::max(drop, s[i - 1].upper - s[i].upper);
  }
  return drop;
}

void BoundInputs::validate() const {
  if (ambient_n < 1) throw InvalidArgument("ambient dimension must be positive");
  const double n = ambient_n;
  if (!(0.0 <= dim_h && dim_h <= dim_b_lower && dim_b_lower <= dim_b_upper &&
        dim_b_upper <= dim_a && dim_a <= n)) {
    throw InvalidArgument(
        "dimension inputs must satisfy 0 <= dim_H <= lower box <= upper box <= Assouad <= n");
  }
}

double assouad_lower_bound(const BoundInputs& inputs, Theta theta, bool use_upper_box) {
  inputs.validate();
  if (theta.value() == 0.0) throw DomainError("the Assouad bound needs theta > 0");
  const double b = use_upper_box ? inputs.dim_b_upper : inputs.dim_b_lower;
  if (theta.value() == 1.0) return b;
  return std::max(0.0, inputs.dim_a - (inputs.dim_a - b) / theta.value());
}

DimensionSpectrum product_bounds(const DimensionSpectrum& spec_e, const DimensionSpectrum& spec_f,
                                 double box_upper_f) {
  if (spec_e.size() != spec_f.size()) throw GridMismatch("product factors have different grids");
  for (const auto& s : spec_f.samples()) {
    if (s.upper > box_upper_f + 1e-12) {
      throw InvalidArgument("box_upper_F is below an upper sample of F");
    }
  }
  const double cap = spec_e.ambient_dimension() + spec_f.ambient_dimension();
  std::vector<SpectrumSample> out;
  out.reserve(spec_e.size());
  for (std::size_t i = 0; i < spec_e.size(); ++i) {
    const auto& e = spec_e[i];
    const auto& f = spec_f[i];
    if (e.theta != f.theta) throw GridMismatch("product factors have different grids");
    const double lo = std::min(e.lower + f.lower, cap);
    const double up = std::min(e.upper + box_upper_f, cap);
    out.push_back({e.theta, lo, up, lo == up ? Method::exact : Method::bound});
  }
  return DimensionSpectrum(static_cast<int>(cap), std::move(out));
}

}  // namespace dimspect
