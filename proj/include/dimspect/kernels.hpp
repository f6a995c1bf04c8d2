#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dimspect/core.hpp"

namespace dimspect {

/// Serial is the reference path; parallel uses OpenMP when built with it and
/// must give bit-identical results.
enum class Exec { serial, parallel };

/// Reads DIMSPECT_THREADS and caps the OpenMP thread count. Returns the cap in
/// effect (1 without OpenMP).
int configure_threads_from_env();
int max_threads() noexcept;

/// mu(B(centers[i], radii[i])) for closed balls.
std::vector<double> ball_masses(const AtomicMeasure& measure, std::span<const Point> centers,
                                std::span<const double> radii, Exec exec = Exec::parallel);

struct BallRatio {
  double ratio = 0.0;       // mu(B(x, r)) / r^s
  std::size_t atom = 0;     // centre atom index
  double radius = 0.0;
};

/// Exact sup of mu(B(a, r)) / r^s over atom centres a and r in [r_lo, r_hi].
/// The ratio only peaks at r_lo or at an atom distance, so those are the
/// candidates. Ties keep the lowest atom index.
BallRatio max_ball_ratio(const AtomicMeasure& measure, double s, double r_lo, double r_hi,
                         Exec exec = Exec::parallel);

}  // namespace dimspect
