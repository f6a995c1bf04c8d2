#include "dimspect/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dimspect {

int configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("DIMSPECT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) {
      omp_set_num_threads(static_cast<int>(std::min<long>(v, omp_get_num_procs() * 4L)));
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> ball_masses(const AtomicMeasure& measure, std::span<const Point> centers,
                                std::span<const double> radii, Exec exec) {
  if (centers.size() != radii.size()) throw InvalidArgument("centres and radii differ in length");
  std::vector<double> out(centers.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(centers.size());
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = measure.ball_mass(centers[i], radii[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = measure.ball_mass(centers[i], radii[i]);
  }
  return out;
}

namespace {

// Best ratio for one centre. `near` holds (distance, mass) of atoms within
// r_hi, sorted by distance.
BallRatio best_for_centre(std::vector<std::pair<double, double>>& near, std::size_t atom,
                          double s, double r_lo, double r_hi) {
  std::sort(near.begin(), near.end());
  BallRatio best{0.0, atom, r_lo};
  double mass = 0.0;
  std::size_t i = 0;
  while (i < near.size() && near[i].first <= r_lo) mass += near[i++].second;
  best.ratio = mass / std::pow(r_lo, s);
  while (i < near.size()) {
    const double r = near[i].first;
    if (r > r_hi) break;
    while (i < near.size() && near[i].first == r) mass += near[i++].second;
    const double ratio = mass / std::pow(r, s);
    if (ratio > best.ratio) best = {ratio, atom, r};
  }
  return best;
}

BallRatio ratio_at(const AtomicMeasure& measure, const std::vector<std::size_t>& order,
                   std::size_t rank, double s, double r_lo, double r_hi) {
  const auto atoms = measure.atoms();
  const int dim = measure.dimension();
  std::vector<std::pair<double, double>> near;
  if (dim == 1) {
    // atoms sorted by x: walk outwards until r_hi
    const double x = atoms[order[rank]].x[0];
    for (std::size_t j = rank + 1; j < order.size(); ++j) {
      const double d = atoms[order[j]].x[0] - x;
      if (d > r_hi) break;
      near.emplace_back(d, atoms[order[j]].mass);
    }
    for (std::size_t j = rank; j-- > 0;) {
      const double d = x - atoms[order[j]].x[0];
      if (d > r_hi) break;
      near.emplace_back(d, atoms[order[j]].mass);
    }
    near.emplace_back(0.0, atoms[order[rank]].mass);
  } else {
    const auto& c = atoms[order[rank]].x;
    for (const auto& a : atoms) {
      const double d = distance(a.x, c, dim);
      if (d <= r_hi) near.emplace_back(d, a.mass);
    }
  }
  return best_for_centre(near, order[rank], s, r_lo, r_hi);
}

}  // namespace

BallRatio max_ball_ratio(const AtomicMeasure& measure, double s, double r_lo, double r_hi,
                         Exec exec) {
  if (!(r_lo > 0.0 && r_lo <= r_hi)) throw InvalidArgument("ball ratio needs 0 < r_lo <= r_hi");
  const auto atoms = measure.atoms();
  std::vector<std::size_t> order(atoms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (measure.dimension() == 1) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return atoms[a].x[0] < atoms[b].x[0];
    });
  }
  std::vector<BallRatio> per(atoms.size());
  const auto n = static_cast<std::ptrdiff_t>(atoms.size());
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) per[i] = ratio_at(measure, order, i, s, r_lo, r_hi);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) per[i] = ratio_at(measure, order, i, s, r_lo, r_hi);
  }
  BallRatio best{};
  bool first = true;
  for (const auto& b : per) {
    if (first || b.ratio > best.ratio || (b.ratio == best.ratio && b.atom < best.atom)) best = b;
    first = false;
  }
  return best;
}

}  // namespace dimspect
