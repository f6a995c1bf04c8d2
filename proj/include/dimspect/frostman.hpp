#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dimspect/core.hpp"
#include "dimspect/dyadic.hpp"
#include "dimspect/kernels.hpp"

namespace dimspect {

/// One level of the capped dyadic cascade. Masses are final and
/// unnormalized: the mass each occupied cube carries after every cap.
struct CascadeLevel {
  int level;
  double cap;  // 2^(-level s)
  std::vector<CellKey> keys;
  std::vector<double> mass;
  /// Mass right after this level's own cap, before coarser levels rescale it.
  std::vector<double> capped_mass;
};

struct DyadicCascade {
  int base_level = 0;  // m
  int stop_level = 0;  // m - l
  /// Coarsest (stop_level) first.
  std::vector<CascadeLevel> levels;
  /// For each base-level cube, the index of the point carrying its atom.
  std::vector<std::uint32_t> atom_points;
  DyadicFrame frame;

  /// Largest mass / cap over all occupied cubes at all levels.
  [[nodiscard]] double max_cap_ratio() const;
  /// Largest relative gap, over base cubes, between the cap and the closest
  /// ancestor mass that meets it. 0 means every atom sits under a cube that
  /// attains its cap.
  [[nodiscard]] double max_attainment_gap() const;
};

struct FrostmanMeasure {
  AtomicMeasure measure;     // probability measure
  DyadicCascade cascade;
  double unnormalized_total;
  double constant_c;         // mu(B(x, r)) <= c r^s for r in [r_lo, r_hi]
  double r_lo;
  double r_hi;
};

/// Dyadic construction on the unit-box image of the cloud: 2^(-ms) on the
/// lexicographically least point of each occupied level-m cube, where
/// 2^(-m-1) < delta^(1/theta) <= 2^(-m); caps 2^(-js) applied from level m-1
/// up to level m-l, the coarsest level with 2^-(m-l) sqrt(n) <= delta; then
/// normalized. Clouds of extent <= 1 are only translated, so delta keeps its
/// meaning; larger clouds are scaled to the unit box and delta is read in
/// those coordinates. The constant c is max(2, 2^s) times the exact sup of
/// mu(B(a, r))/r^s over atom centres and r in [r_lo, 2 r_hi].
FrostmanMeasure build_frostman_measure(const PointCloud& points, double s, double delta,
                                       Theta theta, Exec exec = Exec::parallel);

struct MdpInput {
  double delta;
  AtomicMeasure measure;
};

struct MdpEntry {
  double delta;
  double total;
  bool mass_ok;
  double worst_ratio;  // max mu(B) / (c (2r)^s) over sampled balls
  Point worst_center;
  double worst_radius;
  int violations;
  bool weak_certification;  // diameter band delta..delta^theta spans under a factor 10
};

struct MdpReport {
  bool pass;
  double worst_ratio;
  std::vector<MdpEntry> entries;
};

/// Checks mass >= a and mu(B(x, r)) <= c (2r)^s on `ball_samples` closed balls
/// per measure, centred on atoms, with diameter 2r log-uniform in
/// [delta, delta^theta]. Deterministic for a given seed on every platform.
MdpReport check_mdp(std::span<const MdpInput> measures, double s, Theta theta, double a, double c,
                    int ball_samples = 200, std::uint64_t seed = 0, Exec exec = Exec::parallel);

/// Atoms of mass delta^s at k^-p for k <= M, s = theta/(p+theta),
/// M = ceil(delta^-(s + theta(1-s))/(p+1)).
AtomicMeasure fp_witness_measure(double p, double delta, Theta theta);

/// Greedy delta-separated subset (first fit in lexicographic order), uniform
/// masses summing to 1.
AtomicMeasure separated_witness_measure(const PointCloud& points, double delta);

}  // namespace dimspect
