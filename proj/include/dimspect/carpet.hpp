#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dimspect/core.hpp"

namespace dimspect {

/// One chosen rectangle of the m x n grid: column in [0, m), row in [0, n).
struct Digit {
  int col;
  int row;

  friend constexpr auto operator<=>(const Digit&, const Digit&) = default;
};

/// Bedford-McMullen carpet generated by the maps
/// (x, y) -> ((x + col)/m, (y + row)/n) for each digit, n > m >= 2.
class CarpetSpec {
 public:
  CarpetSpec(int m, int n, std::vector<Digit> digits);

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  /// Sorted by (col, row).
  [[nodiscard]] std::span<const Digit> digits() const noexcept { return digits_; }
  [[nodiscard]] std::size_t size() const noexcept { return digits_.size(); }

 private:
  int m_;
  int n_;
  std::vector<Digit> digits_;
};

struct CarpetDerived {
  int m0;                        // occupied columns
  std::vector<int> column_counts;  // n_p for p = 0..m-1
  std::vector<int> a;            // a_l: count of digit l's column, in digit order
  double L;                      // log_n m
  double d;                      // Hausdorff dimension
  std::vector<double> b;         // McMullen weights, in digit order
  int a_max;
  double entropy;
  bool uniform_columns;
};

double box_dim(const CarpetSpec& spec);
double hausdorff_dim(const CarpetSpec& spec);
CarpetDerived mcmullen_weights(const CarpetSpec& spec);

/// -sum b log b over the McMullen weights.
double entropy(const CarpetSpec& spec);
/// Same quantity via -m^-d sum a^(L-1)((L-1) log a - d log m).
double entropy_closed_form(const CarpetSpec& spec);

/// floor(k log_n m), exact when k log_n m is an integer.
long long approx_square_row_depth(const CarpetSpec& spec, long long k);

/// Measure of the level-k rectangle of a word of digit indices.
double rectangle_measure(const CarpetSpec& spec, std::span<const std::size_t> word);

/// Measure of the approximate square of a word, in the form
/// m^-kd prod a^L prod_{j <= l(k)} a^-1.
double approx_square_measure(const CarpetSpec& spec, std::span<const std::size_t> word);
/// The same measure as m^-kd prod a^(L-1) prod_{j > l(k)} a.
double approx_square_measure_rect(const CarpetSpec& spec, std::span<const std::size_t> word);

/// 2 log(log_m n) log a_max / (log n (-log theta)), theta in (0, 1).
double upper_bound_gap(const CarpetSpec& spec, Theta theta);

/// True when 0 < theta < (log_n m)^2 / 4.
bool upper_bound_valid(const CarpetSpec& spec, Theta theta);

/// min{d + gap(theta), box_dim}. Uniform-column carpets return d for every theta;
/// otherwise DomainError outside the validity window.
double upper_bound_theta(const CarpetSpec& spec, Theta theta);

/// d + theta (log|D| - H)/log m.
double lower_bound_theta(const CarpetSpec& spec, Theta theta);

/// Lower and upper bounds on the grid. `assouad`, if given, adds the
/// Assouad-dimension lower bound (the box dimension of a carpet is a true limit).
DimensionSpectrum carpet_spectrum(const CarpetSpec& spec, std::span<const Theta> grid,
                                  std::optional<double> assouad = std::nullopt);

/// All images of a point of the carpet under words of length `level`
/// (|D|^level points in [0,1]^2).
PointCloud carpet_points(const CarpetSpec& spec, int level);

}  // namespace dimspect
