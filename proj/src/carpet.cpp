#include "dimspect/carpet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "dimspect/formulas.hpp"

namespace dimspect {

namespace {

std::map<int, int> factorize(int v) {
  std::map<int, int> f;
  for (int p = 2; p * p <= v; ++p) {
    while (v % p == 0) {
      ++f[p];
      v /= p;
    }
  }
  if (v > 1) ++f[v];
  return f;
}

// m^k == n^j, decided on prime exponents
bool powers_equal(int m, long long k, int n, long long j) {
  auto fm = factorize(m);
  auto fn = factorize(n);
  if (fm.size() != fn.size()) return false;
  for (const auto& [p, e] : fm) {
    auto it = fn.find(p);
    if (it == fn.end() || static_cast<long long>(e) * k != static_cast<long long>(it->second) * j) {
      return false;
    }
  }
  return true;
}

void check_word(const CarpetSpec& spec, std::span<const std::size_t> word) {
  if (word.empty()) throw InvalidArgument("approximate square word is empty");
  for (auto i : word) {
    if (i >= spec.size()) throw InvalidArgument("digit index out of range");
  }
}

}  // namespace

CarpetSpec::CarpetSpec(int m, int n, std::vector<Digit> digits)
    : m_(m), n_(n), digits_(std::move(digits)) {
  if (m < 2) throw InvalidArgument("carpet needs m >= 2");
  if (n <= m) throw InvalidArgument("carpet needs n > m");
  if (digits_.size() < 2) throw InvalidArgument("carpet needs at least two digits");
  for (const auto& d : digits_) {
    if (d.col < 0 || d.col >= m || d.row < 0 || d.row >= n) {
      throw InvalidArgument("digit (" + std::to_string(d.col) + "," + std::to_string(d.row) +
                            ") outside the grid");
    }
  }
  std::sort(digits_.begin(), digits_.end());
  if (std::adjacent_find(digits_.begin(), digits_.end()) != digits_.end()) {
    throw InvalidArgument("duplicate digit in carpet");
  }
}

CarpetDerived mcmullen_weights(const CarpetSpec& spec) {
  CarpetDerived out{};
  out.column_counts.assign(static_cast<std::size_t>(spec.m()), 0);
  for (const auto& d : spec.digits()) ++out.column_counts[static_cast<std::size_t>(d.col)];
  int common = 0;
  out.uniform_columns = true;
  for (int c : out.column_counts) {
    if (c == 0) continue;
    ++out.m0;
    if (common == 0) common = c;
    if (c != common) out.uniform_columns = false;
  }
  const double log_m = std::log(static_cast<double>(spec.m()));
  const double log_n = std::log(static_cast<double>(spec.n()));
  out.L = log_m / log_n;
  double md = 0.0;
  for (int c : out.column_counts) {
    if (c > 0) md += std::pow(static_cast<double>(c), out.L);
  }
  out.d = std::log(md) / log_m;
  out.a_max = 0;
  for (const auto& d : spec.digits()) {
    const int a = out.column_counts[static_cast<std::size_t>(d.col)];
    out.a.push_back(a);
    out.a_max = std::max(out.a_max, a);
    out.b.push_back(std::pow(static_cast<double>(a), out.L - 1.0) / md);
  }
  double h = 0.0;
  for (double b : out.b) h -= b * std::log(b);
  out.entropy = h;
  return out;
}

double box_dim(const CarpetSpec& spec) {
  const auto dv = mcmullen_weights(spec);
  const double m0 = dv.m0;
  const double size = static_cast<double>(spec.size());
  return std::log(m0) / std::log(static_cast<double>(spec.m())) +
         (std::log(size) - std::log(m0)) / std::log(static_cast<double>(spec.n()));
}

double hausdorff_dim(const CarpetSpec& spec) { return mcmullen_weights(spec).d; }

double entropy(const CarpetSpec& spec) { return mcmullen_weights(spec).entropy; }

double entropy_closed_form(const CarpetSpec& spec) {
  const auto dv = mcmullen_weights(spec);
  const double log_m = std::log(static_cast<double>(spec.m()));
  double acc = 0.0;
  for (int a : dv.a) {
    const double la = std::log(static_cast<double>(a));
    acc += std::exp((dv.L - 1.0) * la) * ((dv.L - 1.0) * la - dv.d * log_m);
  }
  return -std::exp(-dv.d * log_m) * acc;
}

long long approx_square_row_depth(const CarpetSpec& spec, long long k) {
  if (k < 0) throw InvalidArgument("word length must be non-negative");
  const double x = static_cast<double>(k) * std::log(static_cast<double>(spec.m())) /
                   std::log(static_cast<double>(spec.n()));
  const long long r = std::llround(x);
  if (std::fabs(x - static_cast<double>(r)) < 1e-9) {
    if (powers_equal(spec.m(), k, spec.n(), r)) return r;
    return x < static_cast<double>(r) ? r - 1 : r;
  }
  return static_cast<long long>(std::floor(x));
}

double rectangle_measure(const CarpetSpec& spec, std::span<const std::size_t> word) {
  check_word(spec, word);
  const auto dv = mcmullen_weights(spec);
  double logmu = 0.0;
  for (auto i : word) logmu += std::log(dv.b[i]);
  return std::exp(logmu);
}

double approx_square_measure(const CarpetSpec& spec, std::span<const std::size_t> word) {
  check_word(spec, word);
  const auto dv = mcmullen_weights(spec);
  const auto k = static_cast<long long>(word.size());
  const auto l = approx_square_row_depth(spec, k);
  double acc = -static_cast<double>(k) * dv.d * std::log(static_cast<double>(spec.m()));
  for (long long j = 0; j < k; ++j) acc += dv.L * std::log(static_cast<double>(dv.a[word[j]]));
  for (long long j = 0; j < l; ++j) acc -= std::log(static_cast<double>(dv.a[word[j]]));
  return std::exp(acc);
}

double approx_square_measure_rect(const CarpetSpec& spec, std::span<const std::size_t> word) {
  check_word(spec, word);
  const auto dv = mcmullen_weights(spec);
  const auto k = static_cast<long long>(word.size());
  const auto l = approx_square_row_depth(spec, k);
  double acc = -static_cast<double>(k) * dv.d * std::log(static_cast<double>(spec.m()));
  for (long long j = 0; j < k; ++j) {
    acc += (dv.L - 1.0) * std::log(static_cast<double>(dv.a[word[j]]));
  }
  for (long long j = l; j < k; ++j) acc += std::log(static_cast<double>(dv.a[word[j]]));
  return std::exp(acc);
}

double upper_bound_gap(const CarpetSpec& spec, Theta theta) {
  const double t = theta.value();
  if (!(t > 0.0 && t < 1.0)) throw DomainError("the carpet upper bound gap needs 0 < theta < 1");
  const auto dv = mcmullen_weights(spec);
  const double log_m = std::log(static_cast<double>(spec.m()));
  const double log_n = std::log(static_cast<double>(spec.n()));
  return 2.0 * std::log(log_n / log_m) * std::log(static_cast<double>(dv.a_max)) /
         (log_n * (-std::log(t)));
}

bool upper_bound_valid(const CarpetSpec& spec, Theta theta) {
  const double L = std::log(static_cast<double>(spec.m())) / std::log(static_cast<double>(spec.n()));
  return theta.value() > 0.0 && theta.value() < 0.25 * L * L;
}

double upper_bound_theta(const CarpetSpec& spec, Theta theta) {
  const auto dv = mcmullen_weights(spec);
  if (dv.uniform_columns) return dv.d;
  if (!upper_bound_valid(spec, theta)) {
    throw DomainError("carpet upper bound holds only for 0 < theta < (log_n m)^2/4");
  }
  return std::min(dv.d + upper_bound_gap(spec, theta), box_dim(spec));
}

double lower_bound_theta(const CarpetSpec& spec, Theta theta) {
  const auto dv = mcmullen_weights(spec);
  if (dv.uniform_columns) return dv.d;
  const double slope = (std::log(static_cast<double>(spec.size())) - dv.entropy) /
                       std::log(static_cast<double>(spec.m()));
  return dv.d + theta.value() * std::max(0.0, slope);
}

DimensionSpectrum carpet_spectrum(const CarpetSpec& spec, std::span<const Theta> grid,
                                  std::optional<double> assouad) {
  const auto dv = mcmullen_weights(spec);
  // the full grid gives 2 up to rounding
  const double d = std::min(dv.d, 2.0);
  const double box = std::min(box_dim(spec), 2.0);
  std::optional<BoundInputs> inputs;
  if (assouad) {
    inputs = BoundInputs{d, box, box, *assouad, 2};
    inputs->validate();
  }
  std::vector<SpectrumSample> out;
  out.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Theta t = grid[j];
    if (t.value() == 0.0 || dv.uniform_columns) {
      // at theta = 0 both bounds meet at dim_H; uniform columns are constant
      out.push_back({t, d, d, Method::exact});
      continue;
    }
    double lower = std::max(lower_bound_theta(spec, t), d);
    if (inputs) lower = std::max(lower, assouad_lower_bound(*inputs, t, false));

    double upper = box;
    const bool valid = upper_bound_valid(spec, t);
    if (valid) upper = std::min(upper, upper_bound_theta(spec, t));
    for (std::size_t i = 0; i < j; ++i) {
      if (out[i].theta.value() > 0.0) {
        upper = std::min(upper, envelope_bound(out[i].upper, out[i].theta, t, 2));
      }
    }
    const Method method = (valid || upper < box) ? Method::bound : Method::trivial;
    out.push_back({t, std::min(lower, 2.0), upper, method});
  }
  return DimensionSpectrum(2, std::move(out));
}

PointCloud carpet_points(const CarpetSpec& spec, int level) {
  if (level < 0) throw InvalidArgument("carpet level must be non-negative");
  const double count = std::pow(static_cast<double>(spec.size()), level);
  if (count > 4e6) throw NumericRangeError("carpet level produces too many points");
  const double m = spec.m();
  const double n = spec.n();
  const Digit first = spec.digits().front();
  std::vector<Point> pts{{first.col / (m - 1.0), first.row / (n - 1.0), 0.0}};
  for (int k = 0; k < level; ++k) {
    std::vector<Point> next;
    next.reserve(pts.size() * spec.size());
    for (const auto& d : spec.digits()) {
      for (const auto& p : pts) next.push_back({(p[0] + d.col) / m, (p[1] + d.row) / n, 0.0});
    }
    pts = std::move(next);
  }
  return PointCloud(2, std::move(pts));
}

}  // namespace dimspect
