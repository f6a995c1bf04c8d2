#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dimspect/covers.hpp"
#include "dimspect/estimate.hpp"

using namespace dimspect;

namespace {

PointCloud line(std::vector<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, 0, 0});
  return PointCloud(1, std::move(pts));
}

// every split of the sorted points into consecutive blocks
double brute_cost(const std::vector<double>& xs, const std::vector<double>& menu, double s) {
  const std::size_t n = xs.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    double total = 0;
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (i + 1 == n || (mask >> i) & 1u) {
        const double span = xs[i] - xs[start];
        double w = std::numeric_limits<double>::infinity();
        for (double d : menu)
          if (d >= span) w = std::min(w, std::pow(d, s));
        ok = std::isfinite(w);
        total += w;
        start = i + 1;
      }
    }
    if (ok) best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST_CASE("cover sets") {
  auto c = make_cover_set(2, {0, 0, 0}, 1.0);
  CHECK(c.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(c.contains({1.0, 1.0, 0}));
  CHECK_FALSE(c.contains({1.1, 0.5, 0}));
  CHECK(make_cover_set(1, {0.5, 0, 0}, 0.25).diameter() == doctest::Approx(0.25));
}

TEST_CASE("geometric menu") {
  auto m = geometric_menu(1e-4, 1e-2, 3);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 1e-4);
  CHECK(m[1] == doctest::Approx(1e-3));
  CHECK(m[2] == 1e-2);
  CHECK(geometric_menu(0.01, 0.01, 8).size() == 1);
}

TEST_CASE("1-D cover of a single point") {
  const ScaleRange r(0.01, Theta(0.5));
  auto c = optimal_cover_1d(line({0.3}), r, 0.5);
  REQUIRE(c.size() == 1);
  CHECK(c.sets()[0].diameter() == doctest::Approx(1e-4));
  CHECK(c.cost() == doctest::Approx(std::pow(1e-4, 0.5)));
}

TEST_CASE("1-D cover of two far points") {
  const ScaleRange r(0.01, Theta(0.5));
  const auto pts = line({0.1, 0.9});
  auto c = optimal_cover_1d(pts, r, 0.5);
  CHECK(c.size() == 2);
  CHECK(c.cost() == doctest::Approx(2 * std::pow(1e-4, 0.5)));
  CHECK(c.covers(pts));
  CHECK(c.admissible());
}

TEST_CASE("1-D DP matches exhaustive search") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(2 + trial % 7);
    for (auto& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const auto menu = geometric_menu(1e-4, 0.03, 2 + trial % 6);
    const double s = 0.1 + 0.8 * (trial % 9) / 8.0;
    CHECK(optimal_cost_1d(xs, menu, s) == doctest::Approx(brute_cost(xs, menu, s)).epsilon(1e-12));
  }
}

TEST_CASE("F_1 on 40 points, menu of 8") {
  const auto pts = sequence_points(1.0, 39);
  REQUIRE(pts.size() == 40);
  const ScaleRange r(0.05, Theta(0.5));
  auto c = optimal_cover_1d(pts, r, 1.0 / 3, 8);
  CHECK(c.covers(pts));
  CHECK(c.admissible());
  std::vector<double> xs;
  for (const auto& p : pts.points()) xs.push_back(p[0]);
  const auto b = search_bounds(r);
  CHECK(c.cost() == doctest::Approx(optimal_cost_1d(xs, geometric_menu(b.lo, b.hi, 8), 1.0 / 3)));
  // cost_at agrees with the stored cost exactly
  CHECK(c.cost_at(1.0 / 3) == c.cost());
}

TEST_CASE("dyadic cover of one point sits at the deepest level") {
  const ScaleRange r(0.01, Theta(0.5));
  const PointCloud one(2, {{0.3, 0.7, 0}});
  auto c = optimal_cover_dyadic(one, r, 0.7);
  REQUIRE(c.size() == 1);
  CHECK(c.admissible());
  const double diam = c.sets()[0].diameter();
  CHECK(c.cost() == doctest::Approx(std::pow(diam, 0.7)));
  CHECK(diam >= 1e-4 * (1 - 1e-12));
  CHECK(diam < 2e-4);
}

TEST_CASE("dyadic covers are admissible and cover the points") {
  const auto pts = sequence_points(1.0, 500);
  for (auto anchor : {DyadicAnchor::unit_box, DyadicAnchor::top_scale}) {
    const ScaleRange r(0.01, Theta(0.5));
    auto c = optimal_cover_dyadic(pts, r, 0.4, anchor);
    CHECK(c.covers(pts));
    CHECK(c.admissible());
    DyadicTree tree(pts, r, anchor);
    CHECK(c.cost() == doctest::Approx(tree.cost(0.4)));
  }
}

TEST_CASE("dyadic cost is identical serial and parallel") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> v(5000);
  for (auto& p : v) p = {u(rng), u(rng), 0};
  const PointCloud pts(2, v);
  DyadicTree tree(pts, ScaleRange(1e-2, Theta(0.4)), DyadicAnchor::top_scale);
  for (double s : {0.0, 0.5, 1.3, 2.0}) CHECK(tree.cost(s, Exec::parallel) == tree.cost_reference(s));
}

TEST_CASE("refine leaves an admissible cover unchanged") {
  const ScaleRange r(0.1, Theta(0.25));
  RestrictedCover c({make_cover_set(1, {0, 0, 0}, 0.05)}, r, 0.5);
  auto out = refine_cover(c, Theta(0.5), 0.1);
  REQUIRE(out.size() == 1);
  CHECK(out.sets()[0].side == 0.05);
}

TEST_CASE("refine splits a large interval into few pieces") {
  // band [0.01, 0.316] refined to [0.01, 0.1]
  const double top = std::pow(0.01, 0.25);
  RestrictedCover c({make_cover_set(1, {0, 0, 0}, top)}, ScaleRange(top, Theta(0.25)), 0.5);
  auto out = refine_cover(c, Theta(0.5), 0.1);
  CHECK(out.admissible());
  CHECK(out.size() <= 12);
  CHECK(static_cast<double>(out.size()) <= refine_constant(1) * std::pow(0.01, -0.25));
  const auto probe = line({0.0, top / 3, top / 2, top});
  CHECK(out.covers(probe));
  CHECK(refine_constant(1) == 4.0);
  CHECK(refine_constant(2) == doctest::Approx(32.0));
}

TEST_CASE("refine grows small sets to the new floor") {
  RestrictedCover c({make_cover_set(1, {0.5, 0, 0}, 1e-6)}, ScaleRange(1e-3, Theta(0.5)), 0.5);
  auto out = refine_cover(c, Theta(1.0), 1e-3);
  REQUIRE(out.size() == 1);
  CHECK(out.sets()[0].diameter() == doctest::Approx(1e-3));
  CHECK(out.sets()[0].contains({0.5 + 5e-7, 0, 0}));
}

TEST_CASE("F_p witness cover") {
  const double p = 1.0, t = 0.5, s = t / (p + t);
  const auto c = fp_witness_cover(p, 1e-4, Theta(t), s);
  CHECK(c.cost() <= 3.0);
  CHECK(c.admissible());
  CHECK(c.covers(sequence_points(p, 20000)));

  // above the critical value the cost falls at every step; below it the
  // trend is upward but ceil(M) makes single steps wobble
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 2; j <= 6; ++j) {
    const double hi = fp_witness_cover(p, std::pow(10.0, -j), Theta(t), s + 0.05).cost();
    CHECK(hi < prev);
    prev = hi;
  }
  CHECK(fp_witness_cover(p, 1e-10, Theta(t), s + 0.05).cost() < 1.0);
  const double lo2 = fp_witness_cover(p, 1e-2, Theta(t), s - 0.05).cost();
  const double lo6 = fp_witness_cover(p, 1e-6, Theta(t), s - 0.05).cost();
  const double lo10 = fp_witness_cover(p, 1e-10, Theta(t), s - 0.05).cost();
  CHECK(lo6 > lo2);
  CHECK(lo10 > lo6);
  CHECK(lo10 > 1.5 * lo2);
}
