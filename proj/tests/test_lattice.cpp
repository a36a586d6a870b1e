#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hyperpascal/errors.hpp"
#include "hyperpascal/lattice.hpp"
#include "oracles.hpp"

using namespace hyperpascal;

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Visits every integer point of [lo, hi]^dim.
template <typename F>
void for_box(int dim, int lo, int hi, F&& f) {
  std::vector<double> p(static_cast<std::size_t>(dim), lo);
  while (true) {
    f(LatticePoint(p));
    int i = dim - 1;
    while (i >= 0 && p[static_cast<std::size_t>(i)] == hi) {
      p[static_cast<std::size_t>(i)] = lo;
      --i;
    }
    if (i < 0) return;
    p[static_cast<std::size_t>(i)] += 1.0;
  }
}

}  // namespace

TEST_CASE("LatticePoint validation") {
  CHECK_THROWS_AS(LatticePoint({1.0}), DomainError);
  CHECK_THROWS_AS(LatticePoint({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(LatticePoint({1.0, INFINITY}), DomainError);
  const LatticePoint p{2.0, -1.0, 0.5};
  CHECK(p.dim() == 3);
  CHECK(p.sum() == 1.5);
  CHECK_FALSE(p.is_integral());
  CHECK(p.decremented(1)[1] == -2.0);
  CHECK(LatticePoint{1.0, -3.0}.is_integral());
}

TEST_CASE("point_value examples") {
  const RegularizedValue pos = point_value({2.0, 3.0});
  CHECK(pos.kind == ValueKind::Finite);
  CHECK(pos.value == 10.0);

  const RegularizedValue pyramid = point_value({-3.0, 1.0});
  CHECK(pyramid.kind == ValueKind::Finite);
  CHECK(pyramid.value == -2.0);

  CHECK(point_value({-1.0, -1.0}).kind == ValueKind::ZeroByPoles);
  CHECK(point_value({1.0, -1.0}).kind == ValueKind::ZeroByPoles);
  CHECK(point_value({-1.0, 0.0}).value == 1.0);

  CHECK(point_value({0.5, 0.5}).value == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(point_value({-0.5, 0.5}).value == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));

  const RegularizedValue div = point_value({-1.5, 0.5});
  CHECK(div.kind == ValueKind::Divergent);
  CHECK_THROWS_AS(div.as_real(), DivergentCoefficientError);

  // Non-integer point with a denominator pole: zero.
  CHECK(point_value({-2.0, 0.5}).kind == ValueKind::ZeroByPoles);
  CHECK(point_value({-2.0, 0.5}).as_real() == 0.0);
}

TEST_CASE("three-dimensional identity 2 / Gamma(5/3)^3") {
  const double third = 2.0 / 3.0;
  const RegularizedValue v = point_value({third, third, third});
  CHECK(v.kind == ValueKind::Finite);
  CHECK(std::abs(v.value - 2.71853105044400928535) <= 1e-12 * 2.71853105044400928535);
}

TEST_CASE("multinomial_coefficient") {
  CHECK(multinomial_coefficient({2.0, 3.0}) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(multinomial_coefficient({1.0, 1.0, 1.0}) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(multinomial_coefficient({0.5, 0.5}) == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-13));
  CHECK_THROWS_AS(multinomial_coefficient({-1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(multinomial_coefficient({-1.5, 2.0}), DomainError);
  CHECK_THROWS_AS(multinomial_coefficient({-0.5, -0.5}), DomainError);
}

TEST_CASE("recurrence residual examples") {
  CHECK(recurrence_residual({2.0, 3.0}) == 0.0);
  CHECK(recurrence_residual({-3.0, 1.0}) == 0.0);
  CHECK(recurrence_residual({0.0, 0.0}) == -1.0);
  CHECK(recurrence_residual({0.0, 0.0, 0.0}) == -2.0);
  CHECK(std::abs(recurrence_residual({0.3, 1.9})) < 1e-13);
  CHECK_THROWS_AS(recurrence_residual({-1.5, 0.5}), DivergentCoefficientError);
}

TEST_CASE("construction law holds on integer boxes except at the origin") {
  for (int dim : {2, 3}) {
    const int w = dim == 2 ? 8 : 5;
    int offenders = 0;
    for_box(dim, -w, w, [&](const LatticePoint& p) {
      const double r = recurrence_residual(p);
      bool origin = true;
      for (double c : p.coords()) origin = origin && c == 0.0;
      if (origin) {
        CHECK(r == -(dim - 1.0));
        ++offenders;
      } else {
        const double scale = 1.0 + std::abs(point_value(p).as_real());
        if (std::abs(r) > 1e-9 * scale) ++offenders;
      }
    });
    CHECK(offenders == 1);
  }
}

TEST_CASE("construction law holds at random off-lattice points") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 1000; ++i) {
    const LatticePoint p{dist(rng), dist(rng), dist(rng)};
    double r = 0.0;
    try {
      r = recurrence_residual(p);
    } catch (const DivergentCoefficientError&) {
      continue;
    }
    double scale = 1.0 + std::abs(point_value(p).as_real());
    for (std::size_t a = 0; a < 3; ++a) scale += std::abs(point_value(p.decremented(a)).as_real());
    CHECK(std::abs(r) <= 1e-11 * scale);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("point_value matches the finite-h libm oracle") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> whole(-6, 6);
  std::uniform_int_distribution<int> quarter(0, 3);
  std::uniform_int_distribution<int> dim_dist(2, 4);
  const double h = 1e-7;
  int finite = 0;
  int zero = 0;
  int divergent = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> c(static_cast<std::size_t>(dim_dist(rng)));
    for (double& x : c) x = whole(rng) + (quarter(rng) == 0 ? 0.5 : 0.0);
    const RegularizedValue v = point_value(LatticePoint(c));
    const double ref = oracle::small_h_point_value(c, h);
    // Shrinking h tenfold scales a zero down and a divergence up.
    const double ratio = std::abs(oracle::small_h_point_value(c, h / 10.0) / ref);
    switch (v.kind) {
      case ValueKind::Finite:
        CHECK(std::abs(v.value - ref) <= 1e-4 * std::max(1.0, std::abs(v.value)));
        ++finite;
        break;
      case ValueKind::ZeroByPoles:
        CHECK(ratio < 0.2);
        ++zero;
        break;
      case ValueKind::Divergent:
        CHECK(ratio > 5.0);
        ++divergent;
        break;
    }
  }
  CHECK(finite > 100);
  CHECK(zero > 100);
  CHECK(divergent > 10);
}

TEST_CASE("integer values round-trip through the exact multinomial") {
  for (int dim = 2; dim <= 4; ++dim) {
    for (int n = 0; n <= 20; n += (dim == 4 ? 4 : 1)) {
      const LayerTable layer = generate_layer(dim, n);
      CHECK(layer.entries.size() == static_cast<std::size_t>(composition_count(dim, n)));
      double total = 0.0;
      for (const auto& [comp, value] : layer.entries) {
        CHECK(std::accumulate(comp.begin(), comp.end(), 0) == n);
        std::vector<double> c(comp.begin(), comp.end());
        std::vector<std::int64_t> parts(comp.begin(), comp.end());
        CHECK(point_value(LatticePoint(c)).value == value);
        CHECK(exact_multinomial(parts) == value);
        total += value;
      }
      CHECK(close_rel(total, std::pow(dim, n), 1e-12));
    }
  }
}

TEST_CASE("generate_layer ordering and caps") {
  const LayerTable t = generate_layer(3, 2);
  REQUIRE(t.entries.size() == 6);
  auto it = t.entries.begin();
  CHECK(it->first == std::vector<int>{0, 0, 2});
  CHECK(it->second == 1.0);
  ++it;
  CHECK(it->first == std::vector<int>{0, 1, 1});
  CHECK(it->second == 2.0);
  CHECK(t.entries.rbegin()->first == std::vector<int>{2, 0, 0});
  CHECK(composition_count(3, 2) == 6.0);
  CHECK(composition_count(4, 10) == 286.0);
  CHECK_THROWS_AS(generate_layer(3, 100, 10), ResourceError);
  CHECK_THROWS_AS(generate_layer(1, 2), DomainError);
  CHECK_THROWS_AS(generate_layer(2, -1), DomainError);
}

TEST_CASE("classify_region examples") {
  CHECK(classify_region({2.0, 3.0}).kind == RegionTag::Kind::Nonnegative);
  const RegionTag t = classify_region({-3.0, 1.0});
  CHECK(t.kind == RegionTag::Kind::NegativePyramid);
  CHECK(t.axis == 0);
  CHECK(classify_region({1.0, 0.0, -4.0}).axis == 2);
  CHECK(classify_region({-1.0, -1.0}).kind == RegionTag::Kind::ZeroSet);
  CHECK(classify_region({1.0, -1.0}).kind == RegionTag::Kind::ZeroSet);
  CHECK(classify_region({0.5, 1.0}).kind == RegionTag::Kind::OffLattice);
}

TEST_CASE("region structure of integer points") {
  for_box(3, -5, 5, [](const LatticePoint& p) {
    int negatives = 0;
    int neg_axis = -1;
    for (std::size_t i = 0; i < 3; ++i) {
      if (p[i] < 0) {
        ++negatives;
        neg_axis = static_cast<int>(i);
      }
    }
    const RegionTag tag = classify_region(p);
    const RegularizedValue v = point_value(p);
    if (negatives == 0) {
      CHECK(tag.kind == RegionTag::Kind::Nonnegative);
      CHECK(v.value > 0.0);
    } else if (negatives == 1 && p.sum() < 0) {
      CHECK(tag.kind == RegionTag::Kind::NegativePyramid);
      CHECK(tag.axis == neg_axis);
      // (-1)^(sum of the other coordinates) times a multinomial.
      double others = 0.0;
      std::vector<std::int64_t> parts;
      for (std::size_t i = 0; i < 3; ++i) {
        if (static_cast<int>(i) == neg_axis) continue;
        others += p[i];
        parts.push_back(static_cast<std::int64_t>(p[i]));
      }
      parts.push_back(static_cast<std::int64_t>(-p.sum() - 1.0));
      const double sign = std::fmod(others, 2.0) == 0.0 ? 1.0 : -1.0;
      CHECK(v.value == sign * exact_multinomial(parts));
    } else {
      CHECK(tag.kind == RegionTag::Kind::ZeroSet);
      CHECK(v.kind == ValueKind::ZeroByPoles);
    }
  });
}

TEST_CASE("region maps have dim + 1 components") {
  CHECK(region_component_count(2, 6) == 3);
  CHECK(region_component_count(3, 4) == 4);
  CHECK(region_component_count(4, 3) == 5);
  const RegionMap m = region_map(2, 3);
  CHECK(m.points.size() == 49);
  CHECK(m.tags.size() == 49);
  CHECK(m.points.front() == std::vector<int>{-3, -3});
  CHECK(m.components == 3);
  CHECK_THROWS_AS(region_map(1, 3), DomainError);
  CHECK_THROWS_AS(region_map(2, 1), DomainError);
}
