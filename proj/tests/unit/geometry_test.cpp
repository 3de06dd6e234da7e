#include <doctest.h>

#include <cmath>
#include <numbers>

#include "obtk/errors.hpp"
#include "obtk/geometry.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/rng.hpp"
#include "obtk/verify.hpp"

using obtk::Domain;
using obtk::Point;

namespace {

constexpr double kPi = std::numbers::pi;

// Area of the intersection of two discs of radii a, b whose centers are d apart.
double lens_area(double a, double b, double d) {
  if (d >= a + b) return 0.0;
  if (d <= std::abs(a - b)) return kPi * std::min(a, b) * std::min(a, b);
  const double ca = std::acos((d * d + a * a - b * b) / (2.0 * d * a));
  const double cb = std::acos((d * d + b * b - a * a) / (2.0 * d * b));
  const double k = std::sqrt((-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b));
  return a * a * ca + b * b * cb - 0.5 * k;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("factories report diameter and exact area") {
    const auto ball = Domain::ball({1.0, -2.0}, 0.5);
    CHECK(ball.diam() == doctest::Approx(1.0));
    CHECK(*ball.exact_area() == doctest::Approx(kPi * 0.25));
    const auto box = Domain::box({0.0, 0.0}, {3.0, 4.0});
    CHECK(box.diam() == doctest::Approx(5.0));
    CHECK(*box.exact_area() == doctest::Approx(12.0));
    const auto cusp = Domain::cusp(2.0);
    CHECK(*cusp.exact_area() == doctest::Approx(2.0 / 3.0));
    const auto tri = Domain::polygon({{0.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}});
    CHECK(*tri.exact_area() == doctest::Approx(1.0));
    CHECK(tri.diam() == doctest::Approx(std::sqrt(5.0)));
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(Domain::ball({0.0, 0.0}, 0.0), obtk::ValidationError);
    CHECK_THROWS_AS(Domain::box({0.0, 0.0}, {0.0, 1.0}), obtk::ValidationError);
    CHECK_THROWS_AS(Domain::cusp(1.0), obtk::ValidationError);
    CHECK_THROWS_AS(Domain::polygon({{0.0, 0.0}, {1.0, 1.0}}), obtk::ValidationError);
    CHECK_THROWS_AS(Domain::parse("disk:0,0,1"), obtk::ValidationError);
    CHECK_THROWS_AS(Domain::parse("ball:0,0"), obtk::ValidationError);
  }

  TEST_CASE("spec strings round-trip") {
    for (const char* s : {"ball:0,0,1", "box:0,0,1,2.5", "cusp:2", "poly:0,0;1,0;1,1;0,1",
                          "ball:-0.25,1e-3,0.75"}) {
      const auto d = Domain::parse(s);
      CHECK(Domain::parse(d.spec()) == d);
      CHECK(Domain::parse(d.spec()).bbox() == d.bbox());
    }
  }

  TEST_CASE("membership") {
    const auto cusp = Domain::cusp(2.0);
    CHECK(cusp.contains({0.5, 0.2}));
    CHECK_FALSE(cusp.contains({0.5, 0.3}));
    CHECK_FALSE(cusp.contains({0.0, 0.0}));
    const auto l = Domain::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    CHECK(l.contains({0.5, 1.5}));
    CHECK_FALSE(l.contains({1.5, 1.5}));
  }

  TEST_CASE("ray segments are exact on the ball and the box") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    auto seg = ball.ray_segments({0.5, 0.0}, {1.0, 0.0}, 10.0);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].first == doctest::Approx(0.0));
    CHECK(seg[0].second == doctest::Approx(0.5));
    seg = ball.ray_segments({-3.0, 0.0}, {1.0, 0.0}, 10.0);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].first == doctest::Approx(2.0));
    CHECK(seg[0].second == doctest::Approx(4.0));
    const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
    seg = box.ray_segments({0.5, 0.5}, {std::sqrt(0.5), std::sqrt(0.5)}, 10.0);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].second == doctest::Approx(std::sqrt(0.5)));
  }

  TEST_CASE("cusp ray segments match the boundary curve") {
    const auto cusp = Domain::cusp(2.0);
    // Vertical ray from (0.5, 0): leaves at x2 = 0.25.
    const auto seg = cusp.ray_segments({0.5, 0.0}, {0.0, 1.0}, 1.0);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].second == doctest::Approx(0.25).epsilon(1e-6));
  }

  TEST_CASE("ball intersection matches the lens area") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    obtk::QuadratureSpec spec;
    spec.n_measure = 65536;
    for (double d : {0.3, 1.0, 1.6}) {
      for (double r : {0.5, 1.0}) {
        const auto est = obtk::measure_ball_intersection(ball, {d, 0.0}, r, spec);
        CAPTURE(d);
        CAPTURE(r);
        CHECK(est.value == doctest::Approx(lens_area(1.0, r, d)).epsilon(0.01));
        CHECK(std::abs(est.value - lens_area(1.0, r, d)) <= 5.0 * est.std_err + 1e-12);
      }
    }
    CHECK(lens_area(1.0, 1.0, 1.0) == doctest::Approx(2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0));
  }

  TEST_CASE("sampled regularity constants of ball and box") {
    obtk::QuadratureSpec spec;
    const auto ball = obtk::regularity_constant(Domain::ball({0, 0}, 1.0), 64, 24, spec);
    CHECK(ball.theta_hat == doctest::Approx(kPi / 16.0).epsilon(0.1));
    const auto box = obtk::regularity_constant(Domain::box({0, 0}, {1, 1}), 64, 24, spec);
    CHECK(box.theta_hat == doctest::Approx(1.0 / 8.0).epsilon(0.15));
    // An upper bound on the infimum by construction.
    CHECK(ball.theta_hat <= obtk::local_density(Domain::ball({0, 0}, 1.0), ball.witness_point,
                                                ball.witness_radius, spec) + 1e-12);
  }

  TEST_CASE("density near the cusp tip decays like eps^(gamma - 1)") {
    const auto cusp = Domain::cusp(2.0);
    obtk::QuadratureSpec spec;
    spec.n_measure = 65536;
    std::vector<double> eps;
    std::vector<double> dens;
    for (int k = 4; k <= 9; ++k) {
      const double e = std::ldexp(1.0, -k);
      eps.push_back(e);
      dens.push_back(obtk::local_density(cusp, {e, 0.0}, e, spec));
    }
    CHECK(obtk::loglog_slope(eps, dens) == doctest::Approx(1.0).epsilon(0.15));
  }

  TEST_CASE("dyadic radii on the ball halve the area per level") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    const auto b = obtk::dyadic_radii(ball, {0.0, 0.0}, 0.5, 6, obtk::QuadratureSpec{});
    REQUIRE(b.size() == 7);
    for (std::size_t j = 0; j < b.size(); ++j) {
      CHECK(std::abs(b[j] / std::pow(2.0, -0.5 * j) - 1.0) <= 0.01);
    }
    // Corner of the unit box: quarter discs also scale like b^2.
    const auto q = obtk::dyadic_radii(Domain::box({0, 0}, {1, 1}), {0.0, 0.0}, 0.5, 2,
                                      obtk::QuadratureSpec{});
    REQUIRE(q.size() == 3);
    CHECK(std::abs(q[2] / 0.5 - 1.0) <= 0.01);
    CHECK_THROWS_AS(obtk::dyadic_radii(ball, {2.0, 0.0}, 0.5, 3, obtk::QuadratureSpec{}),
                    obtk::DomainError);
  }

  TEST_CASE("annulus factor and non-empty annuli") {
    CHECK(obtk::annulus_factor(kPi / 16.0) == doctest::Approx(std::sqrt(32.0) + 2.0));
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    CHECK(obtk::annulus_nonempty(ball, kPi / 16.0, {0.0, 0.0}, 0.1, obtk::QuadratureSpec{}));
  }

  TEST_CASE("rejection sampling stays inside the domain") {
    obtk::Rng rng(3);
    const auto cusp = Domain::cusp(3.0);
    for (int i = 0; i < 1000; ++i) CHECK(cusp.contains(cusp.sample_point(rng)));
  }
}
