#include <doctest.h>

#include <cmath>
#include <numbers>

#include "obtk/errors.hpp"
#include "obtk/norms.hpp"

using obtk::Domain;
using obtk::ScalarField;
using obtk::YoungFunction;

namespace {

constexpr double kPi = std::numbers::pi;

// Tensor Gauss-Legendre on [0, 1]^2 after a Duffy split, for
//   I = int int_{Q x Q} |x1 - y1|^{1.5} |x - y|^{-2.5} dx dy,  Q = [0, 1]^2.
// With h = x - y the integral is 4 int_{[0,1]^2} h1^{1.5} |h|^{-2.5} (1 - h1)(1 - h2) dh;
// on each triangle the substitution h_small = h_big v removes the singularity.
double box_coordinate_oracle() {
  // 40-point Gauss-Legendre by Newton iteration, written out independently.
  const int m = 40;
  std::vector<double> x(m);
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        x[i] = 0.5 * (z + 1.0);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
        break;
      }
    }
  }
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double a = x[i];  // the larger component
      const double v = x[j];
      const double k = std::pow(1.0 + v * v, -1.25);
      // h2 = a v <= h1 = a, and h1 = a v <= h2 = a.
      sum += w[i] * w[j] * k * ((1.0 - a) * (1.0 - a * v) + std::pow(v, 1.5) * (1.0 - a * v) * (1.0 - a));
    }
  }
  return 4.0 * sum;
}

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("Besov and Gagliardo seminorms of x1 on the unit box match the tensor oracle") {
    const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
    const auto u = ScalarField::coordinate(1);
    const double oracle = std::pow(box_coordinate_oracle(), 1.0 / 1.5);
    const auto spec = obtk::QuadratureSpec{};
    const auto g = obtk::gagliardo_seminorm(u, box, 1.0 / 3.0, 1.5, spec);
    CHECK(g.value == doctest::Approx(oracle).epsilon(0.02));
    const auto b = obtk::besov_seminorm(u, box, YoungFunction::power(1.5), -1.0, spec);
    CHECK(b.value == doctest::Approx(oracle).epsilon(0.02));
    CHECK(b.modular == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("Orlicz and Lebesgue norms of simple fields") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
    obtk::QuadratureSpec spec;
    // ||1||_{t^2} on the disc solves pi / lambda^2 = 1.
    CHECK(obtk::orlicz_norm(ScalarField::constant(1.0), ball, YoungFunction::power(2.0), spec) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(2e-3));
    CHECK(obtk::lebesgue_norm(ScalarField::coordinate(1), box, 2.0, spec) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(2e-3));
    CHECK(obtk::mean(ScalarField::coordinate(1), box, spec) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(obtk::median(ScalarField::coordinate(1), box, spec) ==
          doctest::Approx(0.5).epsilon(2e-3));
    CHECK_THROWS_AS(obtk::lebesgue_norm(ScalarField::constant(1.0), box, 0.5, spec),
                    obtk::ValidationError);
  }

  TEST_CASE("small-support fields use the exterior atom") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    const auto u = obtk::cutoff({0.0, 0.0}, 0.05, 0.1, ball);
    const auto fs = obtk::sample_field(u, ball, obtk::QuadratureSpec{});
    CHECK(fs.rest_measure > 0.9 * kPi);
    CHECK(fs.measure() == doctest::Approx(kPi).epsilon(1e-3));
    // int u^1 = pi (r^2 + r t + t^2) / 3 for the linear cut-off profile.
    const double r = 0.05;
    const double t = 0.1;
    CHECK(obtk::lebesgue_norm(fs, 1.0) ==
          doctest::Approx(kPi * (r * r + r * t + t * t) / 3.0).epsilon(5e-3));
  }

  TEST_CASE("Luxemburg homogeneity, constants and modular monotonicity") {
    const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
    const auto f = YoungFunction::power_log(1.5, 0.5);
    const auto u = ScalarField::gaussian({0.4, 0.6}, 0.2);
    const obtk::PairDifferences pd(u, box, obtk::QuadratureSpec{});
    const obtk::PairDifferences pd2(ScalarField::scale(2.0, u), pd.pairs());
    const double rel_tol = 1e-4;
    const double a = obtk::besov_seminorm(pd, f, -1.0, rel_tol).value;
    const double b = obtk::besov_seminorm(pd2, f, -1.0, rel_tol).value;
    CHECK(std::abs(b / (2.0 * a) - 1.0) <= 2.0 * rel_tol);
    const obtk::PairDifferences pc(ScalarField::constant(3.0), pd.pairs());
    CHECK(obtk::besov_seminorm(pc, f, -1.0).value == 0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda = 0.01; lambda < 100.0; lambda *= 1.3) {
      const double m = pd.besov_modular(f, -1.0, lambda).value;
      CHECK(m <= prev);
      prev = m;
    }
  }

  TEST_CASE("a non-integrable diagonal is reported as outside the space") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    const auto u = ScalarField::gaussian({0.0, 0.0}, 0.3);
    // phi(t) = t with alpha = -1 turns smooth differences into dt / t.
    CHECK_THROWS_AS(obtk::besov_seminorm(u, ball, YoungFunction::power(1.0), -1.0,
                                         obtk::QuadratureSpec{}),
                    obtk::NotInSpaceError);
  }

  TEST_CASE("level sets of a constant") {
    const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
    const auto prof = obtk::level_sets(ScalarField::constant(1.0), box, -2, 1, obtk::QuadratureSpec{});
    REQUIRE(prof.a.size() == 5);
    CHECK(prof.a[0] == doctest::Approx(1.0).epsilon(1e-3));  // |{1 > 1/4}|
    CHECK(prof.a[1] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(prof.a[2] == 0.0);  // |{1 > 1}|
    CHECK(prof.d[1] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(obtk::level_sets(ScalarField::coordinate(1), Domain::ball({0, 0}, 1), 0, 1,
                                     obtk::QuadratureSpec{}),
                    obtk::DomainError);
  }

  TEST_CASE("cut-off parameters are validated against the domain") {
    const auto ball = Domain::ball({0.0, 0.0}, 1.0);
    CHECK_THROWS_AS(obtk::cutoff({0, 0}, 0.5, 0.4, ball), obtk::ValidationError);
    CHECK_THROWS_AS(obtk::cutoff({0, 0}, 0.5, 1.5, ball), obtk::ValidationError);
    CHECK_NOTHROW(obtk::cutoff({0, 0}, 0.2, 0.4, ball));
  }
}
