#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "splinerec/bspline.hpp"
#include "splinerec/lagrange.hpp"

using namespace splinerec;

namespace {

// explicit alternating truncated-power formula, kept as an oracle only
double truncated_power_bspline(double x, int two_ell) {
  const int ell = two_ell / 2;
  double fact = 1.0;
  for (int i = 2; i <= two_ell - 1; ++i) fact *= i;
  double s = 0.0, c = 1.0;
  for (int k = 0; k <= two_ell; ++k) {
    const double t = x + ell - k;
    if (t > 0.0) s += (k % 2 ? -1.0 : 1.0) * c * std::pow(t, two_ell - 1);
    c = c * (two_ell - k) / (k + 1);
  }
  return s / fact;
}

}  // namespace

TEST_CASE("hat and cubic point values") {
  CHECK(bspline_eval(0.0, 2) == Catch::Approx(1.0));
  CHECK(bspline_eval(0.5, 2) == Catch::Approx(0.5));
  CHECK(bspline_eval(0.0, 4) == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(bspline_eval(1.0, 4) == Catch::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(bspline_eval(-1.0, 4) == Catch::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(bspline_eval(2.5, 4) == 0.0);
  CHECK_THROWS(bspline_eval(0.0, 3));
  CHECK_THROWS(bspline_eval(0.0, 10));
}

TEST_CASE("recurrence matches truncated-power formula") {
  for (int two_ell : {2, 4, 6, 8}) {
    const int ell = two_ell / 2;
    for (int i = 0; i <= 400; ++i) {
      const double x = -ell - 0.5 + i * (2.0 * ell + 1.0) / 400.0;
      CHECK(bspline_eval(x, two_ell) ==
            Catch::Approx(truncated_power_bspline(x, two_ell))
                .margin(1e-10));
    }
  }
}

TEST_CASE("partition of unity and telescoping derivatives") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  for (int two_ell : {2, 4, 6, 8}) {
    for (int t = 0; t < 200; ++t) {
      const double x = pos(rng);
      double s = 0.0;
      for (long k = -12; k <= 12; ++k) s += bspline_eval(x - k, two_ell);
      CHECK(s == Catch::Approx(1.0).margin(1e-12));
    }
    for (int order = 1; order < std::min(two_ell, 4); ++order)
      for (int t = 0; t < 20; ++t) {
        const double x = pos(rng);
        double s = 0.0;
        for (long k = -12; k <= 12; ++k)
          s += bspline_derivative(x - k, two_ell, order);
        CHECK(s == Catch::Approx(0.0).margin(1e-10));
      }
  }
}

TEST_CASE("derivatives against finite differences") {
  CHECK(bspline_derivative(0.5, 2, 1) == Catch::Approx(-1.0));
  CHECK(bspline_derivative(0.0, 4, 1) == Catch::Approx(0.0).margin(1e-14));
  const double h = 1e-6;
  const double fd =
      (bspline_eval(0.5 + h, 4) - bspline_eval(0.5 - h, 4)) / (2 * h);
  CHECK(bspline_derivative(0.5, 4, 1) == Catch::Approx(fd).margin(1e-6));
  CHECK_THROWS(bspline_derivative(0.0, 4, 4));
  CHECK(bspline_derivative(0.25, 4, 0) == bspline_eval(0.25, 4));
}

TEST_CASE("two-scale mask reproduces the refinement identity") {
  for (int two_ell : {2, 4, 6}) {
    const auto mask = two_scale_mask(two_ell);
    const int ell = two_ell / 2;
    for (int i = 0; i <= 50; ++i) {
      const double x = -ell + i * (2.0 * ell) / 50.0;
      double s = 0.0;
      for (int k = 0; k <= two_ell; ++k)
        s += mask[k] * bspline_eval(2.0 * x - (k - ell), two_ell);
      CHECK(s == Catch::Approx(bspline_eval(x, two_ell)).margin(1e-12));
    }
  }
}

TEST_CASE("piecewise polynomial cache agrees with direct evaluation") {
  for (int two_ell : {2, 4, 6, 8}) {
    const auto& pp = bspline_pp(two_ell);
    for (int i = 0; i <= 200; ++i) {
      const double x = -5.0 + i * 10.0 / 200.0;
      CHECK(pp(x) == Catch::Approx(bspline_eval(x, two_ell)).margin(1e-12));
      CHECK(pp.derivative(x, 1) ==
            Catch::Approx(bspline_derivative(x, two_ell, 1)).margin(1e-11));
    }
    // the B-spline integrates to 1
    CHECK(pp.integrate(-5.0, 5.0) == Catch::Approx(1.0).margin(1e-13));
    CHECK(pp.integrate(5.0, -5.0) == Catch::Approx(-1.0).margin(1e-13));
  }
}

TEST_CASE("lagrange extension") {
  auto c = lagrange_extension({0.0, 1.0, 2.0}, {3.0, 3.0, 3.0});
  CHECK(c(7.7) == Catch::Approx(3.0).margin(1e-13));
  auto id = lagrange_extension({0.0, 1.0}, {0.0, 1.0});
  CHECK(id(0.35) == Catch::Approx(0.35).margin(1e-14));
  auto cube =
      lagrange_extension({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 8.0, 27.0});
  CHECK(cube(1.5) == Catch::Approx(1.5 * 1.5 * 1.5).margin(1e-12));
  CHECK(cube(1.0) == Catch::Approx(1.0));  // exact node hit
  CHECK_THROWS(lagrange_extension({0.0, 0.0}, {1.0, 2.0}));
}
