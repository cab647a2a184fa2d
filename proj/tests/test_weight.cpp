#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "splinerec/freud_weight.hpp"

using namespace splinerec;

TEST_CASE("weight evaluation") {
  FreudWeight w2(2.0, 0.5);
  CHECK(w2(0.0) == 1.0);
  CHECK(w2(1.0) == Catch::Approx(std::exp(-0.5)).epsilon(1e-14));
  FreudWeight w3(3.0, 1.0);
  CHECK(w3(-2.0) == Catch::Approx(std::exp(-8.0)).epsilon(1e-14));
  CHECK(w3(2.0) == w3(-2.0));
  CHECK_THROWS(FreudWeight(1.0, 1.0));
  CHECK_THROWS(FreudWeight(2.0, 0.0));
  FreudWeight wb(2.0, 0.5, 1.0);
  CHECK(wb(0.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("gamma-backed nu constant against factorials") {
  for (int n = 1; n <= 10; ++n) {
    double f = 1.0;
    for (int i = 2; i < n; ++i) f *= i;
    CHECK(std::tgamma(static_cast<double>(n)) ==
          Catch::Approx(f).epsilon(1e-12));
  }
  CHECK(FreudWeight(2.0, 0.5).nu() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("MRS numbers") {
  FreudWeight w2(2.0, 0.5);
  CHECK(mrs_number(1, w2) == Catch::Approx(w2.nu()).epsilon(1e-14));
  CHECK(mrs_number(2, w2) == Catch::Approx(2.0).epsilon(1e-13));
  FreudWeight w4(4.0, 1.0);
  CHECK(mrs_number(16, w4) ==
        Catch::Approx(std::pow(4.0 / 3.0, 0.25) * 2.0).epsilon(1e-12));
  CHECK_THROWS(mrs_number(0, w2));
  for (int m : {1, 4, 16, 64})
    CHECK(mrs_number(2 * m, w2) / mrs_number(m, w2) ==
          Catch::Approx(std::pow(2.0, 0.5)).epsilon(1e-12));
}

TEST_CASE("rho selection") {
  FreudWeight w(2.0, 0.5);
  const RhoBound rb = select_rho(w, 2, 1, 1);
  CHECK(rb.rho_max_Q == Catch::Approx(std::sqrt(0.5)).epsilon(1e-13));
  CHECK(rb.chosen == Catch::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-13));
  // ell=1: (2l-1)/(a*lambda*(l+j0)*nu^lambda) = 1/(0.5*2*1*2) = 1/2
  const RhoBound rb1 = select_rho(w, 1, 0, 0);
  CHECK(rb1.rho_max_Q == Catch::Approx(std::sqrt(0.5)).epsilon(1e-13));
  CHECK(rb1.chosen == Catch::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-13));
  CHECK(rb.chosen < 1.0);
  CHECK(rb.chosen <= std::min({rb.rho_max_Q, rb.rho_max_R, 0.9}));
  // the strict proof condition holds with margin
  CHECK(w.a() * 2.0 * 3.0 * rb.chosen * rb.chosen * 2.0 < 3.0);
  CHECK_THROWS(select_rho(w, 2, 0, 1));  // j0 < ell - 1
}

TEST_CASE("recovery grid") {
  FreudWeight w(2.0, 0.5);
  const RecoveryGrid g = build_grid(4, 0.5, w);
  CHECK(g.a_m == Catch::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(g.h == Catch::Approx(0.5 * 2.0 * std::sqrt(2.0) / 4.0).epsilon(1e-13));
  CHECK(g.node(4) == Catch::Approx(g.radius()).epsilon(1e-14));
  for (long k = 1; k <= 4; ++k) CHECK(g.node(-k) == -g.node(k));
  CHECK(g.h * g.m == Catch::Approx(g.rho * g.a_m).epsilon(1e-15));
  const RecoveryGrid g1 = build_grid(1, 0.5, w);
  CHECK(g1.h == Catch::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK_THROWS(build_grid(4, 1.5, w));
  CHECK_THROWS(build_grid(4, 0.0, w));
}
