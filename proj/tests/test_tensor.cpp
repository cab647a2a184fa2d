#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "splinerec/corpus.hpp"
#include "splinerec/tensor.hpp"
#include "splinerec/weighted_analysis.hpp"

using namespace splinerec;

namespace {

OperatorConfig config_for(int ell) {
  FreudWeight w(2.0, 0.5);
  QuasiCoefficients c = lambda_catalog(ell);
  const BlendConfig bc(ell);
  return OperatorConfig{w, c, select_rho(w, ell, c.j0, bc.kappa).chosen};
}

}  // namespace

TEST_CASE("d=1 tensor operators degenerate to the univariate ones") {
  const auto cfg = config_for(2);
  const int m = 10;
  auto g = [](double x) { return std::exp(-0.4 * x * x) * (1.0 + x); };
  auto gd = [&](const std::array<double, 3>& x) { return g(x[0]); };
  const auto T = apply_Qd_truncated(gd, 1, m, cfg);
  const auto u = apply_Q_truncated(g, m, cfg);
  const auto TP = apply_Pd_truncated(gd, 1, m, cfg);
  const auto uP = apply_P_truncated(g, m, cfg);
  for (double x : {-2.0, -0.37, 0.0, 0.9, 1.8}) {
    CHECK(T({x, 0.0, 0.0}) == Catch::Approx(u(x)).margin(1e-13));
    CHECK(TP({x, 0.0, 0.0}) == Catch::Approx(uP(x)).margin(1e-13));
  }
  CHECK(T.radius() == Catch::Approx(u.radius()).margin(1e-15));
}

TEST_CASE("tensor operators factor over separable inputs") {
  const auto cfg = config_for(2);
  const int m = 8;
  auto f1 = [](double x) { return std::exp(-0.5 * x * x); };
  auto f2 = [](double y) { return std::cos(y); };
  auto f = [&](const std::array<double, 3>& x) { return f1(x[0]) * f2(x[1]); };
  const auto T = apply_Qd_truncated(f, 2, m, cfg);
  const auto u1 = apply_Q_truncated(f1, m, cfg);
  const auto u2 = apply_Q_truncated(f2, m, cfg);
  const auto TP = apply_Pd_truncated(f, 2, m, cfg);
  const auto p1 = apply_P_truncated(f1, m, cfg);
  const auto p2 = apply_P_truncated(f2, m, cfg);
  for (double x : {-1.4, -0.2, 0.6}) {
    for (double y : {-0.9, 0.3, 1.7}) {
      CHECK(T({x, y, 0.0}) == Catch::Approx(u1(x) * u2(y)).margin(1e-11));
      CHECK(TP({x, y, 0.0}) == Catch::Approx(p1(x) * p2(y)).margin(1e-11));
    }
  }
}

TEST_CASE("bivariate polynomial reproduction away from the boundary") {
  const auto cfg = config_for(2);
  const int m = 12;
  auto f = [](const std::array<double, 3>& x) {
    return x[0] * x[0] * x[0] - 2.0 * x[0] * x[1] * x[1] + x[1] - 0.7;
  };
  const auto Q = apply_Qd_truncated(f, 2, m, cfg);
  const auto P = apply_Pd_truncated(f, 2, m, cfg);
  for (double x : {-0.8, 0.0, 0.5}) {
    for (double y : {-0.3, 0.4, 0.9}) {
      const std::array<double, 3> xy{x, y, 0.0};
      CHECK(Q(xy) == Catch::Approx(f(xy)).margin(1e-9));
      CHECK(P(xy) == Catch::Approx(f(xy)).margin(1e-9));
    }
  }
}

TEST_CASE("bivariate interpolation at the grid nodes") {
  const auto cfg = config_for(2);
  const int m = 8;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  auto f = [](const std::array<double, 3>& x) {
    return std::sin(x[0] + 0.3) * std::exp(-0.2 * x[1] * x[1]);
  };
  const auto P = apply_Pd_truncated(f, 2, m, cfg);
  for (long j = -m; j <= m; j += 2) {
    for (long k = -m; k <= m; k += 2) {
      const std::array<double, 3> xy{grid.node(j), grid.node(k), 0.0};
      CHECK(P(xy) == Catch::Approx(f(xy)).margin(1e-10));
    }
  }
}

TEST_CASE("axis order symmetry") {
  const auto cfg = config_for(2);
  const int m = 8;
  auto f1 = [](double x) { return std::exp(-0.3 * x * x); };
  auto f2 = [](double y) { return 1.0 / (1.0 + y * y); };
  const auto A = apply_Pd_truncated(
      [&](const std::array<double, 3>& x) { return f1(x[0]) * f2(x[1]); }, 2,
      m, cfg);
  const auto B = apply_Pd_truncated(
      [&](const std::array<double, 3>& x) { return f2(x[0]) * f1(x[1]); }, 2,
      m, cfg);
  for (double x : {-1.1, 0.2, 0.8})
    for (double y : {-0.6, 0.0, 1.4})
      CHECK(A({x, y, 0.0}) == Catch::Approx(B({y, x, 0.0})).margin(1e-12));
}

TEST_CASE("tensor quadrature factorizes for separable integrands") {
  const auto cfg = config_for(2);
  const int m = 10;
  auto f1 = [](double x) { return std::exp(-0.5 * x * x); };
  auto f2 = [](double y) { return 1.0 + 0.2 * y * y; };
  const auto& rule = get_rule(RuleKind::Q, m, cfg);
  const double i1 = integrate(rule, f1);
  const double i2 = integrate(rule, f2);
  const double i2d = integrate_d(
      RuleKind::Q, [&](const std::array<double, 3>& x) {
        return f1(x[0]) * f2(x[1]);
      }, 2, m, cfg);
  CHECK(i2d == Catch::Approx(i1 * i2).epsilon(1e-10));
  const double i3d = integrate_d(
      RuleKind::P, [&](const std::array<double, 3>& x) {
        return f1(x[0]) * f2(x[1]) * f1(x[2]);
      }, 3, m, cfg);
  const auto& ruleP = get_rule(RuleKind::P, m, cfg);
  CHECK(i3d == Catch::Approx(integrate(ruleP, f1) * integrate(ruleP, f2) *
                             integrate(ruleP, f1)).epsilon(1e-10));
}

TEST_CASE("sample count matches the budget") {
  const auto cfg = config_for(2);
  const int m = 6, ell = 2, j0 = 1;
  long calls = 0;
  auto f = [&](const std::array<double, 3>& x) {
    ++calls;
    return std::exp(-0.1 * (x[0] * x[0] + x[1] * x[1]));
  };
  apply_Pd_truncated(f, 2, m, cfg);
  const long per_axis = 2 * (m + ell + j0) - 1;
  CHECK(calls == per_axis * per_axis);
}

TEST_CASE("recovery_error_2d") {
  const auto cfg = config_for(2);
  FreudWeight w = cfg.weight;
  auto f1 = [](double x) { return std::exp(-0.5 * x * x); };
  auto f2 = [](double y) { return std::exp(-0.5 * y * y); };
  auto f = [&](const std::array<double, 3>& x) { return f1(x[0]) * f2(x[1]); };
  const auto T16 = apply_Qd_truncated(f, 2, 16, cfg);
  const auto T32 = apply_Qd_truncated(f, 2, 32, cfg);
  const double e16 = recovery_error_2d(f1, f2, T16, 2.0, w);
  const double e32 = recovery_error_2d(f1, f2, T32, 2.0, w);
  CHECK(e16 > 0.0);
  CHECK(e16 / e32 > 1.5);
  CHECK_THROWS(recovery_error_2d(f1, f2, T16, kInf, w));
}
