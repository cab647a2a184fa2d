#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "splinerec/interp_blend.hpp"
#include "splinerec/quasi_interp.hpp"
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

TEST_CASE("coefficient catalog") {
  const auto c1 = lambda_catalog(1);
  CHECK(c1.j0 == 0);
  CHECK(c1.lambda(0) == 1.0);
  const auto c2 = lambda_catalog(2);
  CHECK(c2.j0 == 1);
  CHECK(c2.lambda(0) == Catch::Approx(4.0 / 3.0));
  CHECK(c2.lambda(1) == Catch::Approx(-1.0 / 6.0));
  CHECK(c2.lambda(-1) == c2.lambda(1));
  CHECK(c2.lambda(5) == 0.0);
  CHECK_THROWS(lambda_catalog(3));
}

TEST_CASE("coefficient validation") {
  CHECK(validate_coefficients(lambda_catalog(1)).ok);
  CHECK(validate_coefficients(lambda_catalog(2)).ok);
  QuasiCoefficients bad;  // identity stencil cannot reproduce quadratics
  bad.ell = 2;
  bad.j0 = 0;
  bad.values = {1.0};
  const auto rep = validate_coefficients(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.message.find("x^2") != std::string::npos);
  QuasiCoefficients uneven;
  uneven.ell = 2;
  uneven.j0 = 1;
  uneven.values = {-1.0 / 6.0, 4.0 / 3.0, -1.0 / 5.0};
  CHECK(validate_coefficients(uneven).message.find("evenness") !=
        std::string::npos);
}

TEST_CASE("kernel") {
  const auto L1 = build_kernel(lambda_catalog(1));
  for (double x : {-0.7, 0.0, 0.3, 0.9})
    CHECK(L1(x) == Catch::Approx(bspline_eval(x, 2)).margin(1e-13));
  const auto L2 = build_kernel(lambda_catalog(2));
  CHECK(L2(0.0) == Catch::Approx(5.0 / 6.0).margin(1e-13));
  CHECK(L2(3.0) == 0.0);
  CHECK(L2(-3.1) == 0.0);
  // partition of unity for the kernel translates
  for (double x : {-1.3, 0.2, 2.7}) {
    double s = 0.0;
    for (long k = -8; k <= 8; ++k) s += L2(x - k);
    CHECK(s == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("Q truncated: constants, polynomials, support, sample count") {
  for (int ell : {1, 2}) {
    const auto cfg = config_for(ell);
    const int m = 16;
    int calls = 0;
    auto one = [&](double) {
      ++calls;
      return 1.0;
    };
    const SplineFunction s = apply_Q_truncated(one, m, cfg);
    CHECK(calls == 2 * (m + ell + cfg.coeffs.j0) - 1);
    const double R = s.radius();
    for (int i = 1; i < 40; ++i) {
      const double x = -R + 2.0 * R * i / 40.0;
      CHECK(s(x) == Catch::Approx(1.0).margin(1e-12));
    }
    CHECK(s(R + 0.001) == 0.0);
    CHECK(s(-R - 0.001) == 0.0);
    // degree 2l-1 reproduction on the open interval
    auto poly = [ell](double x) {
      return ell == 1 ? 2.0 * x - 0.5 : x * x * x - 2.0 * x + 1.0;
    };
    const SplineFunction sp = apply_Q_truncated(poly, m, cfg);
    double scale = 0.0, dev = 0.0;
    for (int i = 1; i < 400; ++i) {
      const double x = -R + 2.0 * R * i / 400.0;
      scale = std::max(scale, std::abs(poly(x)));
      dev = std::max(dev, std::abs(sp(x) - poly(x)));
    }
    CHECK(dev < 1e-10 * scale);
  }
}

TEST_CASE("Q truncated: linearity and scaling consistency") {
  const auto cfg = config_for(2);
  const int m = 12;
  auto f = [](double x) { return std::sin(x) + 0.3 * x; };
  auto g = [](double x) { return std::exp(-x * x); };
  const auto sf = apply_Q_truncated(f, m, cfg);
  const auto sg = apply_Q_truncated(g, m, cfg);
  auto fg = [&](double x) { return 2.0 * f(x) - 0.7 * g(x); };
  const auto sfg = apply_Q_truncated(fg, m, cfg);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-sf.radius(), sf.radius());
  for (int t = 0; t < 100; ++t) {
    const double x = U(rng);
    CHECK(sfg(x) == Catch::Approx(2.0 * sf(x) - 0.7 * sg(x)).margin(1e-12));
  }
  // Q_h = sigma_h Q sigma_{1/h}: compare against the unit-grid sum
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  for (int t = 0; t < 25; ++t) {
    const double x = U(rng);
    const double y = x / grid.h;
    double direct = 0.0;
    for (long s = -(m + 1); s <= m + 1; ++s) {
      double coef = 0.0;
      for (int j = -1; j <= 1; ++j)
        coef += cfg.coeffs.lambda(j) * f((s - j) * grid.h);
      direct += coef * bspline_eval(y - s, 4);
    }
    CHECK(sf(x) == Catch::Approx(direct).margin(1e-12));
  }
}

TEST_CASE("Q bar") {
  const auto cfg = config_for(2);
  const int m = 16;
  auto poly = [](double x) { return x * x * x - x + 2.0; };
  const auto plain = apply_Q_truncated(poly, m, cfg);
  int calls = 0;
  auto counted = [&](double x) {
    ++calls;
    return poly(x);
  };
  const auto barred = apply_Q_bar(counted, m, cfg);
  CHECK(calls == 2 * m + 1);
  for (int i = 0; i <= 60; ++i) {
    const double x = -plain.radius() + 2.0 * plain.radius() * i / 60.0;
    CHECK(barred(x) == Catch::Approx(plain(x)).margin(1e-9));
  }
  CHECK_THROWS(apply_Q_bar(poly, 3, cfg));  // m < 2l
  // gaussian: bar error stays within 2x of the plain error at m=32
  auto gauss = [](double x) { return std::exp(-x * x); };
  const auto s32 = apply_Q_truncated(gauss, 32, cfg);
  const auto b32 = apply_Q_bar(gauss, 32, cfg);
  const double e_plain = recovery_error(gauss, s32, 2.0, cfg.weight);
  const double e_bar = recovery_error(gauss, b32, 2.0, cfg.weight);
  CHECK(e_bar <= 2.0 * e_plain);
}

TEST_CASE("weighted error decreases with m for smooth f") {
  const auto cfg = config_for(2);
  auto gauss = [](double x) { return std::exp(-x * x); };
  const double e16 =
      recovery_error(gauss, apply_Q_truncated(gauss, 16, cfg), 2.0, cfg.weight);
  const double e32 =
      recovery_error(gauss, apply_Q_truncated(gauss, 32, cfg), 2.0, cfg.weight);
  CHECK(e32 < e16);
  const double p16 =
      recovery_error(gauss, apply_P_truncated(gauss, 16, cfg), 2.0, cfg.weight);
  const double p32 =
      recovery_error(gauss, apply_P_truncated(gauss, 32, cfg), 2.0, cfg.weight);
  CHECK(p32 < p16);
}

TEST_CASE("R operator") {
  const auto cfg = config_for(2);
  const BlendConfig bc(2);
  CHECK(bc.refine == 2);
  CHECK(bc.M0 == Catch::Approx(2.0 / 3.0).margin(1e-14));
  CHECK(1.0 / bc.M0 == Catch::Approx(1.5).margin(1e-13));
  CHECK(BlendConfig(1).refine == 1);
  const int m = 12;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  auto f = [](double x) { return std::cos(x) + x; };
  const auto rf = apply_R_truncated(f, m, cfg);
  for (long k = -m; k <= m; ++k)
    CHECK(rf(grid.node(k)) == Catch::Approx(f(grid.node(k))).margin(1e-12));
  // R does not reproduce polynomials
  auto sq = [](double x) { return x * x; };
  const auto rsq = apply_R_truncated(sq, m, cfg);
  const double mid = 0.25 * grid.h;
  CHECK(std::abs(rsq(mid) - sq(mid)) > 1e-6);
}

TEST_CASE("P truncated: interpolation, reproduction, blend identity") {
  const auto cfg = config_for(2);
  const int m = 16;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  auto f = [](double x) { return std::exp(-x * x); };
  int calls = 0;
  auto counted = [&](double x) {
    ++calls;
    return f(x);
  };
  const auto pf = apply_P_truncated(counted, m, cfg);
  CHECK(calls == 2 * (m + 2 + 1) - 1);
  for (long k = -m; k <= m; ++k)
    CHECK(pf(grid.node(k)) == Catch::Approx(f(grid.node(k))).margin(1e-10));
  auto cube = [](double x) { return x * x * x - 3.0 * x + 0.5; };
  const auto pc = apply_P_truncated(cube, m, cfg);
  for (int i = 1; i < 300; ++i) {
    const double x = -pf.radius() + 2.0 * pf.radius() * i / 300.0;
    CHECK(pc(x) == Catch::Approx(cube(x)).margin(1e-10));
  }
  // independent blend check: RQ realized by feeding the evaluated Q output
  // through R
  const auto qf = apply_Q_truncated(f, m, cfg);
  const auto rf = apply_R_truncated(f, m, cfg);
  const auto rqf = apply_R_truncated(
      [&](double x) { return qf.evaluate_untruncated(x); }, m, cfg);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-pf.radius(), pf.radius());
  for (int t = 0; t < 100; ++t) {
    const double x = U(rng);
    CHECK(pf(x) == Catch::Approx(rf(x) + qf(x) - rqf(x)).margin(1e-12));
  }
  // the packaged RQ agrees with the independent composition
  const auto rq2 = apply_RQ_truncated(f, m, cfg);
  for (int t = 0; t < 50; ++t) {
    const double x = U(rng);
    CHECK(rq2(x) == Catch::Approx(rqf(x)).margin(1e-12));
  }
}

TEST_CASE("P and Q coincide for ell=1") {
  const auto cfg = config_for(1);
  auto f = [](double x) { return std::sin(2.0 * x); };
  const auto p = apply_P_truncated(f, 10, cfg);
  const auto q = apply_Q_truncated(f, 10, cfg);
  for (int i = 0; i <= 50; ++i) {
    const double x = -p.radius() + 2.0 * p.radius() * i / 50.0;
    CHECK(p(x) == Catch::Approx(q(x)).margin(1e-14));
  }
}

TEST_CASE("P bar") {
  const auto cfg = config_for(2);
  const int m = 16;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  auto f = [](double x) { return std::exp(-0.5 * x * x) * (1.0 + x); };
  int calls = 0;
  auto counted = [&](double x) {
    ++calls;
    return f(x);
  };
  const auto pb = apply_P_bar(counted, m, cfg);
  CHECK(calls == 2 * m + 1);
  for (long k = -m; k <= m; ++k)
    CHECK(pb(grid.node(k)) == Catch::Approx(f(grid.node(k))).margin(1e-10));
  auto cube = [](double x) { return 2.0 * x * x * x + x * x - 1.0; };
  const auto pc = apply_P_truncated(cube, m, cfg);
  const auto pcb = apply_P_bar(cube, m, cfg);
  for (int i = 0; i <= 80; ++i) {
    const double x = -pb.radius() + 2.0 * pb.radius() * i / 80.0;
    CHECK(pcb(x) == Catch::Approx(pc(x)).margin(1e-10));
  }
  CHECK_THROWS(apply_P_bar(f, 3, cfg));
}

TEST_CASE("ell=2 blended stencil from flattening") {
  const auto cfg = config_for(2);
  const int m = 12;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  // unit sample at node 0
  auto e0 = [&](double x) { return std::abs(x) < 0.5 * grid.h ? 1.0 : 0.0; };
  const auto p = apply_P_truncated(e0, m, cfg);
  const SplineComponent flat = p.flattened();
  CHECK(flat.step == Catch::Approx(grid.h / 2.0).margin(1e-15));
  // derived table; note the paper prints 29/72 where consistency with the
  // interpolation and reproduction identities forces 29/24
  const double expect[9] = {1.0 / 48.0,  -1.0 / 12.0, -1.0 / 8.0,
                            7.0 / 12.0,  29.0 / 24.0, 7.0 / 12.0,
                            -1.0 / 8.0,  -1.0 / 12.0, 1.0 / 48.0};
  for (int i = -4; i <= 4; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i - flat.shift_min);
    CHECK(flat.coeffs[idx] ==
          Catch::Approx(expect[i + 4]).margin(1e-12));
  }
}

TEST_CASE("evaluator failures carry the offending node") {
  const auto cfg = config_for(2);
  auto bad = [](double x) -> double {
    if (x > 0.5) throw std::runtime_error("domain");
    return x;
  };
  CHECK_THROWS_WITH(apply_Q_truncated(bad, 8, cfg),
                    Catch::Matchers::ContainsSubstring("node"));
  auto nan = [](double x) { return x > 0.5 ? std::nan("") : 0.0; };
  CHECK_THROWS_WITH(apply_Q_truncated(nan, 8, cfg),
                    Catch::Matchers::ContainsSubstring("non-finite"));
}
