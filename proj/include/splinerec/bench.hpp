#ifndef SPLINEREC_BENCH_HPP
#define SPLINEREC_BENCH_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "splinerec/corpus.hpp"
#include "splinerec/spline_space.hpp"
#include "splinerec/tensor.hpp"

namespace splinerec {

struct ExperimentConfig {
  double lambda = 2.0;
  double a = 0.5;
  double b = 0.0;
  int ell = 2;
  std::string op = "Q";  // Q | P | Qbar | Pbar
  bool quadrature = false;
  double p = 2.0, q = 2.0;  // kInf for the sup norms
  int r = 2;
  int d = 1;
  long nmin = 33, nmax = 4097;
  std::string corpus = "sharp-kink";
  unsigned long seed = 1;
  std::string out;
  double rho_override = 0.0;  // 0 = constructive selection
  double slope_tol = 0.25;
};

inline OperatorConfig make_operator_config(const ExperimentConfig& ec) {
  FreudWeight w(ec.lambda, ec.a, ec.b);
  QuasiCoefficients c = lambda_catalog(ec.ell);
  const BlendConfig bc(ec.ell);
  double rho = ec.rho_override;
  if (rho <= 0.0) rho = select_rho(w, c.ell, c.j0, bc.kappa).chosen;
  return OperatorConfig{w, c, rho};
}

/// Largest m with [2(m+l+j0)-1]^d <= n.
inline int n_to_m(long n, int ell, int j0, int d = 1) {
  long base = 1;
  auto fits = [&](long b) {
    long v = 1;
    for (int i = 0; i < d; ++i) {
      v *= b;
      if (v > n) return false;
    }
    return true;
  };
  while (fits(base + 1)) ++base;
  const long m = (base + 1) / 2 - ell - j0;
  if (m < 1)
    throw std::invalid_argument("n_to_m: n too small for the sample budget");
  return static_cast<int>(m);
}

struct RateRow {
  long n;
  int m;
  double error;
  double seconds;
};

struct RateReport {
  std::vector<RateRow> rows;
  double predicted = 0.0;  // predicted decay exponent (positive)
  double slope = 0.0;      // fitted log-log slope (negative for decay)
  double residual = 0.0;
  bool exact = false;      // some error was non-positive (exact reproduction)
  double slope_tol = 0.25;
};

/// Least-squares slope of log(error) vs log(n) over the largest ceil(half)
/// of the n values. Non-positive errors signal exact reproduction.
inline void fit_rate(RateReport& rep) {
  std::vector<RateRow> rows = rep.rows;
  for (const auto& r : rows)
    if (!(r.error > 0.0)) {
      rep.exact = true;
      return;
    }
  if (rows.size() < 3)
    throw std::invalid_argument("fit_rate: need >= 3 data points");
  const std::size_t keep = (rows.size() + 1) / 2;
  const std::size_t lo = rows.size() - keep;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = lo; i < rows.size(); ++i) {
    const double x = std::log(static_cast<double>(rows[i].n));
    const double y = std::log(rows[i].error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nn = static_cast<double>(keep);
  rep.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const double icpt = (sy - rep.slope * sx) / nn;
  double res = 0.0;
  for (std::size_t i = lo; i < rows.size(); ++i) {
    const double x = std::log(static_cast<double>(rows[i].n));
    const double y = std::log(rows[i].error);
    res += (y - rep.slope * x - icpt) * (y - rep.slope * x - icpt);
  }
  rep.residual = std::sqrt(res / nn);
}

inline std::vector<long> n_grid(long nmin, long nmax) {
  std::vector<long> g;
  for (long n = nmin; n <= nmax; n *= 2) g.push_back(n);
  if (g.empty()) throw std::invalid_argument("empty n grid");
  return g;
}

template <typename F>
double measure_error_1d(const ExperimentConfig& ec, const OperatorConfig& cfg,
                        const F& f, int m) {
  // growth-type members carry a stable f*w profile for the tail integrals
  std::function<double(double)> fw_tail;
  if (f.weighted && cfg.weight.lambda() == 2.0) {
    const double eb = std::exp(cfg.weight.b());
    fw_tail = [&f, eb](double x) { return f.weighted(x) * eb; };
  }
  if (ec.quadrature) {
    const RuleKind kind =
        (ec.op == "P" || ec.op == "Pbar") ? RuleKind::P : RuleKind::Q;
    const WeightedQuadratureRule& rule = get_rule(kind, m, cfg);
    const double approx =
        integrate(rule, [&](double x) { return f.deriv(x, 0); });
    double ref;
    if (fw_tail) {
      const double core_r = 8.0;
      ref = integrate_segments(fw_tail, panel_points(-core_r, core_r, {0.0})) +
            integrate_tail(fw_tail, core_r) +
            integrate_tail([&](double x) { return fw_tail(-x); }, core_r);
    } else {
      ref = reference_weighted_integral(
          [&](double x) { return f.deriv(x, 0); }, cfg.weight,
          Domain::real_line());
    }
    return std::abs(approx - ref);
  }
  auto ev = [&](double x) { return f.deriv(x, 0); };
  SplineFunction s = ec.op == "P"      ? apply_P_truncated(ev, m, cfg)
                     : ec.op == "Qbar" ? apply_Q_bar(ev, m, cfg)
                     : ec.op == "Pbar" ? apply_P_bar(ev, m, cfg)
                                       : apply_Q_truncated(ev, m, cfg);
  return recovery_error(ev, s, ec.q, cfg.weight, {0.0}, fw_tail);
}

inline RateReport run_convergence(const ExperimentConfig& ec) {
  const OperatorConfig cfg = make_operator_config(ec);
  const CorpusFunction f = make_corpus(ec.corpus, ec.r, ec.p, ec.a);
  RateReport rep;
  rep.slope_tol = ec.slope_tol;
  if (ec.quadrature) {
    rep.predicted = rate_quadrature(ec.r, ec.lambda, ec.p);
  } else if (ec.d == 1) {
    rep.predicted = rate_recovery(ec.r, ec.lambda, ec.p, ec.q);
  } else {
    rep.predicted = rate_r_lambda(ec.r, ec.lambda) / ec.d -
                    rate_delta(ec.lambda, ec.p, ec.q);
  }
  for (long n : n_grid(ec.nmin, ec.nmax)) {
    const int m = n_to_m(n, cfg.coeffs.ell, cfg.coeffs.j0, ec.d);
    const auto t0 = std::chrono::steady_clock::now();
    double err;
    if (ec.d == 1) {
      err = measure_error_1d(ec, cfg, f, m);
    } else if (ec.d == 2 && !ec.quadrature) {
      const CorpusFunction g = corpus_gauss();
      auto f2 = [&](const std::array<double, 3>& x) {
        return f.deriv(x[0], 0) * g.deriv(x[1], 0);
      };
      TensorSpline T = (ec.op == "P" || ec.op == "Pbar")
                           ? apply_Pd_truncated(f2, 2, m, cfg)
                           : apply_Qd_truncated(f2, 2, m, cfg);
      err = recovery_error_2d([&](double x) { return f.deriv(x, 0); },
                              [&](double y) { return g.deriv(y, 0); }, T,
                              ec.q, cfg.weight);
    } else if (ec.quadrature && ec.d >= 2) {
      const CorpusFunction g = corpus_gauss();
      auto fd = [&](const std::array<double, 3>& x) {
        double v = f.deriv(x[0], 0);
        for (int a = 1; a < ec.d; ++a) v *= g.deriv(x[a], 0);
        return v;
      };
      const RuleKind kind =
          (ec.op == "P" || ec.op == "Pbar") ? RuleKind::P : RuleKind::Q;
      const double approx = integrate_d(kind, fd, ec.d, m, cfg);
      double ref = reference_weighted_integral(
          [&](double x) { return f.deriv(x, 0); }, cfg.weight,
          Domain::real_line());
      const double ref_g = reference_weighted_integral(
          [&](double x) { return g.deriv(x, 0); }, cfg.weight,
          Domain::real_line());
      for (int a = 1; a < ec.d; ++a) ref *= ref_g;
      err = std::abs(approx - ref);
    } else {
      throw std::invalid_argument("unsupported (d, mode) combination");
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.rows.push_back(
        {n, m, err, std::chrono::duration<double>(t1 - t0).count()});
  }
  fit_rate(rep);
  return rep;
}

/// CSV `n,m,error,seconds` plus a summary block, and a gnuplot-friendly
/// two-column .dat file next to it.
inline void emit_report(const RateReport& rep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  out << "n,m,error,seconds\n";
  char buf[160];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%d,%.17g,%.6f\n", r.n, r.m, r.error,
                  r.seconds);
    out << buf;
  }
  if (rep.exact) {
    out << "# exact=1\n";
  } else {
    const bool pass = std::abs(rep.slope + rep.predicted) <= rep.slope_tol;
    std::snprintf(buf, sizeof(buf),
                  "# predicted_exponent=%.17g\n# fitted_slope=%.17g\n"
                  "# fit_residual=%.17g\n# within_tolerance=%d\n",
                  rep.predicted, rep.slope, rep.residual, pass ? 1 : 0);
    out << buf;
  }
  std::ofstream dat(path + ".dat", std::ios::binary);
  if (!dat) throw std::runtime_error("emit_report: cannot open " + path + ".dat");
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof(buf), "%ld %.17g\n", r.n, r.error);
    dat << buf;
  }
}

}  // namespace splinerec

#endif  // SPLINEREC_BENCH_HPP
