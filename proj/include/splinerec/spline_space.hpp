#ifndef SPLINEREC_SPLINE_SPACE_HPP
#define SPLINEREC_SPLINE_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "splinerec/weighted_analysis.hpp"
#include "splinerec/quasi_interp.hpp"

namespace splinerec {

/// Rate exponents from the weighted theory: r_lambda = r(1 - 1/lambda),
/// delta penalty, and the recovery exponent r_{lambda,p,q}.
inline double rate_r_lambda(double r, double lambda) {
  return r * (1.0 - 1.0 / lambda);
}

inline double rate_delta(double lambda, double p, double q) {
  const double ip = (p == kInf) ? 0.0 : 1.0 / p;
  const double iq = (q == kInf) ? 0.0 : 1.0 / q;
  if (ip >= iq) return (1.0 - 1.0 / lambda) * (ip - iq);  // p <= q
  return (1.0 / lambda) * (iq - ip);                      // p > q
}

inline double rate_recovery(double r, double lambda, double p, double q) {
  return rate_r_lambda(r, lambda) - rate_delta(lambda, p, q);
}

inline double rate_quadrature(double r, double lambda, double p) {
  const double ip = (p == kInf) ? 0.0 : 1.0 / p;
  return rate_r_lambda(r, lambda) - (1.0 / lambda) * (1.0 - ip);
}

/// Element of S_{rho,m}: coefficients b_s, |s| <= m-l (dim 2(m-l)+1).
inline SplineFunction make_spline(const std::vector<double>& coeffs, int m,
                                  const OperatorConfig& cfg) {
  const int ell = cfg.coeffs.ell;
  if (coeffs.size() != static_cast<std::size_t>(2 * (m - ell) + 1))
    throw std::invalid_argument("make_spline: expected 2(m-l)+1 coefficients");
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  SplineComponent comp;
  comp.step = grid.h;
  comp.two_ell = 2 * ell;
  comp.shift_min = -(m - ell);
  comp.coeffs = coeffs;
  return SplineFunction({comp}, grid.radius());
}

/// Discrete weighted sequence norm ||(c_s)||_{p,w,n} over |s| <= n.
inline double discrete_weighted_norm(const std::vector<double>& values,
                                     const std::vector<double>& nodes,
                                     double p, const FreudWeight& w) {
  if (values.size() != nodes.size())
    throw std::invalid_argument("discrete_weighted_norm: size mismatch");
  if (p == kInf) {
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      best = std::max(best, std::abs(w(nodes[i]) * values[i]));
    return best;
  }
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    terms[i] = std::pow(std::abs(w(nodes[i]) * values[i]), p);
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

inline double spline_Lp_norm(const SplineFunction& phi, double p,
                             const FreudWeight& w) {
  return weighted_Lq_norm([&](double x) { return phi(x); }, p, w,
                          Domain::interval(-phi.radius(), phi.radius()),
                          phi.breakpoints());
}

struct MarcinkiewiczRatios {
  double node_ratio;
  double coeff_ratio;
};

/// ||phi||_{L_{p,w}} divided by the two discrete right-hand sides of the
/// Marcinkiewicz equivalences (factor m^{(1/lambda-1)/p}).
inline MarcinkiewiczRatios marcinkiewicz_ratios(
    const std::vector<double>& coeffs, int m, double p,
    const OperatorConfig& cfg) {
  const SplineFunction phi = make_spline(coeffs, m, cfg);
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const double lp = spline_Lp_norm(phi, p, cfg.weight);
  if (lp == 0.0)
    throw std::invalid_argument("marcinkiewicz_ratios: zero spline");
  const double mfac =
      (p == kInf)
          ? 1.0
          : std::pow(static_cast<double>(m),
                     (1.0 / cfg.weight.lambda() - 1.0) / p);
  std::vector<double> nodevals, nodes;
  for (long s = -m; s <= m; ++s) {
    nodes.push_back(grid.node(s));
    nodevals.push_back(phi(grid.node(s)));
  }
  const double dn = discrete_weighted_norm(nodevals, nodes, p, cfg.weight);
  std::vector<double> cnodes;
  const int ell = cfg.coeffs.ell;
  for (long s = -(m - ell); s <= m - ell; ++s) cnodes.push_back(grid.node(s));
  const double dc = discrete_weighted_norm(coeffs, cnodes, p, cfg.weight);
  return {lp / (mfac * dn), lp / (mfac * dc)};
}

/// ||phi||_{L_{q,w}} / (m^{delta} ||phi||_{L_{p,w}}).
inline double nikolskii_ratio(const std::vector<double>& coeffs, int m,
                              double p, double q, const OperatorConfig& cfg) {
  const SplineFunction phi = make_spline(coeffs, m, cfg);
  const double np = spline_Lp_norm(phi, p, cfg.weight);
  if (np == 0.0) throw std::invalid_argument("nikolskii_ratio: zero spline");
  const double nq = spline_Lp_norm(phi, q, cfg.weight);
  const double d = rate_delta(cfg.weight.lambda(), p, q);
  return nq / (std::pow(static_cast<double>(m), d) * np);
}

/// ||phi^{(r)}||_{L_{p,w}} / (m^{r_lambda} ||phi||_{L_{p,w}}); r <= 2l-1.
inline double bernstein_ratio(const std::vector<double>& coeffs, int m, int r,
                              double p, const OperatorConfig& cfg) {
  const int ell = cfg.coeffs.ell;
  if (r < 0 || r > 2 * ell - 1)
    throw std::invalid_argument("bernstein_ratio: r must be <= 2l-1");
  const SplineFunction phi = make_spline(coeffs, m, cfg);
  const double np = spline_Lp_norm(phi, p, cfg.weight);
  if (np == 0.0) throw std::invalid_argument("bernstein_ratio: zero spline");
  const double nd = weighted_Lq_norm(
      [&](double x) { return phi.derivative(x, r); }, p, cfg.weight,
      Domain::interval(-phi.radius(), phi.radius()), phi.breakpoints());
  const double rl = rate_r_lambda(r, cfg.weight.lambda());
  return nd / (std::pow(static_cast<double>(m), rl) * np);
}

/// Random ensemble member: contiguous block of coefficients with one of a
/// few sign/amplitude profiles, chosen to exercise the extremal regimes of
/// the inequalities (localized bumps, flat 1/w profiles, alternating signs).
inline std::vector<double> random_ensemble_coeffs(int m,
                                                  const OperatorConfig& cfg,
                                                  std::mt19937_64& rng) {
  const int ell = cfg.coeffs.ell;
  const int dim = 2 * (m - ell) + 1;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> style_d(0, 2), prof_d(0, 1);
  // width log-uniform in [1, dim]
  const int wexp = static_cast<int>(unit(rng) * (std::log2(dim) + 1.0));
  const int width = std::min(dim, 1 << wexp);
  std::uniform_int_distribution<int> center_d(0, dim - width);
  const int start = center_d(rng);
  const int style = style_d(rng);
  const bool unweight = prof_d(rng) == 1;
  std::vector<double> c(dim, 0.0);
  for (int i = start; i < start + width; ++i) {
    double v;
    switch (style) {
      case 0: v = 2.0 * unit(rng) - 1.0; break;                 // random
      case 1: v = (i % 2 == 0) ? 1.0 : -1.0; break;             // alternating
      default: v = 0.5 + 0.5 * unit(rng); break;                // positive
    }
    if (unweight) {
      const double x = grid.node(i - (m - ell));
      v /= cfg.weight(x);
    }
    c[static_cast<std::size_t>(i)] = v;
  }
  return c;
}

/// Fooling witness of the sampling lower bound: a sum of n disjoint bumps
/// (or a single bump when p <= q), vanishing at every supplied point,
/// calibrated to unit weighted Sobolev norm.
inline SplineFunction fooling_spline(const std::vector<double>& points, int n,
                                     int r, double p, const OperatorConfig& cfg,
                                     bool single_bump = false) {
  const int ell = cfg.coeffs.ell;
  int m = 2 * ell * (n + 1);  // smallest m with 2m+1 > 4l(n+1)
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  // candidate bump shifts 2l*s; bump support (2l s - l, 2l s + l) h
  const long smax = (m - ell) / (2 * ell);
  std::vector<long> chosen;
  auto clear_of_points = [&](long s) {
    const double lo = (2.0 * ell * s - ell) * grid.h;
    const double hi = (2.0 * ell * s + ell) * grid.h;
    for (double xi : points)
      if (xi > lo && xi < hi) return false;
    return true;
  };
  // center-out placement keeps the bumps where the weight is O(1)
  for (long d = 0; d <= smax && static_cast<int>(chosen.size()) <
                                    (single_bump ? 1 : n);
       ++d)
    for (long s : {d, -d}) {
      if (d == 0 && s != 0) continue;
      if (static_cast<int>(chosen.size()) >= (single_bump ? 1 : n)) break;
      if (clear_of_points(s)) chosen.push_back(s);
    }
  if (static_cast<int>(chosen.size()) < (single_bump ? 1 : n))
    throw std::logic_error("fooling_spline: placement infeasible");
  std::vector<double> coeffs(static_cast<std::size_t>(2 * (m - ell) + 1), 0.0);
  for (long s : chosen)
    coeffs[static_cast<std::size_t>(2 * ell * s + (m - ell))] = 1.0;
  SplineFunction raw = make_spline(coeffs, m, cfg);
  // calibrate C so the numerically computed W^r_{p,w} norm equals 1
  double norm;
  if (p == kInf) {
    norm = 0.0;
    for (int k = 0; k <= r; ++k)
      norm = std::max(norm,
                      weighted_Lq_norm(
                          [&](double x) { return raw.derivative(x, k); }, kInf,
                          cfg.weight,
                          Domain::interval(-raw.radius(), raw.radius()),
                          raw.breakpoints()));
  } else {
    double acc = 0.0;
    for (int k = 0; k <= r; ++k)
      acc += std::pow(weighted_Lq_norm(
                          [&](double x) { return raw.derivative(x, k); }, p,
                          cfg.weight,
                          Domain::interval(-raw.radius(), raw.radius()),
                          raw.breakpoints()),
                      p);
    norm = std::pow(acc, 1.0 / p);
  }
  for (auto& c : coeffs) c /= norm;
  return make_spline(coeffs, m, cfg);
}

}  // namespace splinerec

#endif  // SPLINEREC_SPLINE_SPACE_HPP
