#ifndef SPLINEREC_QUADRATURE_HPP
#define SPLINEREC_QUADRATURE_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "splinerec/integration.hpp"
#include "splinerec/interp_blend.hpp"
#include "splinerec/quasi_interp.hpp"

namespace splinerec {

enum class RuleKind { Q, P };

/// Generated weighted rule: I f = sum_{|s| <= m+l+j0-1} lambda_s f(x_s).
struct WeightedQuadratureRule {
  RuleKind kind;
  int m;
  double rho;
  std::vector<double> nodes;    // x_s, s ascending
  std::vector<double> weights;  // lambda_s

  long smax() const { return (static_cast<long>(nodes.size()) - 1) / 2; }
};

namespace detail {

/// I_step(t) = integral over [-R, R] of M_{2l}(x/step - t) w(x) dx.
inline double basis_weight_integral(long t, double step, int two_ell,
                                    double R, const FreudWeight& w) {
  const int ell = two_ell / 2;
  const double lo = std::max(-R, (static_cast<double>(t) - ell) * step);
  const double hi = std::min(R, (static_cast<double>(t) + ell) * step);
  if (lo >= hi) return 0.0;
  std::vector<double> pts;
  pts.push_back(lo);
  for (long k = -ell + 1; k <= ell - 1; ++k) {
    const double x = (static_cast<double>(t) + k) * step;
    if (x > lo && x < hi) pts.push_back(x);
  }
  pts.push_back(hi);
  const auto& pp = bspline_pp(two_ell);
  return integrate_segments(
      [&](double x) { return pp(x / step - static_cast<double>(t)) * w(x); },
      pts, 1e-13);
}

}  // namespace detail

/// Q-generated rule: lambda_s = integral of L_s w = sum_j lambda(j) I_h(s+j).
inline WeightedQuadratureRule build_rule_Q(int m, const OperatorConfig& cfg) {
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const int ell = cfg.coeffs.ell, j0 = cfg.coeffs.j0;
  const long kmax = m + ell + j0 - 1;
  const long tmax = m + ell - 1;
  const int two_ell = 2 * ell;
  std::vector<double> I(static_cast<std::size_t>(2 * tmax + 1));
  for (long t = -tmax; t <= tmax; ++t)
    I[static_cast<std::size_t>(t + tmax)] = detail::basis_weight_integral(
        t, grid.h, two_ell, grid.radius(), cfg.weight);
  WeightedQuadratureRule rule;
  rule.kind = RuleKind::Q;
  rule.m = m;
  rule.rho = cfg.rho;
  for (long s = -kmax; s <= kmax; ++s) {
    rule.nodes.push_back(grid.node(s));
    double lam = 0.0;
    for (int j = -j0; j <= j0; ++j) {
      const long t = s + j;
      if (std::abs(t) <= tmax)
        lam += cfg.coeffs.lambda(j) * I[static_cast<std::size_t>(t + tmax)];
    }
    rule.weights.push_back(lam);
  }
  return rule;
}

/// P-generated rule: per-node weights are the weighted integrals of the
/// influence splines of P_{rho,m}, assembled from the banded stencils.
inline WeightedQuadratureRule build_rule_P(int m, const OperatorConfig& cfg) {
  const int ell = cfg.coeffs.ell, j0 = cfg.coeffs.j0;
  if (ell == 1) {
    auto rule = build_rule_Q(m, cfg);
    rule.kind = RuleKind::P;
    return rule;
  }
  const BlendConfig bc(ell);
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + ell + j0 - 1;
  const long tmax = m + ell - 1;
  const int two_ell = 2 * ell;
  const double hfine = grid.h / bc.refine;
  std::vector<double> Ic(static_cast<std::size_t>(2 * tmax + 1));
  for (long t = -tmax; t <= tmax; ++t)
    Ic[static_cast<std::size_t>(t + tmax)] = detail::basis_weight_integral(
        t, grid.h, two_ell, grid.radius(), cfg.weight);
  const long umax = bc.refine * tmax;
  std::vector<double> If(static_cast<std::size_t>(2 * umax + 1));
  for (long u = -umax; u <= umax; ++u)
    If[static_cast<std::size_t>(u + umax)] = detail::basis_weight_integral(
        u, hfine, two_ell, grid.radius(), cfg.weight);
  WeightedQuadratureRule rule;
  rule.kind = RuleKind::P;
  rule.m = m;
  rule.rho = cfg.rho;
  for (long k = -kmax; k <= kmax; ++k) {
    rule.nodes.push_back(grid.node(k));
    double lam = 0.0;
    // Q part: c_t = lambda(t-k) for |t-k| <= j0
    for (int j = -j0; j <= j0; ++j) {
      const long t = k + j;
      if (std::abs(t) <= tmax)
        lam += cfg.coeffs.lambda(j) * Ic[static_cast<std::size_t>(t + tmax)];
    }
    // R part: delta at refined shift 2^kappa k, scaled by 1/M(0)
    if (std::abs(k) <= tmax)
      lam += If[static_cast<std::size_t>(bc.refine * k + umax)] / bc.M0;
    // -RQ part: refined coefficient at 2^kappa s is
    // -(1/M0) sum_t lambda(t-k) M(s-t)
    for (long s = std::max(k - j0 - ell + 1, -tmax);
         s <= std::min(k + j0 + ell - 1, tmax); ++s) {
      double g = 0.0;
      for (int j = -j0; j <= j0; ++j) {
        const long t = k + j;
        if (std::abs(t) <= tmax)
          g += cfg.coeffs.lambda(j) *
               bspline_eval(static_cast<double>(s - t), two_ell);
      }
      lam -= g / bc.M0 * If[static_cast<std::size_t>(bc.refine * s + umax)];
    }
    rule.weights.push_back(lam);
  }
  return rule;
}

/// Cached rule lookup keyed by the full configuration.
inline const WeightedQuadratureRule& get_rule(RuleKind kind, int m,
                                              const OperatorConfig& cfg) {
  std::ostringstream key;
  key << (kind == RuleKind::Q ? 'Q' : 'P') << '|' << cfg.coeffs.ell << '|';
  for (double v : cfg.coeffs.values) key << v << ',';
  key << '|' << cfg.weight.lambda() << '|' << cfg.weight.a() << '|' << m
      << '|' << cfg.rho;
  static std::map<std::string, WeightedQuadratureRule> cache;
  auto it = cache.find(key.str());
  if (it == cache.end())
    it = cache
             .emplace(key.str(), kind == RuleKind::Q ? build_rule_Q(m, cfg)
                                                     : build_rule_P(m, cfg))
             .first;
  return it->second;
}

template <typename F>
double integrate(const WeightedQuadratureRule& rule, F&& f) {
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    terms[i] = rule.weights[i] * f(rule.nodes[i]);
  return pairwise_sum(terms);
}

/// CSV export `s,x_s,lambda_s` at 17 significant digits.
inline void export_rule_csv(const WeightedQuadratureRule& rule,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("export_rule_csv: cannot open " + path);
  out << "s,x_s,lambda_s\n";
  const long smax = rule.smax();
  char buf[128];
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g\n",
                  static_cast<long>(i) - smax, rule.nodes[i],
                  rule.weights[i]);
    out << buf;
  }
}

}  // namespace splinerec

#endif  // SPLINEREC_QUADRATURE_HPP
