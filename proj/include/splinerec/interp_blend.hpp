#ifndef SPLINEREC_INTERP_BLEND_HPP
#define SPLINEREC_INTERP_BLEND_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "splinerec/quasi_interp.hpp"

namespace splinerec {

/// Derived constants of the blended operator P = R + Q - RQ.
struct BlendConfig {
  int ell;
  int kappa;     // ceil(log2(2l) - 1)
  double M0;     // M_{2l}(0)
  int refine;    // 2^kappa

  explicit BlendConfig(int ell_) : ell(ell_) {
    if (ell < 1) throw std::invalid_argument("BlendConfig: ell must be >= 1");
    kappa = 0;
    while ((1 << kappa) < ell) ++kappa;  // ceil(log2(2l) - 1) = ceil(log2 l)
    refine = 1 << kappa;
    M0 = bspline_eval(0.0, 2 * ell);
  }
};

namespace detail {

/// R coefficients on the refined grid (step h/2^kappa): value f(x_s)/M(0)
/// at refined shift 2^kappa s, |s| <= m+l-1. vals indexed by k + voff.
inline SplineComponent r_component(const std::vector<double>& vals, long voff,
                                   const RecoveryGrid& grid,
                                   const BlendConfig& bc) {
  const long smax = grid.m + bc.ell - 1;
  SplineComponent comp;
  comp.step = grid.h / bc.refine;
  comp.two_ell = 2 * bc.ell;
  comp.shift_min = -bc.refine * smax;
  comp.coeffs.assign(static_cast<std::size_t>(2 * bc.refine * smax + 1), 0.0);
  for (long s = -smax; s <= smax; ++s)
    comp.coeffs[static_cast<std::size_t>(bc.refine * (s + smax))] =
        vals[static_cast<std::size_t>(s + voff)] / bc.M0;
  return comp;
}

/// RQ coefficients: the refined-grid expansion of R applied to the node
/// values of the truncated Q output, scaled by `sign`.
inline SplineComponent rq_component(const SplineComponent& qcomp,
                                    const RecoveryGrid& grid,
                                    const BlendConfig& bc, double sign) {
  const long smax = grid.m + bc.ell - 1;
  const int two_ell = 2 * bc.ell;
  SplineComponent comp;
  comp.step = grid.h / bc.refine;
  comp.two_ell = two_ell;
  comp.shift_min = -bc.refine * smax;
  comp.coeffs.assign(static_cast<std::size_t>(2 * bc.refine * smax + 1), 0.0);
  for (long s = -smax; s <= smax; ++s) {
    // (Qf)(x_s) from the truncated coefficient set
    double g = 0.0;
    for (long t = std::max(s - bc.ell + 1, -smax);
         t <= std::min(s + bc.ell - 1, smax); ++t)
      g += qcomp.coeffs[static_cast<std::size_t>(t + smax)] *
           bspline_eval(static_cast<double>(s - t), two_ell);
    comp.coeffs[static_cast<std::size_t>(bc.refine * (s + smax))] =
        sign * g / bc.M0;
  }
  return comp;
}

template <typename Vals>
SplineFunction build_P(const Vals& vals, const RecoveryGrid& grid,
                       const OperatorConfig& cfg, const BlendConfig& bc) {
  const long kmax = grid.m + cfg.coeffs.ell + cfg.coeffs.j0 - 1;
  const long voff_full = kmax;
  const SplineComponent qcomp = q_component(vals, grid, cfg.coeffs);
  SplineComponent rcomp = r_component(vals, voff_full, grid, bc);
  const SplineComponent rqcomp = rq_component(qcomp, grid, bc, -1.0);
  // R and -RQ share the refined grid; merge them
  for (std::size_t i = 0; i < rcomp.coeffs.size(); ++i)
    rcomp.coeffs[i] += rqcomp.coeffs[i];
  return SplineFunction({qcomp, rcomp}, grid.radius());
}

}  // namespace detail

/// Truncated refined-grid interpolation operator R_{rho,m}. Samples f at
/// x_s, |s| <= m+l-1; interpolates f at the interior nodes.
template <typename F>
SplineFunction apply_R_truncated(F&& f, int m, const OperatorConfig& cfg) {
  const BlendConfig bc(cfg.coeffs.ell);
  if (bc.ell < 2)
    throw std::invalid_argument("apply_R_truncated: requires ell > 1");
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long smax = m + bc.ell - 1;
  const auto vals = detail::sample_nodes(f, grid, smax);
  return SplineFunction({detail::r_component(vals, smax, grid, bc)},
                        grid.radius());
}

/// Truncated RQ composition (scaled), exposed for the blend-identity checks.
template <typename F>
SplineFunction apply_RQ_truncated(F&& f, int m, const OperatorConfig& cfg) {
  const BlendConfig bc(cfg.coeffs.ell);
  if (bc.ell < 2)
    throw std::invalid_argument("apply_RQ_truncated: requires ell > 1");
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + cfg.coeffs.ell + cfg.coeffs.j0 - 1;
  const auto vals = detail::sample_nodes(f, grid, kmax);
  const SplineComponent qcomp = detail::q_component(vals, grid, cfg.coeffs);
  return SplineFunction({detail::rq_component(qcomp, grid, bc, 1.0)},
                        grid.radius());
}

/// Truncated blended interpolation operator P_{rho,m} = R + Q - RQ.
/// Uses exactly 2(m+l+j0)-1 samples; interpolates f at x_k, |k| <= m.
/// For l = 1 the piecewise linear Q already interpolates and P := Q.
template <typename F>
SplineFunction apply_P_truncated(F&& f, int m, const OperatorConfig& cfg) {
  if (cfg.coeffs.ell == 1) return apply_Q_truncated(f, m, cfg);
  const BlendConfig bc(cfg.coeffs.ell);
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + cfg.coeffs.ell + cfg.coeffs.j0 - 1;
  const auto vals = detail::sample_nodes(f, grid, kmax);
  return detail::build_P(vals, grid, cfg, bc);
}

/// P-bar variant: 2m+1 samples of f, Lagrange edge extensions outside.
template <typename F>
SplineFunction apply_P_bar(F&& f, int m, const OperatorConfig& cfg) {
  if (cfg.coeffs.ell == 1) return apply_Q_bar(f, m, cfg);
  const BlendConfig bc(cfg.coeffs.ell);
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + cfg.coeffs.ell + cfg.coeffs.j0 - 1;
  const auto inner = detail::sample_nodes(f, grid, m);
  const auto vals = detail::extend_samples(inner, grid, cfg.coeffs.ell, kmax);
  return detail::build_P(vals, grid, cfg, bc);
}

}  // namespace splinerec

#endif  // SPLINEREC_INTERP_BLEND_HPP
