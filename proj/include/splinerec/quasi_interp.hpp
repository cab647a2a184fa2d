#ifndef SPLINEREC_QUASI_INTERP_HPP
#define SPLINEREC_QUASI_INTERP_HPP

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "splinerec/bspline.hpp"
#include "splinerec/freud_weight.hpp"
#include "splinerec/lagrange.hpp"
#include "splinerec/spline_function.hpp"

namespace splinerec {

/// Even coefficient stencil Lambda = {lambda(j)}_{|j|<=j0} for order 2l.
struct QuasiCoefficients {
  int ell = 2;
  int j0 = 1;
  std::vector<double> values;  // lambda(j) at index j + j0

  double lambda(int j) const {
    if (std::abs(j) > j0) return 0.0;
    return values[static_cast<std::size_t>(j + j0)];
  }
};

/// Cataloged stencils (piecewise linear and cubic).
inline QuasiCoefficients lambda_catalog(int ell) {
  QuasiCoefficients c;
  c.ell = ell;
  if (ell == 1) {
    c.j0 = 0;
    c.values = {1.0};
  } else if (ell == 2) {
    c.j0 = 1;
    c.values = {-1.0 / 6.0, 4.0 / 3.0, -1.0 / 6.0};
  } else {
    throw std::invalid_argument("lambda_catalog: no catalog entry for ell=" +
                                std::to_string(ell));
  }
  return c;
}

struct ValidationReport {
  bool ok = true;
  std::string message;
};

/// Checks evenness, the j0 bound, and numerical reproduction of monomials
/// x^k, k <= 2l-1, at random points in [0,1]. Never throws on violation.
inline ValidationReport validate_coefficients(const QuasiCoefficients& c,
                                              unsigned seed = 12345) {
  ValidationReport rep;
  if (c.ell < 1 || c.j0 < 0 ||
      c.values.size() != static_cast<std::size_t>(2 * c.j0 + 1)) {
    rep.ok = false;
    rep.message = "malformed stencil";
    return rep;
  }
  for (int j = 1; j <= c.j0; ++j)
    if (std::abs(c.lambda(j) - c.lambda(-j)) > 1e-14) {
      rep.ok = false;
      rep.message = "evenness violation at j=" + std::to_string(j);
      return rep;
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int two_ell = 2 * c.ell;
  for (int deg = 0; deg <= two_ell - 1; ++deg) {
    for (int trial = 0; trial < 50; ++trial) {
      const double x = unit(rng);
      // Qp(x) = sum_s sum_j lambda(j) (s-j)^deg M(x-s)
      double qx = 0.0;
      const long lo = static_cast<long>(std::ceil(x - c.ell));
      const long hi = static_cast<long>(std::floor(x + c.ell));
      for (long s = lo; s <= hi; ++s)
        for (int j = -c.j0; j <= c.j0; ++j)
          qx += c.lambda(j) * std::pow(static_cast<double>(s - j), deg) *
                bspline_eval(x - static_cast<double>(s), two_ell);
      if (std::abs(qx - std::pow(x, deg)) > 1e-9) {
        std::ostringstream os;
        os << "reproduction fails at monomial x^" << deg << " (x=" << x
           << ", got " << qx << ")";
        rep.ok = false;
        rep.message = os.str();
        return rep;
      }
    }
  }
  if (c.j0 < c.ell - 1) {
    // cannot happen for a reproducing stencil, kept as a guard
    rep.ok = false;
    rep.message = "j0 < ell - 1";
  }
  return rep;
}

/// Kernel L(x) = sum_{|j|<=j0} lambda(j) M_{2l}(x - j) as an explicit
/// piecewise polynomial with integer knots on [-(l+j0), l+j0].
inline PiecewisePolynomial build_kernel(const QuasiCoefficients& c) {
  const int two_ell = 2 * c.ell;
  const int half = c.ell + c.j0;
  std::vector<double> knots;
  for (int k = -half; k <= half; ++k) knots.push_back(k);
  return PiecewisePolynomial::from_derivatives(
      std::move(knots),
      [&](double x, int k) {
        double r = 0.0;
        for (int j = -c.j0; j <= c.j0; ++j)
          r += c.lambda(j) * bspline_derivative(x - j, two_ell, k);
        return r;
      },
      two_ell - 1);
}

struct OperatorConfig {
  FreudWeight weight;
  QuasiCoefficients coeffs;
  double rho;
};

namespace detail {

/// Samples f at x_k for |k| <= kmax in ascending k; wraps evaluator failure
/// with the offending node.
template <typename F>
std::vector<double> sample_nodes(F&& f, const RecoveryGrid& grid, long kmax) {
  std::vector<double> vals;
  vals.reserve(2 * kmax + 1);
  for (long k = -kmax; k <= kmax; ++k) {
    const double x = grid.node(k);
    try {
      vals.push_back(f(x));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "evaluator failed at node x_" << k << " = " << x << ": "
         << e.what();
      throw std::runtime_error(os.str());
    }
    if (!std::isfinite(vals.back())) {
      std::ostringstream os;
      os << "evaluator returned non-finite value at node x_" << k << " = "
         << x;
      throw std::runtime_error(os.str());
    }
  }
  return vals;
}

/// Q coefficients c_s = sum_j lambda(j) f(x_{s-j}) for |s| <= m+l-1, from
/// samples indexed |k| <= m+l+j0-1 (vals[k + m+l+j0-1]).
inline SplineComponent q_component(const std::vector<double>& vals,
                                   const RecoveryGrid& grid,
                                   const QuasiCoefficients& c) {
  const long smax = grid.m + c.ell - 1;
  const long kmax = smax + c.j0;
  SplineComponent comp;
  comp.step = grid.h;
  comp.two_ell = 2 * c.ell;
  comp.shift_min = -smax;
  comp.coeffs.assign(static_cast<std::size_t>(2 * smax + 1), 0.0);
  for (long s = -smax; s <= smax; ++s) {
    double acc = 0.0;
    for (int j = -c.j0; j <= c.j0; ++j)
      acc += c.lambda(j) * vals[static_cast<std::size_t>(s - j + kmax)];
    comp.coeffs[static_cast<std::size_t>(s + smax)] = acc;
  }
  return comp;
}

}  // namespace detail

/// Truncated scaled quasi-interpolation operator Q_{rho,m}. Exactly
/// 2(m+l+j0)-1 evaluations of f, in ascending node order.
template <typename F>
SplineFunction apply_Q_truncated(F&& f, int m, const OperatorConfig& cfg) {
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + cfg.coeffs.ell + cfg.coeffs.j0 - 1;
  const auto vals = detail::sample_nodes(f, grid, kmax);
  return SplineFunction({detail::q_component(vals, grid, cfg.coeffs)},
                        grid.radius());
}

namespace detail {

/// Extends samples taken at |k| <= m to |k| <= kmax using the (2l-1)-degree
/// Lagrange polynomials through the 2l edge samples on each side.
inline std::vector<double> extend_samples(const std::vector<double>& inner,
                                          const RecoveryGrid& grid, int ell,
                                          long kmax) {
  const long m = grid.m;
  if (m < 2 * ell)
    throw std::invalid_argument("bar operator requires m >= 2l");
  std::vector<double> lnodes, lvals, rnodes, rvals;
  for (long k = -m; k <= -m + 2 * ell - 1; ++k) {
    lnodes.push_back(grid.node(k));
    lvals.push_back(inner[static_cast<std::size_t>(k + m)]);
  }
  for (long k = m - 2 * ell + 1; k <= m; ++k) {
    rnodes.push_back(grid.node(k));
    rvals.push_back(inner[static_cast<std::size_t>(k + m)]);
  }
  const ExtensionPolynomials ext{
      lagrange_extension(std::move(lnodes), std::move(lvals)),
      lagrange_extension(std::move(rnodes), std::move(rvals))};
  std::vector<double> out(static_cast<std::size_t>(2 * kmax + 1));
  for (long k = -kmax; k <= kmax; ++k) {
    double v;
    if (k < -m)
      v = ext.left(grid.node(k));
    else if (k > m)
      v = ext.right(grid.node(k));
    else
      v = inner[static_cast<std::size_t>(k + m)];
    out[static_cast<std::size_t>(k + kmax)] = v;
  }
  return out;
}

}  // namespace detail

/// Q-bar variant: f sampled only at |k| <= m (2m+1 evaluations); the
/// out-of-range nodes use the Lagrange edge extensions.
template <typename F>
SplineFunction apply_Q_bar(F&& f, int m, const OperatorConfig& cfg) {
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + cfg.coeffs.ell + cfg.coeffs.j0 - 1;
  const auto inner = detail::sample_nodes(f, grid, m);
  const auto vals =
      detail::extend_samples(inner, grid, cfg.coeffs.ell, kmax);
  return SplineFunction({detail::q_component(vals, grid, cfg.coeffs)},
                        grid.radius());
}

}  // namespace splinerec

#endif  // SPLINEREC_QUASI_INTERP_HPP
