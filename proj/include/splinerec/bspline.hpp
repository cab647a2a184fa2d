#ifndef SPLINEREC_BSPLINE_HPP
#define SPLINEREC_BSPLINE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace splinerec {

namespace detail {

/// Uniform B-spline of order n on knots 0..n, Cox-de Boor recurrence.
/// Right-continuous at knots (value taken from the right).
inline double forward_bspline(double t, int n) {
  if (n == 1) return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
  if (t <= 0.0 || t >= n) return 0.0;
  return (t * forward_bspline(t, n - 1) +
          (static_cast<double>(n) - t) * forward_bspline(t - 1.0, n - 1)) /
         (n - 1);
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline void check_order(int two_ell) {
  if (two_ell < 2 || two_ell > 8 || two_ell % 2 != 0)
    throw std::invalid_argument("bspline: order must be one of {2,4,6,8}");
}

}  // namespace detail

/// Symmetric cardinal B-spline M_{2l} with support [-l, l].
inline double bspline_eval(double x, int two_ell) {
  detail::check_order(two_ell);
  return detail::forward_bspline(x + 0.5 * two_ell, two_ell);
}

/// order-th derivative of M_{2l}; one-sided value from the right at knots.
/// Uses M_n'(x) = M_{n-1}(x+1/2) - M_{n-1}(x-1/2) applied recursively.
inline double bspline_derivative(double x, int two_ell, int order) {
  detail::check_order(two_ell);
  if (order < 0 || order >= two_ell)
    throw std::invalid_argument("bspline_derivative: order must be in [0, 2l)");
  if (order == 0) return bspline_eval(x, two_ell);
  const int n = two_ell - order;
  double sum = 0.0;
  for (int i = 0; i <= order; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * detail::binomial(order, i) *
           detail::forward_bspline(x + 0.5 * two_ell - i, n);
  }
  return sum;
}

/// Two-scale mask: M(x) = sum_k mask[k] * M(2x - (k - l)), k = 0..2l.
inline std::vector<double> two_scale_mask(int two_ell) {
  detail::check_order(two_ell);
  std::vector<double> mask(two_ell + 1);
  const double scale = std::pow(2.0, 1 - two_ell);
  for (int k = 0; k <= two_ell; ++k)
    mask[k] = scale * detail::binomial(two_ell, k);
  return mask;
}

class PiecewisePolynomial;
inline const PiecewisePolynomial& bspline_pp(int two_ell);

/// Piecewise polynomial with sorted breakpoints; identically zero outside
/// [breakpoints.front(), breakpoints.back()]. Coefficients are stored per
/// interval in ascending powers of (x - left_breakpoint).
class PiecewisePolynomial {
public:
  PiecewisePolynomial(std::vector<double> breakpoints,
                      std::vector<std::vector<double>> coeffs)
      : breaks_(std::move(breakpoints)), coeffs_(std::move(coeffs)) {
    if (breaks_.size() < 2 || coeffs_.size() != breaks_.size() - 1)
      throw std::invalid_argument("PiecewisePolynomial: size mismatch");
  }

  /// Builds from local derivatives: derivs(x, k) must return the k-th
  /// one-sided (right) derivative at x; degree bounds the local degree.
  template <typename F>
  static PiecewisePolynomial from_derivatives(std::vector<double> breakpoints,
                                              F&& derivs, int degree) {
    std::vector<std::vector<double>> coeffs;
    coeffs.reserve(breakpoints.size() - 1);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      std::vector<double> c(degree + 1);
      double fact = 1.0;
      for (int k = 0; k <= degree; ++k) {
        if (k > 0) fact *= k;
        c[k] = derivs(breakpoints[i], k) / fact;
      }
      coeffs.push_back(std::move(c));
    }
    return PiecewisePolynomial(std::move(breakpoints), std::move(coeffs));
  }

  const std::vector<double>& breakpoints() const { return breaks_; }

  double operator()(double x) const { return derivative(x, 0); }

  double derivative(double x, int order) const {
    const long i = locate(x);
    if (i < 0) return 0.0;
    const double t = x - breaks_[static_cast<std::size_t>(i)];
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    double r = 0.0;
    for (long k = static_cast<long>(c.size()) - 1; k >= order; --k) {
      double fk = 1.0;
      for (int j = 0; j < order; ++j) fk *= static_cast<double>(k - j);
      r = r * t + fk * c[static_cast<std::size_t>(k)];
    }
    return r;
  }

  /// Exact integral over [a, b] (clipped to the support).
  double integrate(double a, double b) const {
    if (a > b) return -integrate(b, a);
    a = std::max(a, breaks_.front());
    b = std::min(b, breaks_.back());
    if (a >= b) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      const double lo = std::max(a, breaks_[i]);
      const double hi = std::min(b, breaks_[i + 1]);
      if (lo >= hi) continue;
      const double t0 = lo - breaks_[i], t1 = hi - breaks_[i];
      total += antiderivative(i, t1) - antiderivative(i, t0);
    }
    return total;
  }

private:
  // Horner evaluation of sum_k c_k t^{k+1}/(k+1).
  double antiderivative(std::size_t i, double t) const {
    const auto& c = coeffs_[i];
    double r = 0.0;
    for (long k = static_cast<long>(c.size()) - 1; k >= 0; --k)
      r = r * t + c[static_cast<std::size_t>(k)] / (k + 1.0);
    return r * t;
  }

  long locate(double x) const {
    if (x < breaks_.front() || x >= breaks_.back()) return -1;
    // breakpoint grids here are tiny; linear scan is fine
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
      if (x < breaks_[i + 1]) return static_cast<long>(i);
    return -1;
  }

  std::vector<double> breaks_;
  std::vector<std::vector<double>> coeffs_;
};

/// Cached piecewise-polynomial form of M_{2l} for fast repeated evaluation.
inline const PiecewisePolynomial& bspline_pp(int two_ell) {
  detail::check_order(two_ell);
  static const auto make = [](int n) {
    std::vector<double> knots(n + 1);
    for (int k = 0; k <= n; ++k) knots[k] = k - 0.5 * n;
    return PiecewisePolynomial::from_derivatives(
        std::move(knots),
        [n](double x, int k) { return bspline_derivative(x, n, k); }, n - 1);
  };
  static const PiecewisePolynomial tab[4] = {make(2), make(4), make(6),
                                             make(8)};
  return tab[two_ell / 2 - 1];
}

}  // namespace splinerec

#endif  // SPLINEREC_BSPLINE_HPP
