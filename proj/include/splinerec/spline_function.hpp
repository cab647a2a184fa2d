#ifndef SPLINEREC_SPLINE_FUNCTION_HPP
#define SPLINEREC_SPLINE_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "splinerec/bspline.hpp"

namespace splinerec {

/// One uniform B-spline expansion sum_s coeffs[s-shift_min] M_{2l}(x/step - s).
struct SplineComponent {
  double step = 1.0;
  int two_ell = 4;
  long shift_min = 0;
  std::vector<double> coeffs;

  long shift_max() const {
    return shift_min + static_cast<long>(coeffs.size()) - 1;
  }

  double derivative(double x, int order) const {
    const int ell = two_ell / 2;
    const double y = x / step;
    // active shifts: y - l < s < y + l
    long lo = static_cast<long>(std::ceil(y - ell));
    long hi = static_cast<long>(std::floor(y + ell));
    lo = std::max(lo, shift_min);
    hi = std::min(hi, shift_max());
    const auto& pp = bspline_pp(two_ell);
    double r = 0.0;
    for (long s = lo; s <= hi; ++s)
      r += coeffs[static_cast<std::size_t>(s - shift_min)] *
           pp.derivative(y - static_cast<double>(s), order);
    if (order > 0) r *= std::pow(1.0 / step, order);
    return r;
  }

  double operator()(double x) const { return derivative(x, 0); }

  /// Two-scale refinement: same function expressed on the half step.
  SplineComponent refined() const {
    const auto mask = two_scale_mask(two_ell);
    const int ell = two_ell / 2;
    SplineComponent out;
    out.step = step / 2.0;
    out.two_ell = two_ell;
    out.shift_min = 2 * shift_min - ell;
    out.coeffs.assign(coeffs.size() * 2 - 1 + two_ell, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (int k = 0; k <= two_ell; ++k)
        out.coeffs[2 * i + static_cast<std::size_t>(k)] += mask[k] * coeffs[i];
    return out;
  }
};

/// Sum of components, truncated to [-radius, radius] (zero outside).
class SplineFunction {
public:
  SplineFunction(std::vector<SplineComponent> components, double radius)
      : components_(std::move(components)), radius_(radius) {
    if (!(radius_ > 0.0))
      throw std::invalid_argument("SplineFunction: radius must be positive");
  }

  double radius() const { return radius_; }
  const std::vector<SplineComponent>& components() const {
    return components_;
  }

  double evaluate_untruncated(double x) const {
    double r = 0.0;
    for (const auto& c : components_) r += c(x);
    return r;
  }

  double operator()(double x) const {
    if (std::abs(x) > radius_) return 0.0;
    return evaluate_untruncated(x);
  }

  /// One-sided (right) derivative inside the truncation interval, 0 outside.
  double derivative(double x, int order) const {
    if (std::abs(x) > radius_) return 0.0;
    double r = 0.0;
    for (const auto& c : components_) r += c.derivative(x, order);
    return r;
  }

  double finest_step() const {
    double s = components_.front().step;
    for (const auto& c : components_) s = std::min(s, c.step);
    return s;
  }

  /// Knot grid covering [-radius, radius] at the finest component step;
  /// used to align integration panels with the piecewise structure.
  std::vector<double> breakpoints() const {
    const double s = finest_step();
    const long n = std::lround(radius_ / s);
    std::vector<double> pts;
    pts.reserve(2 * n + 1);
    for (long k = -n; k <= n; ++k) pts.push_back(static_cast<double>(k) * s);
    pts.front() = -radius_;
    pts.back() = radius_;
    return pts;
  }

  /// Merges all components onto the finest (dyadic) step; requires equal
  /// orders and power-of-two step ratios.
  SplineComponent flattened() const {
    const double fine = finest_step();
    std::vector<SplineComponent> parts;
    for (const auto& c : components_) {
      SplineComponent p = c;
      while (p.step > fine * 1.5) p = p.refined();
      if (std::abs(p.step - fine) > 1e-12 * fine ||
          p.two_ell != components_.front().two_ell)
        throw std::logic_error("flattened: incompatible component grids");
      parts.push_back(std::move(p));
    }
    long lo = parts.front().shift_min, hi = parts.front().shift_max();
    for (const auto& p : parts) {
      lo = std::min(lo, p.shift_min);
      hi = std::max(hi, p.shift_max());
    }
    SplineComponent out;
    out.step = fine;
    out.two_ell = parts.front().two_ell;
    out.shift_min = lo;
    out.coeffs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const auto& p : parts)
      for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        out.coeffs[static_cast<std::size_t>(p.shift_min - lo) + i] +=
            p.coeffs[i];
    return out;
  }

private:
  std::vector<SplineComponent> components_;
  double radius_;
};

}  // namespace splinerec

#endif  // SPLINEREC_SPLINE_FUNCTION_HPP
