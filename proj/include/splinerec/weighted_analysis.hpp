#ifndef SPLINEREC_WEIGHTED_ANALYSIS_HPP
#define SPLINEREC_WEIGHTED_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "splinerec/freud_weight.hpp"
#include "splinerec/integration.hpp"
#include "splinerec/spline_function.hpp"

namespace splinerec {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Corpus member: evaluator with analytic derivatives up to r_max and a
/// declared smoothness class (largest r with f in W^r_{p,w}).
struct CorpusFunction {
  std::string name;
  std::function<double(double, int)> deriv;  // k-th derivative, k <= r_max
  int r_max = 0;
  double smoothness = 0.0;  // +inf for C^inf members
  // stable f(x) exp(-a x^2) profile for growth-type members whose raw value
  // overflows where the weight underflows; empty for everything else
  std::function<double(double)> weighted;

  double operator()(double x) const { return deriv(x, 0); }
};

struct Domain {
  bool whole = true;
  double a = 0.0, b = 0.0;

  static Domain real_line() { return Domain{}; }
  static Domain interval(double a_, double b_) { return Domain{false, a_, b_}; }
};

/// Panel layout inside [a, b]: supplied breakpoints clipped to the interval,
/// padded with a unit-step grid so no panel is excessively wide.
inline std::vector<double> panel_points(double a, double b,
                                        const std::vector<double>& marks) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double t : marks)
    if (t > a && t < b) pts.push_back(t);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    out.push_back(pts[i]);
    const double gap = pts[i + 1] - pts[i];
    const int cuts = static_cast<int>(gap);  // cap panel width near 1
    for (int c = 1; c <= cuts; ++c)
      out.push_back(pts[i] + gap * c / (cuts + 1));
  }
  out.push_back(pts.back());
  return out;
}

/// Signed integral of f(x) w(x) over the domain; panels aligned to `marks`.
template <typename F>
double reference_weighted_integral(F&& f, const FreudWeight& w,
                                   const Domain& dom,
                                   const std::vector<double>& marks = {}) {
  auto g = [&](double x) { return f(x) * w(x); };
  if (!dom.whole)
    return integrate_segments(g, panel_points(dom.a, dom.b, marks));
  double core_r = 8.0;
  for (double t : marks) core_r = std::max(core_r, std::abs(t));
  const double core =
      integrate_segments(g, panel_points(-core_r, core_r, marks));
  const double right = integrate_tail(g, core_r);
  const double left = integrate_tail([&](double x) { return g(-x); }, core_r);
  return core + left + right;
}

namespace detail {

template <typename F>
double scan_max(F&& g, double a, double b, const std::vector<double>& marks) {
  const auto pts = panel_points(a, b, marks);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (int j = 0; j <= 64; ++j) {
      const double x = pts[i] + (pts[i + 1] - pts[i]) * j / 64.0;
      best = std::max(best, std::abs(g(x)));
    }
  return best;
}

}  // namespace detail

/// Weighted Lebesgue norm (integral form with the weight inside the power);
/// q = kInf uses a dense scan (64 points per panel).
template <typename F>
double weighted_Lq_norm(F&& f, double q, const FreudWeight& w,
                        const Domain& dom,
                        const std::vector<double>& marks = {}) {
  if (q == kInf) {
    auto g = [&](double x) { return f(x) * w(x); };
    if (!dom.whole) return detail::scan_max(g, dom.a, dom.b, marks);
    double core_r = 8.0;
    for (double t : marks) core_r = std::max(core_r, std::abs(t));
    double best = detail::scan_max(g, -core_r, core_r, marks);
    // scan geometric tail segments until they stop competing
    for (int side = 0; side < 2; ++side) {
      double x0 = core_r;
      int quiet = 0;
      for (int seg = 0; seg < 200 && quiet < 3; ++seg) {
        const double x1 = 2.0 * x0;
        double seg_max = 0.0;
        for (int j = 0; j <= 128; ++j) {
          const double x = x0 + (x1 - x0) * j / 128.0;
          seg_max = std::max(seg_max, std::abs(g(side ? -x : x)));
        }
        best = std::max(best, seg_max);
        quiet = (seg_max < 1e-13 * (best + 1e-300)) ? quiet + 1 : 0;
        x0 = x1;
      }
    }
    return best;
  }
  if (!(q >= 1.0)) throw std::invalid_argument("weighted_Lq_norm: q >= 1");
  auto g = [&](double x) { return std::pow(std::abs(f(x) * w(x)), q); };
  double total;
  if (!dom.whole) {
    total = integrate_segments(g, panel_points(dom.a, dom.b, marks));
  } else {
    double core_r = 8.0;
    for (double t : marks) core_r = std::max(core_r, std::abs(t));
    total = integrate_segments(g, panel_points(-core_r, core_r, marks)) +
            integrate_tail(g, core_r) +
            integrate_tail([&](double x) { return g(-x); }, core_r);
  }
  return std::pow(std::max(total, 0.0), 1.0 / q);
}

/// Weighted Sobolev norm over derivative orders 0..r; p = kInf takes the max
/// over orders, finite p the l_p combination.
inline double weighted_sobolev_norm(const CorpusFunction& f, int r, double p,
                                    const FreudWeight& w,
                                    const std::vector<double>& marks = {}) {
  if (r > f.r_max)
    throw std::invalid_argument("weighted_sobolev_norm: derivative order " +
                                std::to_string(r) + " not available for " +
                                f.name);
  const Domain dom = Domain::real_line();
  if (p == kInf) {
    double best = 0.0;
    for (int k = 0; k <= r; ++k)
      best = std::max(best, weighted_Lq_norm(
                                [&](double x) { return f.deriv(x, k); }, kInf,
                                w, dom, marks));
    return best;
  }
  double acc = 0.0;
  for (int k = 0; k <= r; ++k)
    acc += std::pow(weighted_Lq_norm([&](double x) { return f.deriv(x, k); },
                                     p, w, dom, marks),
                    p);
  return std::pow(acc, 1.0 / p);
}

/// Sobolev norm of a spline (derivatives from the piecewise form).
inline double spline_sobolev_norm(const SplineFunction& s, int r, double p,
                                  const FreudWeight& w) {
  const auto marks = s.breakpoints();
  const Domain dom = Domain::interval(-s.radius(), s.radius());
  if (p == kInf) {
    double best = 0.0;
    for (int k = 0; k <= r; ++k)
      best = std::max(best, weighted_Lq_norm(
                                [&](double x) { return s.derivative(x, k); },
                                kInf, w, dom, marks));
    return best;
  }
  double acc = 0.0;
  for (int k = 0; k <= r; ++k)
    acc += std::pow(
        weighted_Lq_norm([&](double x) { return s.derivative(x, k); }, p, w,
                         dom, marks),
        p);
  return std::pow(acc, 1.0 / p);
}

/// || f - approx ||_{L_{q,w}(R)}: interior gap over the truncation interval
/// (panels aligned to the spline knots) combined with the tail norm of f.
template <typename F>
double recovery_error(F&& f, const SplineFunction& approx, double q,
                      const FreudWeight& w,
                      const std::vector<double>& extra_marks = {},
                      const std::function<double(double)>& fw_tail = {}) {
  const double R = approx.radius();
  auto marks = approx.breakpoints();
  marks.insert(marks.end(), extra_marks.begin(), extra_marks.end());
  auto err = [&](double x) { return f(x) - approx(x); };
  auto fw = [&](double x) { return fw_tail ? fw_tail(x) : f(x) * w(x); };
  if (q == kInf) {
    const double inside =
        detail::scan_max([&](double x) { return err(x) * w(x); }, -R, R,
                         marks);
    double tails = 0.0;
    for (int side = 0; side < 2; ++side) {
      double x0 = R;
      int quiet = 0;
      for (int seg = 0; seg < 200 && quiet < 3; ++seg) {
        const double x1 = 2.0 * x0;
        double seg_max = 0.0;
        for (int j = 0; j <= 128; ++j) {
          const double x = x0 + (x1 - x0) * j / 128.0;
          seg_max = std::max(seg_max, std::abs(fw(side ? -x : x)));
        }
        tails = std::max(tails, seg_max);
        quiet = (seg_max < 1e-13 * (tails + inside + 1e-300)) ? quiet + 1 : 0;
        x0 = x1;
      }
    }
    return std::max(inside, tails);
  }
  auto gin = [&](double x) { return std::pow(std::abs(err(x) * w(x)), q); };
  auto gout = [&](double x) { return std::pow(std::abs(fw(x)), q); };
  const double inside = integrate_segments(gin, panel_points(-R, R, marks));
  const double tails =
      integrate_tail(gout, R) +
      integrate_tail([&](double x) { return gout(-x); }, R);
  return std::pow(std::max(inside + tails, 0.0), 1.0 / q);
}

}  // namespace splinerec

#endif  // SPLINEREC_WEIGHTED_ANALYSIS_HPP
