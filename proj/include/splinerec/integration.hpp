#ifndef SPLINEREC_INTEGRATION_HPP
#define SPLINEREC_INTEGRATION_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace splinerec {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline const GaussLegendre& gauss_legendre(int n) {
  static auto make = [](int k) {
    GaussLegendre gl;
    gl.nodes.resize(k);
    gl.weights.resize(k);
    for (int i = 0; i < (k + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= k; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = k * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
      gl.nodes[i] = -x;
      gl.nodes[k - 1 - i] = x;
      gl.weights[i] = wgt;
      gl.weights[k - 1 - i] = wgt;
    }
    return gl;
  };
  static const GaussLegendre g4 = make(4), g8 = make(8), g16 = make(16),
                             g32 = make(32);
  switch (n) {
    case 4: return g4;
    case 8: return g8;
    case 16: return g16;
    case 32: return g32;
    default: {
      static thread_local GaussLegendre custom;
      custom = make(n);
      return custom;
    }
  }
}

inline double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v, 0, v.size());
}

template <typename F>
double gl_panel(F&& f, double a, double b, const GaussLegendre& gl) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * f(c + r * gl.nodes[i]);
  return s * r;
}

/// Composite integration over the segments of `pts` with per-segment
/// bisection until the halved estimate is stable to rel_tol.
template <typename F>
double integrate_segments(F&& f, const std::vector<double>& pts,
                         double rel_tol = 1e-10, int points = 16,
                         int max_depth = 12) {
  const GaussLegendre& gl = gauss_legendre(points);
  std::function<double(double, double, double, int)> refine =
      [&](double a, double b, double coarse, int depth) -> double {
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(f, a, mid, gl);
    const double right = gl_panel(f, mid, b, gl);
    const double fine = left + right;
    if (depth >= max_depth ||
        std::abs(fine - coarse) <=
            rel_tol * (std::abs(fine) + 1e-300))
      return fine;
    return refine(a, mid, left, depth + 1) +
           refine(mid, b, right, depth + 1);
  };
  std::vector<double> parts;
  parts.reserve(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i] >= pts[i + 1]) continue;
    const double coarse = gl_panel(f, pts[i], pts[i + 1], gl);
    parts.push_back(refine(pts[i], pts[i + 1], coarse, 0));
  }
  return pairwise_sum(parts);
}

/// Integral of f over [start, +inf) via geometric segments [X, 2X, ...];
/// stops when a segment contributes below rel_tail of the running total.
template <typename F>
double integrate_tail(F&& f, double start, double rel_tail = 1e-16,
                      int max_segments = 220) {
  double x0 = std::max(start, 1e-8);
  std::vector<double> parts;
  if (start < x0) parts.push_back(integrate_segments(f, {start, x0}));
  double total = parts.empty() ? 0.0 : parts[0];
  for (int seg = 0; seg < max_segments; ++seg) {
    const double x1 = 2.0 * x0;
    const double piece = integrate_segments(f, {x0, x1});
    parts.push_back(piece);
    total += piece;
    if (std::abs(piece) <= rel_tail * (std::abs(total) + 1e-300) &&
        seg >= 2)
      break;
    x0 = x1;
  }
  return pairwise_sum(parts);
}

}  // namespace splinerec

#endif  // SPLINEREC_INTEGRATION_HPP
