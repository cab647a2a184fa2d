#ifndef SPLINEREC_TENSOR_HPP
#define SPLINEREC_TENSOR_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "splinerec/interp_blend.hpp"
#include "splinerec/quadrature.hpp"

namespace splinerec {

/// Dense axis map applied along one tensor dimension: out = A * in.
struct AxisMap {
  double step = 1.0;
  long shift_min = 0;
  std::vector<std::vector<double>> rows;  // rows[out][in]

  std::size_t out_extent() const { return rows.size(); }
};

namespace detail {

/// Columns of the univariate coefficient maps, built by feeding unit sample
/// vectors through the scalar operator pipeline.
inline std::pair<AxisMap, AxisMap> build_axis_maps(int m,
                                                   const OperatorConfig& cfg,
                                                   bool blended) {
  const int ell = cfg.coeffs.ell, j0 = cfg.coeffs.j0;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + ell + j0 - 1;
  const long tmax = m + ell - 1;
  const std::size_t K = static_cast<std::size_t>(2 * kmax + 1);
  AxisMap coarse, fine;
  coarse.step = grid.h;
  coarse.shift_min = -tmax;
  coarse.rows.assign(static_cast<std::size_t>(2 * tmax + 1),
                     std::vector<double>(K, 0.0));
  std::vector<double> unit(K, 0.0);
  const BlendConfig bc(std::max(ell, 2));
  if (blended && ell >= 2) {
    fine.step = grid.h / bc.refine;
    fine.shift_min = -bc.refine * tmax;
    fine.rows.assign(static_cast<std::size_t>(2 * bc.refine * tmax + 1),
                     std::vector<double>(K, 0.0));
  }
  for (std::size_t k = 0; k < K; ++k) {
    unit[k] = 1.0;
    const SplineComponent qc = q_component(unit, grid, cfg.coeffs);
    for (std::size_t i = 0; i < qc.coeffs.size(); ++i)
      coarse.rows[i][k] = qc.coeffs[i];
    if (blended && ell >= 2) {
      SplineComponent rc =
          r_component(unit, kmax, grid, bc);
      const SplineComponent rqc = rq_component(qc, grid, bc, -1.0);
      for (std::size_t i = 0; i < rc.coeffs.size(); ++i)
        fine.rows[i][k] = rc.coeffs[i] + rqc.coeffs[i];
    }
    unit[k] = 0.0;
  }
  return {std::move(coarse), std::move(fine)};
}

}  // namespace detail

/// d-variate spline as a sum of tensor-product blocks (<= 2^d for P).
class TensorSpline {
public:
  struct Axis {
    double step;
    long shift_min;
    long extent;
  };
  struct Block {
    std::array<Axis, 3> axes;
    std::vector<double> coeffs;  // row-major, axis 0 slowest
  };

  TensorSpline(int d, int two_ell, double radius, std::vector<Block> blocks)
      : d_(d), two_ell_(two_ell), radius_(radius),
        blocks_(std::move(blocks)) {}

  int dim() const { return d_; }
  double radius() const { return radius_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  double operator()(const std::array<double, 3>& x) const {
    for (int a = 0; a < d_; ++a)
      if (std::abs(x[static_cast<std::size_t>(a)]) > radius_) return 0.0;
    const int ell = two_ell_ / 2;
    const auto& pp = bspline_pp(two_ell_);
    double total = 0.0;
    for (const auto& blk : blocks_) {
      std::array<std::vector<double>, 3> vals;
      std::array<std::vector<long>, 3> idx;
      bool dead = false;
      for (int a = 0; a < d_ && !dead; ++a) {
        const auto& ax = blk.axes[static_cast<std::size_t>(a)];
        const double y = x[static_cast<std::size_t>(a)] / ax.step;
        long lo = static_cast<long>(std::ceil(y - ell));
        long hi = static_cast<long>(std::floor(y + ell));
        lo = std::max(lo, ax.shift_min);
        hi = std::min(hi, ax.shift_min + ax.extent - 1);
        if (lo > hi) dead = true;
        for (long s = lo; s <= hi; ++s) {
          idx[static_cast<std::size_t>(a)].push_back(s - ax.shift_min);
          vals[static_cast<std::size_t>(a)].push_back(
              pp(y - static_cast<double>(s)));
        }
      }
      if (dead) continue;
      // strides for row-major layout
      long stride[3] = {1, 1, 1};
      for (int a = d_ - 2; a >= 0; --a)
        stride[a] = stride[a + 1] *
                    blk.axes[static_cast<std::size_t>(a + 1)].extent;
      const std::size_t n0 = idx[0].size();
      const std::size_t n1 = d_ > 1 ? idx[1].size() : 1;
      const std::size_t n2 = d_ > 2 ? idx[2].size() : 1;
      for (std::size_t i0 = 0; i0 < n0; ++i0)
        for (std::size_t i1 = 0; i1 < n1; ++i1)
          for (std::size_t i2 = 0; i2 < n2; ++i2) {
            long off = idx[0][i0] * stride[0];
            double v = vals[0][i0];
            if (d_ > 1) {
              off += idx[1][i1] * stride[1];
              v *= vals[1][i1];
            }
            if (d_ > 2) {
              off += idx[2][i2] * stride[2];
              v *= vals[2][i2];
            }
            total += blk.coeffs[static_cast<std::size_t>(off)] * v;
          }
    }
    return total;
  }

  /// Per-axis knot grid at the finest step of any block.
  std::vector<double> axis_breakpoints() const {
    double s = blocks_.front().axes[0].step;
    for (const auto& b : blocks_)
      for (int a = 0; a < d_; ++a)
        s = std::min(s, b.axes[static_cast<std::size_t>(a)].step);
    const long n = std::lround(radius_ / s);
    std::vector<double> pts;
    for (long k = -n; k <= n; ++k) pts.push_back(static_cast<double>(k) * s);
    return pts;
  }

private:
  int d_;
  int two_ell_;
  double radius_;
  std::vector<Block> blocks_;
};

namespace detail {

inline std::vector<double> apply_axis(const std::vector<double>& in,
                                      const std::array<long, 3>& ext, int d,
                                      int axis, const AxisMap& map,
                                      std::array<long, 3>& ext_out) {
  ext_out = ext;
  ext_out[static_cast<std::size_t>(axis)] =
      static_cast<long>(map.out_extent());
  long stride_in[3] = {1, 1, 1}, stride_out[3] = {1, 1, 1};
  for (int a = d - 2; a >= 0; --a) {
    stride_in[a] = stride_in[a + 1] * ext[static_cast<std::size_t>(a + 1)];
    stride_out[a] =
        stride_out[a + 1] * ext_out[static_cast<std::size_t>(a + 1)];
  }
  std::vector<double> out(
      static_cast<std::size_t>(ext_out[0] * (d > 1 ? ext_out[1] : 1) *
                               (d > 2 ? ext_out[2] : 1)),
      0.0);
  const long e0 = ext[0], e1 = d > 1 ? ext[1] : 1, e2 = d > 2 ? ext[2] : 1;
  const long o0 = ext_out[0], o1 = d > 1 ? ext_out[1] : 1,
             o2 = d > 2 ? ext_out[2] : 1;
  for (long i0 = 0; i0 < (axis == 0 ? o0 : e0); ++i0)
    for (long i1 = 0; i1 < (axis == 1 ? o1 : e1); ++i1)
      for (long i2 = 0; i2 < (axis == 2 ? o2 : e2); ++i2) {
        const long fiber = axis == 0 ? i0 : (axis == 1 ? i1 : i2);
        const auto& row = map.rows[static_cast<std::size_t>(fiber)];
        double acc = 0.0;
        for (long j = 0; j < ext[static_cast<std::size_t>(axis)]; ++j) {
          long a0 = axis == 0 ? j : i0, a1 = axis == 1 ? j : i1,
               a2 = axis == 2 ? j : i2;
          acc += row[static_cast<std::size_t>(j)] *
                 in[static_cast<std::size_t>(a0 * stride_in[0] +
                                             a1 * stride_in[1] +
                                             a2 * stride_in[2])];
        }
        out[static_cast<std::size_t>(i0 * stride_out[0] + i1 * stride_out[1] +
                                     i2 * stride_out[2])] = acc;
      }
  return out;
}

template <typename F>
std::vector<double> sample_tensor(F&& f, const RecoveryGrid& grid, int d,
                                  long kmax) {
  const long K = 2 * kmax + 1;
  const long total = d == 1 ? K : (d == 2 ? K * K : K * K * K);
  std::vector<double> vals(static_cast<std::size_t>(total));
  std::array<double, 3> x{0.0, 0.0, 0.0};
  std::size_t pos = 0;
  for (long i0 = -kmax; i0 <= kmax; ++i0) {
    x[0] = grid.node(i0);
    if (d == 1) {
      vals[pos++] = f(x);
      continue;
    }
    for (long i1 = -kmax; i1 <= kmax; ++i1) {
      x[1] = grid.node(i1);
      if (d == 2) {
        vals[pos++] = f(x);
        continue;
      }
      for (long i2 = -kmax; i2 <= kmax; ++i2) {
        x[2] = grid.node(i2);
        vals[pos++] = f(x);
      }
    }
  }
  return vals;
}

template <typename F>
TensorSpline apply_tensor(F&& f, int d, int m, const OperatorConfig& cfg,
                          bool blended) {
  if (d < 1 || d > 3)
    throw std::invalid_argument("tensor operators support d in {1,2,3}");
  const int ell = cfg.coeffs.ell, j0 = cfg.coeffs.j0;
  const RecoveryGrid grid = build_grid(m, cfg.rho, cfg.weight);
  const long kmax = m + ell + j0 - 1;
  const auto maps = build_axis_maps(m, cfg, blended);
  const std::vector<const AxisMap*> choices =
      (blended && ell >= 2)
          ? std::vector<const AxisMap*>{&maps.first, &maps.second}
          : std::vector<const AxisMap*>{&maps.first};
  const auto samples = sample_tensor(f, grid, d, kmax);
  const long K = 2 * kmax + 1;
  std::vector<TensorSpline::Block> blocks;
  const std::size_t ncomb = static_cast<std::size_t>(1)
                            << (choices.size() == 1 ? 0 : d);
  for (std::size_t comb = 0; comb < ncomb; ++comb) {
    std::array<long, 3> ext{K, d > 1 ? K : 1, d > 2 ? K : 1};
    std::vector<double> t = samples;
    TensorSpline::Block blk;
    for (int a = 0; a < d; ++a) {
      const AxisMap& map =
          *choices[(choices.size() == 1) ? 0 : ((comb >> a) & 1)];
      std::array<long, 3> ext2;
      t = apply_axis(t, ext, d, a, map, ext2);
      ext = ext2;
      blk.axes[static_cast<std::size_t>(a)] = {
          map.step, map.shift_min, static_cast<long>(map.out_extent())};
    }
    for (int a = d; a < 3; ++a)
      blk.axes[static_cast<std::size_t>(a)] = {1.0, 0, 1};
    blk.coeffs = std::move(t);
    blocks.push_back(std::move(blk));
  }
  return TensorSpline(d, 2 * ell, grid.radius(), std::move(blocks));
}

}  // namespace detail

template <typename F>
TensorSpline apply_Qd_truncated(F&& f, int d, int m,
                                const OperatorConfig& cfg) {
  return detail::apply_tensor(f, d, m, cfg, false);
}

template <typename F>
TensorSpline apply_Pd_truncated(F&& f, int d, int m,
                                const OperatorConfig& cfg) {
  return detail::apply_tensor(f, d, m, cfg, true);
}

/// Tensor-product quadrature: sum over the node tensor of prod lambda_{s_i}
/// times f, reusing the univariate rule weights.
template <typename F>
double integrate_d(RuleKind kind, F&& f, int d, int m,
                   const OperatorConfig& cfg) {
  if (d < 1 || d > 3)
    throw std::invalid_argument("integrate_d: d in {1,2,3}");
  const WeightedQuadratureRule& rule = get_rule(kind, m, cfg);
  const std::size_t K = rule.nodes.size();
  std::array<double, 3> x{0.0, 0.0, 0.0};
  std::vector<double> terms;
  terms.reserve(d == 1 ? K : (d == 2 ? K * K : K * K * K));
  for (std::size_t i0 = 0; i0 < K; ++i0) {
    x[0] = rule.nodes[i0];
    if (d == 1) {
      terms.push_back(rule.weights[i0] * f(x));
      continue;
    }
    for (std::size_t i1 = 0; i1 < K; ++i1) {
      x[1] = rule.nodes[i1];
      const double w01 = rule.weights[i0] * rule.weights[i1];
      if (d == 2) {
        terms.push_back(w01 * f(x));
        continue;
      }
      for (std::size_t i2 = 0; i2 < K; ++i2) {
        x[2] = rule.nodes[i2];
        terms.push_back(w01 * rule.weights[i2] * f(x));
      }
    }
  }
  return pairwise_sum(terms);
}

/// || f1 x f2 - T ||_{L_{q,w^2}(R^2)} for a separable target f(x,y) =
/// f1(x) f2(y): interior via 2-d panels on the knot grid, tails via the
/// factorized full-plane minus box integrals.
template <typename F1, typename F2>
double recovery_error_2d(F1&& f1, F2&& f2, const TensorSpline& T, double q,
                         const FreudWeight& w) {
  if (T.dim() != 2)
    throw std::invalid_argument("recovery_error_2d: spline must be 2-d");
  if (q == kInf)
    throw std::invalid_argument("recovery_error_2d: finite q only");
  const double R = T.radius();
  const auto bp = T.axis_breakpoints();
  const auto& gl = gauss_legendre(4);
  std::vector<double> cell_sums;
  cell_sums.reserve((bp.size() - 1) * (bp.size() - 1));
  std::array<double, 3> xy{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double cx = 0.5 * (bp[i] + bp[i + 1]),
                 rx = 0.5 * (bp[i + 1] - bp[i]);
    for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
      const double cy = 0.5 * (bp[j] + bp[j + 1]),
                   ry = 0.5 * (bp[j + 1] - bp[j]);
      double acc = 0.0;
      for (std::size_t a = 0; a < gl.nodes.size(); ++a)
        for (std::size_t b = 0; b < gl.nodes.size(); ++b) {
          xy[0] = cx + rx * gl.nodes[a];
          xy[1] = cy + ry * gl.nodes[b];
          const double err = f1(xy[0]) * f2(xy[1]) - T(xy);
          acc += gl.weights[a] * gl.weights[b] *
                 std::pow(std::abs(err * w(xy[0]) * w(xy[1])), q);
        }
      cell_sums.push_back(acc * rx * ry);
    }
  }
  const double interior = pairwise_sum(cell_sums);
  // tails: ||f||^q over R^2 minus the box, factorized per axis
  auto axis_q = [&](auto&& g, bool box_only) {
    auto integrand = [&](double x) {
      return std::pow(std::abs(g(x) * w(x)), q);
    };
    const double box = integrate_segments(integrand, panel_points(-R, R, bp));
    if (box_only) return box;
    return box + integrate_tail(integrand, R) +
           integrate_tail([&](double x) { return integrand(-x); }, R);
  };
  const double fullq = axis_q(f1, false) * axis_q(f2, false);
  const double boxq = axis_q(f1, true) * axis_q(f2, true);
  const double tail = std::max(fullq - boxq, 0.0);
  return std::pow(interior + tail, 1.0 / q);
}

}  // namespace splinerec

#endif  // SPLINEREC_TENSOR_HPP
