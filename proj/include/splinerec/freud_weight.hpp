#ifndef SPLINEREC_FREUD_WEIGHT_HPP
#define SPLINEREC_FREUD_WEIGHT_HPP

#include <cmath>
#include <stdexcept>

namespace splinerec {

/// Freud weight w(x) = exp(-a|x|^lambda + b), lambda > 1, a > 0.
///
/// The offset b only rescales the weight by a constant; it defaults to 0.
/// All members are immutable after construction.
class FreudWeight {
public:
  FreudWeight(double lambda, double a, double b = 0.0)
      : lambda_(lambda), a_(a), b_(b) {
    if (!(lambda > 1.0))
      throw std::invalid_argument("FreudWeight: lambda must be > 1");
    if (!(a > 0.0))
      throw std::invalid_argument("FreudWeight: a must be > 0");
  }

  double lambda() const { return lambda_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double operator()(double x) const {
    return std::exp(-a_ * std::pow(std::abs(x), lambda_) + b_);
  }

  /// nu_lambda = (2^(lambda-1) Gamma(lambda)^(-1) Gamma(lambda/2)^2)^(1/lambda),
  /// the scale constant of the Mhaskar-Rakhmanov-Saff numbers.
  double nu() const {
    const double g1 = std::tgamma(lambda_);
    const double g2 = std::tgamma(lambda_ / 2.0);
    return std::pow(std::pow(2.0, lambda_ - 1.0) * g2 * g2 / g1,
                    1.0 / lambda_);
  }

private:
  double lambda_;
  double a_;
  double b_;
};

/// Mhaskar-Rakhmanov-Saff number a_m = nu_lambda * m^(1/lambda).
inline double mrs_number(int m, const FreudWeight& w) {
  if (m < 1)
    throw std::invalid_argument("mrs_number: m must be >= 1");
  return w.nu() * std::pow(static_cast<double>(m), 1.0 / w.lambda());
}

/// Bounds on the truncation parameter rho derived from the constructive
/// conditions a*lambda*(x_eta - x_xi)*x_eta^(lambda-1) < 2l-1 (coarse grid)
/// and its 2^(-kappa*lambda)-scaled refined-grid counterpart.
struct RhoBound {
  double rho_max_Q;
  double rho_max_R;
  double chosen;
};

/// Picks rho = min(0.9, rho_max_Q/2, rho_max_R/2). The factor 1/2 keeps the
/// strict inequalities with margin uniformly in m.
inline RhoBound select_rho(const FreudWeight& w, int ell, int j0, int kappa) {
  if (ell < 1)
    throw std::invalid_argument("select_rho: ell must be >= 1");
  if (j0 < ell - 1)
    throw std::invalid_argument("select_rho: j0 must be >= ell - 1");
  if (kappa < 0)
    throw std::invalid_argument("select_rho: kappa must be >= 0");
  const double lam = w.lambda();
  const double nu_pow = std::pow(w.nu(), lam);
  const double bound = 2.0 * ell - 1.0;
  const double rho_q =
      std::pow(bound / (w.a() * lam * (ell + j0) * nu_pow), 1.0 / lam);
  const double a_kappa = w.a() * std::pow(2.0, -kappa * lam);
  const double rho_r =
      std::pow(bound / (a_kappa * lam * ell * nu_pow), 1.0 / lam);
  RhoBound rb;
  rb.rho_max_Q = rho_q;
  rb.rho_max_R = rho_r;
  rb.chosen = std::min(0.9, 0.5 * std::min(rho_q, rho_r));
  return rb;
}

/// Equidistant recovery grid: step h = rho*a_m/m, nodes x_k = k*h,
/// truncation interval [-rho*a_m, rho*a_m].
struct RecoveryGrid {
  int m;
  double rho;
  double a_m;
  double h;

  double node(long k) const { return static_cast<double>(k) * h; }
  double radius() const { return rho * a_m; }
};

inline RecoveryGrid build_grid(int m, double rho, const FreudWeight& w) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("build_grid: rho must be in (0,1)");
  RecoveryGrid g;
  g.m = m;
  g.rho = rho;
  g.a_m = mrs_number(m, w);
  g.h = rho * g.a_m / m;
  return g;
}

}  // namespace splinerec

#endif  // SPLINEREC_FREUD_WEIGHT_HPP
