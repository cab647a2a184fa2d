#ifndef SPLINEREC_CORPUS_HPP
#define SPLINEREC_CORPUS_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "splinerec/weighted_analysis.hpp"

namespace splinerec {

namespace detail {

/// Probabilists' Hermite polynomial He_k(x).
inline double hermite_he(int k, double x) {
  double p0 = 1.0, p1 = x;
  if (k == 0) return p0;
  for (int j = 2; j <= k; ++j) {
    const double p2 = x * p1 - (j - 1.0) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * i);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace detail

/// gauss: e^{-x^2/2}, all derivatives analytic; effective smoothness is
/// unbounded (operators saturate at their own order).
inline CorpusFunction corpus_gauss() {
  CorpusFunction f;
  f.name = "gauss";
  f.r_max = 10;
  f.smoothness = kInf;
  f.deriv = [](double x, int k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * detail::hermite_he(k, x) * std::exp(-0.5 * x * x);
  };
  return f;
}

/// kink_r: x_+^r e^{-x^2/2}; exactly W^r but not W^{r+1} type regularity.
inline CorpusFunction corpus_kink(int r) {
  if (r < 1 || r > 4) throw std::invalid_argument("corpus_kink: r in 1..4");
  CorpusFunction f;
  f.name = "kink" + std::to_string(r);
  f.r_max = r;
  f.smoothness = r;
  f.deriv = [r](double x, int k) {
    if (x < 0.0) return 0.0;
    double acc = 0.0;
    for (int j = 0; j <= std::min(k, r); ++j) {
      double fall = 1.0;
      for (int i = 0; i < j; ++i) fall *= (r - i);
      const double pw = (r - j == 0) ? 1.0 : std::pow(x, r - j);
      const int kg = k - j;
      const double gs = (kg % 2 == 0) ? 1.0 : -1.0;
      acc += detail::binom(k, j) * fall * pw * gs *
             detail::hermite_he(kg, x) * std::exp(-0.5 * x * x);
    }
    return acc;
  };
  return f;
}

/// Fractional kink x_+^alpha e^{-x^2/2} (sharp witness for the recovery
/// rates when p <= q; alpha just above r - 1/p).
inline CorpusFunction corpus_kink_frac(double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("corpus_kink_frac: alpha > 0");
  CorpusFunction f;
  f.name = "kinkfrac";
  f.r_max = static_cast<int>(std::floor(alpha));
  f.smoothness = alpha;
  f.deriv = [alpha](double x, int k) {
    if (x <= 0.0) return 0.0;
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      double fall = 1.0;
      for (int i = 0; i < j; ++i) fall *= (alpha - i);
      const int kg = k - j;
      const double gs = (kg % 2 == 0) ? 1.0 : -1.0;
      acc += detail::binom(k, j) * fall * std::pow(x, alpha - j) * gs *
             detail::hermite_he(kg, x) * std::exp(-0.5 * x * x);
    }
    return acc;
  };
  return f;
}

/// oscil: cos(3x) e^{-x^2/4}.
inline CorpusFunction corpus_oscil() {
  CorpusFunction f;
  f.name = "oscil";
  f.r_max = 8;
  f.smoothness = kInf;
  f.deriv = [](double x, int k) {
    // (e^{-x^2/4})^{(j)} = B_j(x) e^{-x^2/4}, B_{j+1} = B_j' - (x/2) B_j
    std::vector<std::vector<double>> B(k + 1);
    B[0] = {1.0};
    for (int j = 0; j < k; ++j) {
      auto d = detail::poly_derivative(B[j]);
      std::vector<double> nxt(B[j].size() + 1, 0.0);
      for (std::size_t i = 0; i < d.size(); ++i) nxt[i] += d[i];
      for (std::size_t i = 0; i < B[j].size(); ++i) nxt[i + 1] -= 0.5 * B[j][i];
      B[j + 1] = std::move(nxt);
    }
    const double g = std::exp(-0.25 * x * x);
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      const int jc = k - j;  // derivative order on cos(3x)
      double c;
      switch (jc % 4) {
        case 0: c = std::cos(3.0 * x); break;
        case 1: c = -std::sin(3.0 * x); break;
        case 2: c = -std::cos(3.0 * x); break;
        default: c = std::sin(3.0 * x); break;
      }
      acc += detail::binom(k, j) * std::pow(3.0, jc) * c *
             detail::poly_eval(B[j], x) * g;
    }
    return acc * 1.0;
  };
  return f;
}

/// poly_k: He_k(x) (Hermite polynomial); exactness witness for degree <= k.
inline CorpusFunction corpus_poly(int k) {
  if (k < 0 || k > 7) throw std::invalid_argument("corpus_poly: k in 0..7");
  CorpusFunction f;
  f.name = "poly" + std::to_string(k);
  f.r_max = 10;
  f.smoothness = kInf;
  f.deriv = [k](double x, int d) {
    // He_k' = k He_{k-1}
    if (d > k) return 0.0;
    double fall = 1.0;
    for (int i = 0; i < d; ++i) fall *= (k - i);
    return fall * detail::hermite_he(k - d, x);
  };
  return f;
}

/// Growth witness e^{a x^2} (1+x^2)^{-sigma/2} for the lambda = 2 weight
/// exp(-a x^2): f w decays only polynomially, so the truncation tail
/// dominates the error (sharp for p > q recovery and for the quadratures).
inline CorpusFunction corpus_growth(double sigma, double a, int r_max = 4) {
  CorpusFunction f;
  f.name = "growth";
  f.r_max = r_max;
  f.smoothness = sigma;  // informational: sigma = r + 1/p + beta
  // f^{(k)} = e^{a x^2} (1+x^2)^{-sigma/2-k} R_k(x)
  std::vector<std::vector<double>> R(r_max + 1);
  R[0] = {1.0};
  for (int k = 0; k < r_max; ++k) {
    const auto& cur = R[k];
    auto d = detail::poly_derivative(cur);
    std::vector<double> nxt(cur.size() + 3, 0.0);
    // (1+x^2)(2 a x R + R')
    for (std::size_t i = 0; i < cur.size(); ++i) {
      nxt[i + 1] += 2.0 * a * cur[i];
      nxt[i + 3] += 2.0 * a * cur[i];
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      nxt[i] += d[i];
      nxt[i + 2] += d[i];
    }
    // - (sigma + 2k) x R
    for (std::size_t i = 0; i < cur.size(); ++i)
      nxt[i + 1] -= (sigma + 2.0 * k) * cur[i];
    while (nxt.size() > 1 && nxt.back() == 0.0) nxt.pop_back();
    R[k + 1] = std::move(nxt);
  }
  f.deriv = [R, sigma, a, r_max](double x, int k) {
    if (k > r_max)
      throw std::invalid_argument("corpus_growth: derivative unavailable");
    const double u = 1.0 + x * x;
    return std::exp(a * x * x) * std::pow(u, -0.5 * sigma - k) *
           detail::poly_eval(R[static_cast<std::size_t>(k)], x);
  };
  // the raw value overflows around x = 38 for a = 1/2; the product with the
  // matching weight is just the polynomial-decay profile
  f.weighted = [sigma](double x) { return std::pow(1.0 + x * x, -0.5 * sigma); };
  return f;
}

/// Name-based lookup used by the CLI; `r` and `p` feed the sharp witnesses.
inline CorpusFunction make_corpus(const std::string& id, double r, double p,
                                  double weight_a, double beta = 0.1) {
  if (id == "gauss") return corpus_gauss();
  if (id == "oscil") return corpus_oscil();
  if (id.rfind("kink", 0) == 0 && id.size() == 5)
    return corpus_kink(id[4] - '0');
  if (id.rfind("poly", 0) == 0 && id.size() == 5)
    return corpus_poly(id[4] - '0');
  if (id == "sharp-kink")
    return corpus_kink_frac(r - (p == kInf ? 0.0 : 1.0 / p) + beta);
  if (id == "sharp-growth")
    return corpus_growth(r + (p == kInf ? 0.0 : 1.0 / p) + beta, weight_a);
  throw std::invalid_argument("unknown corpus function: " + id);
}

}  // namespace splinerec

#endif  // SPLINEREC_CORPUS_HPP
