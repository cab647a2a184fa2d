#ifndef SPLINEREC_LAGRANGE_HPP
#define SPLINEREC_LAGRANGE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace splinerec {

/// Polynomial interpolant in barycentric form (second kind).
class BarycentricPolynomial {
public:
  BarycentricPolynomial(std::vector<double> nodes, std::vector<double> values)
      : nodes_(std::move(nodes)), values_(std::move(values)) {
    const std::size_t n = nodes_.size();
    if (n == 0 || values_.size() != n)
      throw std::invalid_argument("BarycentricPolynomial: size mismatch");
    weights_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double d = nodes_[i] - nodes_[j];
        if (d == 0.0)
          throw std::invalid_argument("BarycentricPolynomial: duplicate node");
        weights_[i] /= d;
      }
  }

  double operator()(double x) const {
    // exact hit avoids the 0/0 form
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (x == nodes_[i]) return values_[i];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double t = weights_[i] / (x - nodes_[i]);
      num += t * values_[i];
      den += t;
    }
    return num / den;
  }

  std::size_t degree_bound() const { return nodes_.size() - 1; }

private:
  std::vector<double> nodes_, values_, weights_;
};

inline BarycentricPolynomial lagrange_extension(std::vector<double> nodes,
                                                std::vector<double> values) {
  return BarycentricPolynomial(std::move(nodes), std::move(values));
}

/// Left/right edge extensions used by the bar variants of the operators.
struct ExtensionPolynomials {
  BarycentricPolynomial left;
  BarycentricPolynomial right;
};

}  // namespace splinerec

#endif  // SPLINEREC_LAGRANGE_HPP
