#ifndef SPHEULER_QUADRATURE_HPP_
#define SPHEULER_QUADRATURE_HPP_

#include <vector>

namespace spheuler {

/// Nodes and weights of a Gaussian rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) s += weights[k] * f(nodes[k]);
    return s;
  }
};

/// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1],
/// alpha, beta > -1. Computed by the Golub-Welsch eigenvalue method, so
/// non-integer exponents (the endpoint singularity for gamma > 3) are exact
/// in the weight.
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Legendre rule (alpha = beta = 0).
GaussRule gauss_legendre(int n);

/// Zeroth moment of the Jacobi weight, int_{-1}^{1} (1-x)^a (1+x)^b dx.
double jacobi_weight_mass(double alpha, double beta);

}  // namespace spheuler

#endif  // SPHEULER_QUADRATURE_HPP_
