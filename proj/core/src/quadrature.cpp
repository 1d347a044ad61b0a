#include "spheuler/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spheuler/errors.hpp"

namespace spheuler {

namespace {

// Implicit-shift QL diagonalization of a symmetric tridiagonal matrix,
// rotating a companion vector z so that on exit z[i] is the first component
// of the i-th eigenvector. d: diagonal, e: subdiagonal (e[n-1] unused).
void sym_tridiag_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  e[n - 1] = 0.0;
  const int max_it = 40;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    for (;;) {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > max_it)
        throw NumericalError("gauss rule: tridiagonal QL failed to converge",
                             std::abs(e[l]));
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

}  // namespace

double jacobi_weight_mass(double alpha, double beta) {
  return std::pow(2.0, alpha + beta + 1.0) * std::beta(alpha + 1.0, beta + 1.0);
}

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: order must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw DomainError("gauss_jacobi: exponents must exceed -1");

  // Three-term recurrence coefficients of the (monic) Jacobi polynomials.
  std::vector<double> diag(n), sub(n), z(n, 0.0);
  const double ab = alpha + beta;
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    diag[k] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
  }
  // sub[k] holds the off-diagonal sqrt(b_k) coupling rows k-1 and k.
  if (n > 1) {
    sub[0] = std::sqrt(4.0 * (alpha + 1.0) * (beta + 1.0) /
                       ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
      const double t = 2.0 * k + ab;
      sub[k - 1] = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                             (t * t * (t + 1.0) * (t - 1.0)));
    }
  }

  z[0] = 1.0;
  // sym_tridiag_eigen expects the subdiagonal shifted so that e[i] couples
  // d[i] and d[i+1].
  std::vector<double> d = diag, e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = sub[i];
  sym_tridiag_eigen(d, e, z);

  const double mu0 = jacobi_weight_mass(alpha, beta);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return d[i] < d[j]; });
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = d[order[i]];
    rule.weights[i] = mu0 * z[order[i]] * z[order[i]];
  }
  return rule;
}

GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace spheuler
