#ifndef SPHEULER_TEST_FUNCTION_HPP_
#define SPHEULER_TEST_FUNCTION_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "spheuler/quadrature.hpp"

namespace spheuler {

/// C-infinity transition from 1 to 0: value 1 for x <= lo, 0 for x >= hi.
/// Value and derivative are closed-form.
class SmoothCutoff {
 public:
  SmoothCutoff(double lo, double hi);
  double value(double x) const;
  double derivative(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
};

/// Smooth compactly supported test function of (t, r) with evaluators for
/// the function and both first derivatives, plus origin-trace metadata.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> value;  // (t, r)
  std::function<double(double, double)> dt;
  std::function<double(double, double)> dr;
  double support_radius = 0.0;  ///< value = 0 for r >= support_radius
  double t_end = 0.0;           ///< value = 0 for t >= t_end

  double origin_value(double t) const { return value(t, 0.0); }
  double origin_slope(double t) const { return dr(t, 0.0); }
};

/// Spatially plain cutoff chi(r) psi(t); phi(t,0) = 1 (continuity testing).
TestFunction cutoff_test_function(const SmoothCutoff& chi,
                                  const SmoothCutoff& psi);
/// r chi(r) psi(t); phi(t,0) = 0 with phi_r(t,0) = chi(0) != 0, the
/// admissible momentum family that stresses the origin derivative.
TestFunction linear_test_function(const SmoothCutoff& chi,
                                  const SmoothCutoff& psi);
/// r^2 chi(r) psi(t); admissible with vanishing origin derivative.
TestFunction quadratic_test_function(const SmoothCutoff& chi,
                                     const SmoothCutoff& psi);

/// Lemma-style spatial cutoff omega: 1 on [0, plateau], 0 beyond cut.
SmoothCutoff lemma_cutoff(double plateau = 1.0, double cut = 2.0);

/// Smooth compactly supported function of (t, x) in n_dim dimensions with
/// closed-form gradient and time derivative. Components of x beyond n_dim
/// are ignored.
struct MultiDTestFunction {
  std::string name;
  std::function<double(double, std::array<double, 3>)> value;
  std::function<std::array<double, 3>(double, std::array<double, 3>)> gradient;
  std::function<double(double, std::array<double, 3>)> dt;
  double support_radius = 0.0;
  double t_end = 0.0;
};

/// phi(t, x) = x_j chi(|x|) psi(t), the component-bump family.
MultiDTestFunction component_bump(int j, const SmoothCutoff& chi,
                                  const SmoothCutoff& psi);
/// phi(t, x) = chi(|x|) psi(t), radially symmetric.
MultiDTestFunction radial_bump(const SmoothCutoff& chi,
                               const SmoothCutoff& psi);
/// phi(t, x) = x_j exp(-|x|^2) chi(|x|) psi(t) with a wide cutoff; inside
/// the plateau this matches the Gaussian closed form exactly.
MultiDTestFunction gaussian_component(int j, const SmoothCutoff& chi,
                                      const SmoothCutoff& psi);

/// Quadrature on the unit sphere S^(n-1): periodic trapezoid for n = 2,
/// Gauss-Legendre in the polar cosine times uniform azimuth for n = 3.
class SphereRule {
 public:
  SphereRule(int n_dim, int polar_order = 48, int azimuth_order = 96);
  const std::vector<std::array<double, 3>>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  int n_dim() const { return n_dim_; }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t k = 0; k < points_.size(); ++k)
      s += weights_[k] * f(points_[k]);
    return s;
  }

 private:
  std::vector<std::array<double, 3>> points_;
  std::vector<double> weights_;
  int n_dim_ = 3;
};

/// Surface area of S^(n-1) for n in {2, 3}.
double sphere_area(int n_dim);

/// Converts a multi-dimensional test function to the radial test function
///   zeta(t, r) = int_{|y|=1} y_j phi(t, r y) dS_y
/// by sphere quadrature. zeta(t, 0) = 0 holds to quadrature roundoff; the
/// origin slope zeta_r(t, 0) is generally nonzero and is reported by the
/// returned evaluators.
TestFunction radial_test_from_multiD(const MultiDTestFunction& phi, int j,
                                     int n_dim, int polar_order = 48,
                                     int azimuth_order = 96);

}  // namespace spheuler

#endif  // SPHEULER_TEST_FUNCTION_HPP_
