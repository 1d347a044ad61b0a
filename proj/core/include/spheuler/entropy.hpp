#ifndef SPHEULER_ENTROPY_HPP_
#define SPHEULER_ENTROPY_HPP_

#include <array>
#include <string>
#include <vector>

#include "spheuler/gas_law.hpp"
#include "spheuler/quadrature.hpp"

namespace spheuler {

/// Pointwise evaluation of the weak entropy pair and its companions.
struct EntropyEval {
  double eta_check = 0.0;   ///< weak entropy
  double q_check = 0.0;     ///< weak entropy flux
  double eta_rho = 0.0;     ///< d(eta_check)/d(rho) at fixed m
  double eta_m = 0.0;       ///< d(eta_check)/d(m) at fixed rho
  double eta_tilde = 0.0;   ///< modified entropy (vanishes to 2nd order at base)
  double q_tilde = 0.0;     ///< modified entropy flux
  double hessian_form = 0.0;  ///< xi . Hess(eta_check) . xi for the given xi
};

struct EntropyPair {
  double eta = 0.0;
  double q = 0.0;
};

/// Symmetric 2x2 Hessian in conservative variables (rho, m).
struct Hessian2 {
  double rr = 0.0;
  double rm = 0.0;
  double mm = 0.0;

  double form(double xi_rho, double xi_m) const {
    return rr * xi_rho * xi_rho + 2.0 * rm * xi_rho * xi_m + mm * xi_m * xi_m;
  }
};

/// Weak entropy pair of the isentropic system, generated by the kernel
///   eta(rho, rho u) = int 1/2 s|s| [rho^(2 theta) - (u-s)^2]_+^lambda ds,
/// with the flux weight (theta s + (1-theta) u). Integrals are evaluated on
/// the exact support via the substitution s = u + rho^theta tau, which turns
/// the window into the Jacobi weight (1-tau^2)^lambda on [-1, 1].
///
/// All derivatives are taken by differentiating the fixed quadrature rule, so
/// analytic gradients are the exact derivatives of the quadrature values.
/// Second derivatives integrate a sign jump at tau = -u/rho^theta; those
/// moments are assembled from a split rule with the exact jump location.
class EntropyKernel {
 public:
  struct Options {
    int order = 64;           ///< Gauss-Jacobi order for the kernel integrals
    double check_rel = 1e-3;  ///< quadrature error estimate tolerance (relative)
    double check_abs = 1e-10;
    bool check = true;        ///< compare against the half-order rule
    double rho_floor = 1e-12; ///< derivative evaluation floor
  };

  explicit EntropyKernel(const GasLaw& law) : EntropyKernel(law, Options()) {}
  EntropyKernel(const GasLaw& law, Options opts);

  const GasLaw& law() const { return law_; }
  const Options& options() const { return opts_; }

  /// (eta_check, q_check). rho = 0 returns (0, 0).
  EntropyPair pair(double rho, double u) const;

  /// Partial derivatives of eta_check in conservative variables (rho, m).
  /// The m-derivative is taken at fixed rho, the rho-derivative at fixed m.
  std::array<double, 2> gradient(double rho, double u) const;

  /// eta_rho + u eta_m, equivalently the rho-derivative at fixed velocity u.
  double fixed_u_rho_derivative(double rho, double u) const;

  /// Modified pair vanishing to second order at (rho_bar, 0). At rho_bar = 0
  /// the base gradient is taken as its limit 0 and the pair is unmodified.
  EntropyPair modified_pair(double rho, double u, double rho_bar) const;

  /// Gradient of eta_check at the base state (rho_bar, 0); cached per base.
  std::array<double, 2> base_gradient(double rho_bar) const;

  /// Hessian of eta_check (= Hessian of eta_tilde) in (rho, m).
  Hessian2 hessian(double rho, double u) const;

  /// Derivatives of (eta_rho + u eta_m) as a function of (rho, u).
  std::array<double, 2> fixed_u_rho_derivative_gradient(double rho,
                                                        double u) const;
  /// Derivatives of eta_m as a function of (rho, u).
  std::array<double, 2> eta_m_gradient(double rho, double u) const;

  /// Full pointwise evaluation for a direction xi = (xi_rho, xi_m).
  EntropyEval evaluate(double rho, double u, double rho_bar,
                       std::array<double, 2> xi) const;

 private:
  struct Moments {
    double i0 = 0.0;  // int K(s) w
    double j0 = 0.0;  // int |s| w
    double j1 = 0.0;  // int |s| tau w
    double q0 = 0.0;  // int K(s)(theta s + (1-theta) u) w
  };
  Moments moments(const GaussRule& rule, double rho, double u) const;
  // int sgn(s) tau^j w(tau) dtau for j = 0, 1, 2, split at the jump.
  std::array<double, 3> sign_moments(double rho, double u) const;
  void check_pair(double rho, double u, const EntropyPair& fine) const;

  GasLaw law_;
  Options opts_;
  GaussRule rule_;       // main rule
  GaussRule rule_half_;  // half order, for the error estimate
  GaussRule rule_edge_;  // weight (1+x)^lambda, for split sign moments
  double mu0_ = 0.0;     // int w
  double mu2_ = 0.0;     // int tau^2 w
};

/// Physical (mechanical) entropy 1/2 m^2/rho + kappa rho^gamma/(gamma-1).
double physical_entropy(double rho, double m, const GasLaw& law);

/// Quadratic form of the physical entropy Hessian,
///   kappa gamma rho^(gamma-2) xi_rho^2 + rho u_xi^2,
/// with u_xi = (xi_m - u xi_rho)/rho.
double physical_entropy_hessian_form(double rho, double u,
                                     std::array<double, 2> xi,
                                     const GasLaw& law);

/// Closed-form Hessian of the physical entropy in (rho, m).
Hessian2 physical_entropy_hessian(double rho, double u, const GasLaw& law);

/// Log-spaced rho by uniform u sampling rectangle for the inequality suite.
struct EntropySampleSpec {
  double rho_min = 1e-2;
  double rho_max = 10.0;
  int n_rho = 200;
  double u_max = 10.0;
  int n_u = 200;
};

/// One inequality of the suite: the smallest empirical constant making it
/// hold on the sample grid, or the worst signed violation for the pointwise
/// sign condition.
struct BoundRow {
  std::string id;
  int level = 1;
  long samples = 0;
  double empirical_m = 0.0;
  double max_violation = 0.0;  // only meaningful for sign conditions
  bool sign_condition = false;
};

/// Evaluates the growth/sign inequality suite for the pair on a sample grid.
/// Violations are report entries, never exceptions.
std::vector<BoundRow> verify_entropy_bounds(const EntropySampleSpec& spec,
                                            double rho_bar,
                                            const EntropyKernel& kernel,
                                            int level = 1);

/// CSV serialization: one row per inequality per refinement level.
std::string bound_report_csv(const std::vector<BoundRow>& rows);

}  // namespace spheuler

#endif  // SPHEULER_ENTROPY_HPP_
