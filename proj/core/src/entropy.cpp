#include "spheuler/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheuler/errors.hpp"

namespace spheuler {

namespace {

inline double kernel_value(double s) { return 0.5 * s * std::abs(s); }

}  // namespace

EntropyKernel::EntropyKernel(const GasLaw& law, Options opts)
    : law_(law), opts_(opts) {
  if (opts_.order < 4) throw DomainError("EntropyKernel: order must be >= 4");
  const double lam = law_.lambda_kernel;
  rule_ = gauss_jacobi(opts_.order, lam, lam);
  rule_half_ = gauss_jacobi(std::max(4, opts_.order / 2), lam, lam);
  rule_edge_ = gauss_jacobi(opts_.order, 0.0, lam);
  mu0_ = jacobi_weight_mass(lam, lam);
  mu2_ = mu0_ / (2.0 * lam + 3.0);
}

EntropyKernel::Moments EntropyKernel::moments(const GaussRule& rule,
                                              double rho, double u) const {
  const double rt = std::pow(rho, law_.theta);
  Moments mom;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double tau = rule.nodes[k];
    const double w = rule.weights[k];
    const double s = u + rt * tau;
    const double K = kernel_value(s);
    mom.i0 += w * K;
    mom.j0 += w * std::abs(s);
    mom.j1 += w * std::abs(s) * tau;
    mom.q0 += w * K * (law_.theta * s + (1.0 - law_.theta) * u);
  }
  return mom;
}

void EntropyKernel::check_pair(double rho, double u,
                               const EntropyPair& fine) const {
  const Moments coarse = moments(rule_half_, rho, u);
  const double est_eta = std::abs(rho * coarse.i0 - fine.eta);
  const double est_q = std::abs(rho * coarse.q0 - fine.q);
  const double est = std::max(est_eta, est_q);
  const double scale = std::max(std::abs(fine.eta), std::abs(fine.q));
  if (est > opts_.check_abs + opts_.check_rel * scale) {
    std::ostringstream msg;
    msg << "entropy kernel quadrature did not converge at rho=" << rho
        << " u=" << u << " (estimate " << est << ")";
    throw NumericalError(msg.str(), est);
  }
}

EntropyPair EntropyKernel::pair(double rho, double u) const {
  if (!(rho >= 0.0)) throw DomainError("weak_entropy_pair: negative density");
  if (rho == 0.0) return {0.0, 0.0};
  const Moments mom = moments(rule_, rho, u);
  EntropyPair p{rho * mom.i0, rho * mom.q0};
  if (opts_.check) check_pair(rho, u, p);
  return p;
}

std::array<double, 2> EntropyKernel::gradient(double rho, double u) const {
  if (!(rho > opts_.rho_floor))
    throw DomainError("weak_entropy_gradient: density below evaluation floor");
  const double rt = std::pow(rho, law_.theta);
  const Moments mom = moments(rule_, rho, u);
  const double eta_m = mom.j0;
  const double d_rho_fixed_u = mom.i0 + law_.theta * rt * mom.j1;
  const double eta_rho = d_rho_fixed_u - u * eta_m;
  return {eta_rho, eta_m};
}

double EntropyKernel::fixed_u_rho_derivative(double rho, double u) const {
  if (!(rho > opts_.rho_floor))
    throw DomainError("fixed_u_rho_derivative: density below floor");
  const double rt = std::pow(rho, law_.theta);
  const Moments mom = moments(rule_, rho, u);
  return mom.i0 + law_.theta * rt * mom.j1;
}

std::array<double, 2> EntropyKernel::base_gradient(double rho_bar) const {
  if (!(rho_bar >= 0.0)) throw DomainError("base_gradient: negative density");
  if (rho_bar == 0.0) return {0.0, 0.0};  // kernel support collapses
  return gradient(rho_bar, 0.0);
}

EntropyPair EntropyKernel::modified_pair(double rho, double u,
                                         double rho_bar) const {
  if (!(rho >= 0.0) || !(rho_bar >= 0.0))
    throw DomainError("modified_pair: negative density");
  const EntropyPair base = pair(rho, u);
  const auto grad = base_gradient(rho_bar);
  const double m = rho * u;
  const double flux_rho = m;
  const double flux_m =
      rho > 0.0 ? m * u + pressure_polytropic(rho, law_) : 0.0;
  return {base.eta - grad[0] * (rho - rho_bar) - grad[1] * m,
          base.q - grad[0] * flux_rho - grad[1] * flux_m};
}

std::array<double, 3> EntropyKernel::sign_moments(double rho, double u) const {
  const double rt = std::pow(rho, law_.theta);
  const double tstar = -u / rt;
  if (tstar <= -1.0) return {mu0_, 0.0, mu2_};
  if (tstar >= 1.0) return {-mu0_, 0.0, -mu2_};

  // int_{-1}^{tstar} tau^j w dtau via the edge rule: map the (1+tau)^lambda
  // factor onto the rule weight, keep (1-tau)^lambda in the integrand.
  const double lam = law_.lambda_kernel;
  const double half = 0.5 * (1.0 + tstar);
  double t0 = 0.0, t1 = 0.0, t2 = 0.0;
  for (std::size_t k = 0; k < rule_edge_.size(); ++k) {
    const double x = rule_edge_.nodes[k];
    const double tau = -1.0 + half * (1.0 + x);
    const double f = std::pow(1.0 - tau, lam);
    const double w = rule_edge_.weights[k] * f;
    t0 += w;
    t1 += w * tau;
    t2 += w * tau * tau;
  }
  const double scale = std::pow(half, lam + 1.0);
  t0 *= scale;
  t1 *= scale;
  t2 *= scale;
  return {mu0_ - 2.0 * t0, -2.0 * t1, mu2_ - 2.0 * t2};
}

Hessian2 EntropyKernel::hessian(double rho, double u) const {
  if (!(rho > opts_.rho_floor))
    throw DomainError("entropy hessian: density below floor");
  const double th = law_.theta;
  const double rt = std::pow(rho, th);
  const Moments mom = moments(rule_, rho, u);
  const auto s = sign_moments(rho, u);

  const double rtm1 = std::pow(rho, th - 1.0);    // rho^(theta-1)
  const double r2tm1 = std::pow(rho, 2.0 * th - 1.0);
  Hessian2 h;
  h.mm = s[0] / rho;
  h.rm = (th * rt * s[1] - u * s[0]) / rho;
  h.rr = th * (1.0 + th) * rtm1 * mom.j1 + th * th * r2tm1 * s[2] -
         2.0 * u * th * rtm1 * s[1] + u * u * s[0] / rho;
  return h;
}

std::array<double, 2> EntropyKernel::fixed_u_rho_derivative_gradient(
    double rho, double u) const {
  if (!(rho > opts_.rho_floor))
    throw DomainError("fixed_u_rho_derivative_gradient: density below floor");
  const double th = law_.theta;
  const double rt = std::pow(rho, th);
  const Moments mom = moments(rule_, rho, u);
  const auto s = sign_moments(rho, u);
  const double d_rho = th * (1.0 + th) * std::pow(rho, th - 1.0) * mom.j1 +
                       th * th * std::pow(rho, 2.0 * th - 1.0) * s[2];
  const double d_u = mom.j0 + th * rt * s[1];
  return {d_rho, d_u};
}

std::array<double, 2> EntropyKernel::eta_m_gradient(double rho,
                                                    double u) const {
  if (!(rho > opts_.rho_floor))
    throw DomainError("eta_m_gradient: density below floor");
  const double th = law_.theta;
  const auto s = sign_moments(rho, u);
  return {th * std::pow(rho, th - 1.0) * s[1], s[0]};
}

EntropyEval EntropyKernel::evaluate(double rho, double u, double rho_bar,
                                    std::array<double, 2> xi) const {
  EntropyEval out;
  const EntropyPair p = pair(rho, u);
  out.eta_check = p.eta;
  out.q_check = p.q;
  if (rho > opts_.rho_floor) {
    const auto g = gradient(rho, u);
    out.eta_rho = g[0];
    out.eta_m = g[1];
    out.hessian_form = hessian(rho, u).form(xi[0], xi[1]);
  }
  const EntropyPair mod = modified_pair(rho, u, rho_bar);
  out.eta_tilde = mod.eta;
  out.q_tilde = mod.q;
  return out;
}

double physical_entropy(double rho, double m, const GasLaw& law) {
  if (!(rho > 0.0)) throw DomainError("physical_entropy: density must be > 0");
  return 0.5 * m * m / rho +
         law.kappa * std::pow(rho, law.gamma) / (law.gamma - 1.0);
}

double physical_entropy_hessian_form(double rho, double u,
                                     std::array<double, 2> xi,
                                     const GasLaw& law) {
  if (!(rho > 0.0))
    throw DomainError("physical_entropy_hessian_form: density must be > 0");
  const double u_xi = (xi[1] - u * xi[0]) / rho;
  return law.kappa * law.gamma * std::pow(rho, law.gamma - 2.0) * xi[0] * xi[0] +
         rho * u_xi * u_xi;
}

Hessian2 physical_entropy_hessian(double rho, double u, const GasLaw& law) {
  if (!(rho > 0.0))
    throw DomainError("physical_entropy_hessian: density must be > 0");
  Hessian2 h;
  const double pgg = law.kappa * law.gamma * std::pow(rho, law.gamma - 2.0);
  h.rr = u * u / rho + pgg;
  h.rm = -u / rho;
  h.mm = 1.0 / rho;
  return h;
}

namespace {

// Largest |mu| solving det(A - mu B) = 0 for symmetric A and SPD B.
double max_generalized_eigen(const Hessian2& A, const Hessian2& B) {
  const double a = B.rr * B.mm - B.rm * B.rm;
  const double b = -(A.rr * B.mm + A.mm * B.rr - 2.0 * A.rm * B.rm);
  const double c = A.rr * A.mm - A.rm * A.rm;
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  const double sq = std::sqrt(disc);
  const double mu1 = (-b + sq) / (2.0 * a);
  const double mu2 = (-b - sq) / (2.0 * a);
  return std::max(std::abs(mu1), std::abs(mu2));
}

}  // namespace

std::vector<BoundRow> verify_entropy_bounds(const EntropySampleSpec& spec,
                                            double rho_bar,
                                            const EntropyKernel& kernel,
                                            int level) {
  if (!(spec.rho_min > 0.0) || !(spec.rho_max > spec.rho_min))
    throw DomainError("verify_entropy_bounds: bad rho range");
  const GasLaw& law = kernel.law();
  const double th = law.theta;
  const auto base = kernel.base_gradient(rho_bar);

  struct Acc {
    double m = 0.0;
    double viol = -std::numeric_limits<double>::infinity();
  };
  Acc q_lower, sign_cond, grad_m, grad_rho, mod_size, mom_grad, fud_rho,
      fud_u, etam_rho, etam_u, hess_dom;

  const double lstep = std::log(spec.rho_max / spec.rho_min) /
                       std::max(1, spec.n_rho - 1);
  const double ustep = 2.0 * spec.u_max / std::max(1, spec.n_u - 1);
  long count = 0;

  for (int i = 0; i < spec.n_rho; ++i) {
    const double rho = spec.rho_min * std::exp(i * lstep);
    const double rt = std::pow(rho, th);
    for (int j = 0; j < spec.n_u; ++j) {
      const double u = -spec.u_max + j * ustep;
      const double m = rho * u;
      ++count;

      const EntropyPair p = kernel.pair(rho, u);
      const auto g = kernel.gradient(rho, u);
      const EntropyPair mod = kernel.modified_pair(rho, u, rho_bar);
      const double fixed_u = kernel.fixed_u_rho_derivative(rho, u);

      const double au = std::abs(u);
      const double A = rho * au * au * au + std::pow(rho, law.gamma + th);
      const double B = rho * u * u + rho + std::pow(rho, law.gamma);

      // Lower bound on the modified flux: smallest M with
      // q_tilde >= A/M - M B, i.e. the positive root of M^2 B + M q - A.
      {
        const double q = mod.q;
        const double M = (-q + std::sqrt(q * q + 4.0 * A * B)) / (2.0 * B);
        q_lower.m = std::max(q_lower.m, M);
      }
      // Pointwise sign condition -q + m (eta_rho + u eta_m) <= 0.
      sign_cond.viol = std::max(sign_cond.viol, -p.q + m * fixed_u);
      // Gradient growth.
      grad_m.m = std::max(grad_m.m, std::abs(g[1]) / (au + rt));
      grad_rho.m = std::max(grad_rho.m, std::abs(g[0]) / (u * u + rt * rt));
      // Modified entropy size.
      {
        const double mod_grad = (fixed_u - base[0]) - u * base[1];
        mod_size.m = std::max(
            mod_size.m, (std::abs(mod.eta) + rho * std::abs(mod_grad)) / B);
      }
      // Momentum-weighted modified gradient.
      {
        const double den = rho * u * u + std::pow(rho, law.gamma) +
                           rho * std::pow(rho_bar, 2.0 * th);
        mom_grad.m =
            std::max(mom_grad.m, std::abs(m * (g[1] - base[1])) / den);
      }
      // Derivatives of eta_rho + u eta_m in (rho, u).
      {
        const auto d = kernel.fixed_u_rho_derivative_gradient(rho, u);
        const double den_rho =
            std::pow(rho, th - 1.0) * au + std::pow(rho, 2.0 * th - 1.0);
        fud_rho.m = std::max(fud_rho.m, std::abs(d[0]) / den_rho);
        fud_u.m = std::max(fud_u.m, std::abs(d[1]) / (au + rt));
      }
      // Derivatives of eta_m in (rho, u).
      {
        const auto d = kernel.eta_m_gradient(rho, u);
        etam_rho.m =
            std::max(etam_rho.m, std::abs(d[0]) / std::pow(rho, th - 1.0));
        etam_u.m = std::max(etam_u.m, std::abs(d[1]));
      }
      // Hessian domination by the physical entropy.
      hess_dom.m = std::max(
          hess_dom.m, max_generalized_eigen(kernel.hessian(rho, u),
                                            physical_entropy_hessian(rho, u, law)));
    }
  }

  auto ratio_row = [&](const char* id, const Acc& acc) {
    return BoundRow{id, level, count, acc.m, 0.0, false};
  };
  std::vector<BoundRow> rows;
  rows.push_back(ratio_row("q_mod_lower", q_lower));
  rows.push_back(BoundRow{"flux_pairing_sign", level, count, 0.0,
                          sign_cond.viol, true});
  rows.push_back(ratio_row("grad_m_growth", grad_m));
  rows.push_back(ratio_row("grad_rho_growth", grad_rho));
  rows.push_back(ratio_row("mod_entropy_size", mod_size));
  rows.push_back(ratio_row("momentum_mod_grad", mom_grad));
  rows.push_back(ratio_row("fixed_u_grad_rho_deriv", fud_rho));
  rows.push_back(ratio_row("fixed_u_grad_u_deriv", fud_u));
  rows.push_back(ratio_row("mod_grad_m_rho_deriv", etam_rho));
  rows.push_back(ratio_row("mod_grad_m_u_deriv", etam_u));
  rows.push_back(ratio_row("hessian_domination", hess_dom));
  return rows;
}

std::string bound_report_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream out;
  out << "inequality,level,samples,empirical_M,max_violation\n";
  out.precision(17);
  for (const auto& r : rows) {
    out << r.id << ',' << r.level << ',' << r.samples << ',';
    if (r.sign_condition)
      out << ',' << r.max_violation << '\n';
    else
      out << r.empirical_m << ",\n";
  }
  return out.str();
}

}  // namespace spheuler
