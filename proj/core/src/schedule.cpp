#include "spheuler/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheuler/errors.hpp"

namespace spheuler {

ConstraintReport verify_constraints(const ViscousParams& params,
                                    const GasLaw& law) {
  if (!(params.eps > 0.0) || !(params.a > 0.0) || !(params.b > params.a) ||
      !(params.delta >= 0.0) || !(params.rho_bar >= 0.0))
    throw DomainError("verify_constraints: invalid parameter signs");

  const double bn = std::pow(params.b, params.n_dim);
  const double log_a = std::abs(std::log(params.a));
  ConstraintReport rep;
  rep.addends[0] = params.eps * bn / params.a;
  rep.addends[1] = params.delta * log_a;
  rep.addends[2] = params.delta * log_a * bn / params.eps;
  rep.addends[3] = std::pow(params.rho_bar, law.theta) * log_a;
  rep.addends[4] = std::pow(params.rho_bar, law.gamma) * bn;
  rep.addends[5] = std::sqrt(params.eps) / params.a;
  rep.total = 0.0;
  for (double v : rep.addends) rep.total += v;
  rep.convergence_combo = rep.addends[4] + (params.delta / params.eps) * bn;
  rep.pass = rep.total <= params.m0_budget &&
             rep.convergence_combo <= params.m0_budget;
  return rep;
}

ViscousParams schedule(double eps, int n_dim, double m0_budget,
                       const GasLaw& law, const ScheduleOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0))
    throw ScheduleError("schedule: eps must lie in (0, 1)", "eps", eps);
  if (n_dim < 2) throw DomainError("schedule: n_dim must be >= 2");
  if (!(m0_budget > 0.0)) throw DomainError("schedule: budget must be > 0");

  ViscousParams p;
  p.eps = eps;
  p.n_dim = n_dim;
  p.m0_budget = m0_budget;
  p.a = std::pow(eps, opts.a_exponent);
  p.b = std::pow(eps, -opts.b_exponent / n_dim);
  p.delta = std::pow(eps, opts.delta_exponent);
  const double log_eps = std::abs(std::log(eps));
  p.rho_bar = std::min(std::pow(eps, 1.0 / (2.0 * law.gamma)),
                       std::pow(log_eps, -2.0 / law.theta));

  if (!(p.a > 0.0 && p.a < 1.0))
    throw ScheduleError("schedule: inner radius outside (0, 1)", "a", p.a);
  if (!(p.b > 1.0))
    throw ScheduleError("schedule: outer radius must exceed 1", "b", p.b);
  if (p.delta > eps)
    throw ScheduleError("schedule: delta must not exceed eps", "delta",
                        p.delta);

  const ConstraintReport rep = verify_constraints(p, law);
  p.constraint_values = rep.addends;
  if (!rep.pass) {
    const auto worst =
        std::max_element(rep.addends.begin(), rep.addends.end());
    const auto idx = worst - rep.addends.begin();
    std::ostringstream msg;
    msg << "schedule: constraint budget exceeded (total " << rep.total
        << " vs " << m0_budget << "), worst addend " << kConstraintNames[idx];
    throw ScheduleError(msg.str(), kConstraintNames[idx], *worst);
  }
  return p;
}

std::string schedule_table_csv(const std::vector<ViscousParams>& rows,
                               const GasLaw& law) {
  std::ostringstream out;
  out.precision(17);
  out << "eps,a,b,delta,rho_bar";
  for (const char* name : kConstraintNames) out << ',' << name;
  out << ",total,pass\n";
  for (const auto& p : rows) {
    const ConstraintReport rep = verify_constraints(p, law);
    out << p.eps << ',' << p.a << ',' << p.b << ',' << p.delta << ','
        << p.rho_bar;
    for (double v : rep.addends) out << ',' << v;
    out << ',' << rep.total << ',' << (rep.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace spheuler
