#include "spheuler/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spheuler {

RadialGrid::RadialGrid(std::vector<double> nodes, int n_dim,
                       double min_spacing)
    : nodes_(std::move(nodes)), n_dim_(n_dim) {
  if (n_dim_ < 2) throw DomainError("RadialGrid: n_dim must be >= 2");
  if (nodes_.size() < 3) throw DomainError("RadialGrid: need >= 3 nodes");
  if (!(nodes_.front() > 0.0)) throw DomainError("RadialGrid: a must be > 0");

  min_node_spacing_ = nodes_[1] - nodes_[0];
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double h = nodes_[i + 1] - nodes_[i];
    if (!(h > 0.0)) throw DomainError("RadialGrid: nodes not increasing");
    if (h < min_spacing)
      throw DomainError("RadialGrid: spacing below configured minimum (" +
                        std::to_string(h) + ")");
    min_node_spacing_ = std::min(min_node_spacing_, h);
  }

  const std::size_t n = nodes_.size();
  geom_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    geom_[i] = std::pow(nodes_[i], n_dim_ - 1);

  mid_.resize(n - 1);
  geom_mid_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    mid_[i] = 0.5 * (nodes_[i] + nodes_[i + 1]);
    geom_mid_[i] = std::pow(mid_[i], n_dim_ - 1);
  }

  dual_.resize(n);
  dual_[0] = mid_[0] - nodes_[0];
  for (std::size_t i = 1; i + 1 < n; ++i) dual_[i] = mid_[i] - mid_[i - 1];
  dual_[n - 1] = nodes_[n - 1] - mid_[n - 2];
}

RadialGrid make_truncated_grid(double a, double b, int n_dim, int n_log,
                               int n_uniform, double min_spacing) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("make_truncated_grid: a not in (0,1)");
  if (!(b > 1.0)) throw DomainError("make_truncated_grid: b must exceed 1");
  if (n_log < 1 || n_uniform < 1)
    throw DomainError("make_truncated_grid: section counts must be >= 1");

  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(n_log + n_uniform) + 1);
  const double log_step = std::log(1.0 / a) / n_log;
  for (int i = 0; i < n_log; ++i) nodes.push_back(a * std::exp(i * log_step));
  nodes.push_back(1.0);
  const double h = (b - 1.0) / n_uniform;
  for (int j = 1; j < n_uniform; ++j) nodes.push_back(1.0 + j * h);
  nodes.push_back(b);
  return RadialGrid(std::move(nodes), n_dim, min_spacing);
}

double radial_integral(const RadialGrid& grid,
                       std::span<const double> values) {
  if (values.size() != grid.size())
    throw DomainError("radial_integral: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    s += 0.5 * (values[i] * grid.geom(i) + values[i + 1] * grid.geom(i + 1)) *
         grid.spacing(i);
  }
  return s;
}

namespace {

double weighted_integral_impl(const RadialGrid& grid,
                              std::span<const double> values, double r_lo,
                              int power) {
  if (values.size() != grid.size())
    throw DomainError("radial integral: size mismatch");
  if (!(r_lo >= grid.inner_radius()) || !(r_lo < grid.outer_radius()))
    throw DomainError("radial integral: lower bound outside [a, b)");

  auto w = [power](double r) { return std::pow(r, power); };

  // First node at or after r_lo.
  const auto& nodes = grid.nodes();
  const std::size_t k = static_cast<std::size_t>(
      std::lower_bound(nodes.begin(), nodes.end(), r_lo) - nodes.begin());

  double s = 0.0;
  if (k > 0 && nodes[k] > r_lo) {
    // Partial cell [r_lo, nodes[k]] with linear interpolation of the value.
    const double h = nodes[k] - nodes[k - 1];
    const double frac = (r_lo - nodes[k - 1]) / h;
    const double v_lo = values[k - 1] + frac * (values[k] - values[k - 1]);
    s += 0.5 * (v_lo * w(r_lo) + values[k] * w(nodes[k])) * (nodes[k] - r_lo);
  }
  for (std::size_t i = k; i + 1 < grid.size(); ++i) {
    s += 0.5 * (values[i] * w(nodes[i]) + values[i + 1] * w(nodes[i + 1])) *
         grid.spacing(i);
  }
  return s;
}

}  // namespace

double radial_integral_from(const RadialGrid& grid,
                            std::span<const double> values, double r_lo) {
  return weighted_integral_impl(grid, values, r_lo, grid.n_dim() - 1);
}

double weighted_integral_from(const RadialGrid& grid,
                              std::span<const double> values, double r_lo,
                              int l) {
  return weighted_integral_impl(grid, values, r_lo, l);
}

std::vector<double> radial_derivative(const RadialGrid& grid,
                                      std::span<const double> values) {
  std::vector<double> d;
  radial_derivative_into(grid, values, d);
  return d;
}

void radial_derivative_into(const RadialGrid& grid,
                            std::span<const double> values,
                            std::vector<double>& d) {
  if (values.size() != grid.size())
    throw DomainError("radial_derivative: size mismatch");
  const std::size_t n = grid.size();
  d.resize(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = grid.spacing(i - 1);
    const double hp = grid.spacing(i);
    d[i] = (-hp / (hm * (hm + hp))) * values[i - 1] +
           ((hp - hm) / (hm * hp)) * values[i] +
           (hm / (hp * (hm + hp))) * values[i + 1];
  }
  d[0] = one_sided_derivative(grid, values, -1);
  d[n - 1] = one_sided_derivative(grid, values, +1);
}

double one_sided_derivative(const RadialGrid& grid,
                            std::span<const double> values, int side) {
  if (values.size() != grid.size() || grid.size() < 3)
    throw DomainError("one_sided_derivative: bad sizes");
  const std::size_t n = grid.size();
  if (side < 0) {
    const double h1 = grid.spacing(0);
    const double h2 = grid.spacing(1);
    const double c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
    const double c1 = (h1 + h2) / (h1 * h2);
    const double c2 = -h1 / (h2 * (h1 + h2));
    return c0 * values[0] + c1 * values[1] + c2 * values[2];
  }
  const double h1 = grid.spacing(n - 2);  // nearest to the boundary
  const double h2 = grid.spacing(n - 3);
  const double c0 = (2.0 * h1 + h2) / (h1 * (h1 + h2));
  const double c1 = -(h1 + h2) / (h1 * h2);
  const double c2 = h1 / (h2 * (h1 + h2));
  return c0 * values[n - 1] + c1 * values[n - 2] + c2 * values[n - 3];
}

}  // namespace spheuler
