#ifndef SPHEULER_GRID_HPP_
#define SPHEULER_GRID_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "spheuler/errors.hpp"

namespace spheuler {

/// Radial grid on the truncated domain [a, b], 0 < a < b, in n_dim spatial
/// dimensions. Nodes are strictly increasing with nodes.front() == a and
/// nodes.back() == b.
class RadialGrid {
 public:
  RadialGrid() = default;  ///< empty placeholder, populated by assignment
  RadialGrid(std::vector<double> nodes, int n_dim, double min_spacing = 1e-12);

  double inner_radius() const { return nodes_.front(); }
  double outer_radius() const { return nodes_.back(); }
  int n_dim() const { return n_dim_; }
  std::size_t size() const { return nodes_.size(); }
  double node(std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }

  /// r^(n-1) at node i.
  double geom(std::size_t i) const { return geom_[i]; }
  const std::vector<double>& geoms() const { return geom_; }

  /// Midpoint radius of interface i+1/2 (between nodes i and i+1).
  double midpoint(std::size_t i) const { return mid_[i]; }
  /// r^(n-1) at interface i+1/2.
  double geom_mid(std::size_t i) const { return geom_mid_[i]; }

  /// Width of the dual cell around node i (clipped at the boundary).
  double dual_width(std::size_t i) const { return dual_[i]; }
  /// Node spacing r_{i+1} - r_i.
  double spacing(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }
  double min_node_spacing() const { return min_node_spacing_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> geom_;      // r^(n-1) per node
  std::vector<double> mid_;       // interface midpoints, size n-1
  std::vector<double> geom_mid_;  // r^(n-1) per interface
  std::vector<double> dual_;      // dual cell widths per node
  int n_dim_ = 3;
  double min_node_spacing_ = 0.0;
};

/// Builds the standard truncated-domain grid: geometric (log-spaced) from a
/// to 1 so resolution tracks the shrinking inner radius, uniform from 1 to b.
/// n_log and n_uniform count the intervals of each section.
RadialGrid make_truncated_grid(double a, double b, int n_dim, int n_log,
                               int n_uniform, double min_spacing = 1e-12);

/// Trapezoid quadrature of sum_i f(r_i) r_i^(n-1) over [a, b].
double radial_integral(const RadialGrid& grid, std::span<const double> values);

/// Trapezoid quadrature of f r^(n-1) restricted to [r_lo, b]. r_lo must lie
/// in [a, b); the cell containing r_lo contributes a partial trapezoid with
/// linear interpolation.
double radial_integral_from(const RadialGrid& grid,
                            std::span<const double> values, double r_lo);

/// As radial_integral_from but with radial weight r^l instead of r^(n-1).
double weighted_integral_from(const RadialGrid& grid,
                              std::span<const double> values, double r_lo,
                              int l);

/// Central finite-difference derivative of a nodal field (second order on
/// non-uniform grids; one-sided three-point stencils at the endpoints).
std::vector<double> radial_derivative(const RadialGrid& grid,
                                      std::span<const double> values);

/// As radial_derivative, writing into a preallocated buffer.
void radial_derivative_into(const RadialGrid& grid,
                            std::span<const double> values,
                            std::vector<double>& out);

/// One-sided three-point first derivative at the inner (side = -1) or outer
/// (side = +1) boundary.
double one_sided_derivative(const RadialGrid& grid,
                            std::span<const double> values, int side);

}  // namespace spheuler

#endif  // SPHEULER_GRID_HPP_
