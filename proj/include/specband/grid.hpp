#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace specband {

// Uniform tensor grid on [-L, L]^n (n = 1 or 2) including the endpoints,
// with spacing h = 2L/(P-1) per axis. Quadrature uses trapezoid weights
// (h^n on interior nodes, halved once per boundary axis), so the weights
// sum to (2L)^n exactly and inner products of functions vanishing at the
// boundary reduce to plain h^n Riemann sums.
//
// Node numbering: 1D node i has coordinate axis(i); 2D node ix*P + iy has
// coordinates (axis(ix), axis(iy)).
class Grid {
 public:
  static std::shared_ptr<const Grid> make(int dim, double halfwidth,
                                          int points_per_axis);

  int dim() const { return dim_; }
  double halfwidth() const { return halfwidth_; }
  int points_per_axis() const { return points_; }
  double spacing() const { return spacing_; }
  std::size_t node_count() const { return nodes_; }

  double axis(int i) const { return axis_[static_cast<std::size_t>(i)]; }
  std::span<const double> axis_coords() const { return axis_; }

  std::array<double, 2> coords(std::size_t node) const {
    if (dim_ == 1) return {axis_[node], 0.0};
    return {axis_[node / axis_.size()], axis_[node % axis_.size()]};
  }

  double node_weight(std::size_t node) const;
  double distance(std::size_t a, std::size_t b) const;
  bool is_boundary(std::size_t node) const;

  // Nodes with every per-axis index in [1, P-2]; the Dirichlet operator
  // lives on these.
  const std::vector<std::size_t>& interior_nodes() const { return interior_; }

  bool same_as(const Grid& other) const {
    return dim_ == other.dim_ && points_ == other.points_ &&
           halfwidth_ == other.halfwidth_;
  }

 private:
  Grid(int dim, double halfwidth, int points_per_axis);

  int dim_;
  double halfwidth_;
  int points_;
  double spacing_;
  std::size_t nodes_;
  std::vector<double> axis_;
  std::vector<std::size_t> interior_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Real scalar field sampled on a grid. Spectral calculus with real symbols
// of a real symmetric operator stays real, so no complex storage is needed.
struct GridFunction {
  GridPtr grid;
  std::vector<double> values;

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

GridFunction make_function(const GridPtr& grid,
                           const std::function<double(double, double)>& fn);
GridFunction zero_function(const GridPtr& grid);

// Checks finiteness and size; throws std::invalid_argument on violation.
void check_function(const GridFunction& f);

// Quadrature L_p quasi-norm, 0 < p <= inf (p = inf gives max |f|).
double lp_norm(const GridFunction& f, double p);

// Weighted inner sum (sum_j (w_j |f_j(x)|)^q)^{1/q} per node; q = inf gives
// the pointwise supremum over j.
GridFunction inner_lq(std::span<const GridFunction> stack,
                      std::span<const double> weights, double q);

enum class MixedNormMode { Lp_of_lq, lq_of_Lp };

// Lp_of_lq: || (sum_j (w_j |f_j|)^q)^{1/q} ||_p
// lq_of_Lp: ( sum_j (w_j ||f_j||_p)^q )^{1/q}
double mixed_norm(std::span<const GridFunction> stack, double p, double q,
                  MixedNormMode mode, std::span<const double> weights);

// 4th-order central-difference partial derivative along one axis;
// one-sided/lower-order stencils at the two nodes nearest each edge.
GridFunction gradient_component(const GridFunction& f, int axis);

// Euclidean pointwise magnitude of the gradient.
GridFunction gradient_magnitude(const GridFunction& f);

}  // namespace specband
