#include "specband/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace specband {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Grid::Grid(int dim, double halfwidth, int points_per_axis)
    : dim_(dim), halfwidth_(halfwidth), points_(points_per_axis) {
  spacing_ = 2.0 * halfwidth_ / static_cast<double>(points_ - 1);
  axis_.resize(static_cast<std::size_t>(points_));
  for (int i = 0; i < points_; ++i) {
    axis_[static_cast<std::size_t>(i)] = -halfwidth_ + spacing_ * i;
  }
  // Enforce exact symmetry about 0 (linspace roundoff can break it).
  for (int i = 0; i < points_ / 2; ++i) {
    axis_[static_cast<std::size_t>(i)] =
        -axis_[static_cast<std::size_t>(points_ - 1 - i)];
  }
  if (points_ % 2 == 1) axis_[static_cast<std::size_t>(points_ / 2)] = 0.0;
  axis_.front() = -halfwidth_;
  axis_.back() = halfwidth_;

  nodes_ = dim_ == 1 ? static_cast<std::size_t>(points_)
                     : static_cast<std::size_t>(points_) * points_;

  const std::size_t p = static_cast<std::size_t>(points_);
  if (dim_ == 1) {
    for (std::size_t i = 1; i + 1 < p; ++i) interior_.push_back(i);
  } else {
    for (std::size_t ix = 1; ix + 1 < p; ++ix)
      for (std::size_t iy = 1; iy + 1 < p; ++iy)
        interior_.push_back(ix * p + iy);
  }
}

GridPtr Grid::make(int dim, double halfwidth, int points_per_axis) {
  require(dim == 1 || dim == 2, "grid: dimension must be 1 or 2");
  require(std::isfinite(halfwidth) && halfwidth > 0.0,
          "grid: halfwidth must be finite and positive");
  require(points_per_axis >= 3,
          "grid: points_per_axis too small (need at least 3)");
  return std::shared_ptr<const Grid>(
      new Grid(dim, halfwidth, points_per_axis));
}

double Grid::node_weight(std::size_t node) const {
  const std::size_t p = axis_.size();
  auto axis_w = [&](std::size_t i) {
    return (i == 0 || i + 1 == p) ? 0.5 * spacing_ : spacing_;
  };
  if (dim_ == 1) return axis_w(node);
  return axis_w(node / p) * axis_w(node % p);
}

double Grid::distance(std::size_t a, std::size_t b) const {
  if (dim_ == 1) return std::abs(axis_[a] - axis_[b]);
  const std::size_t p = axis_.size();
  const double dx = axis_[a / p] - axis_[b / p];
  const double dy = axis_[a % p] - axis_[b % p];
  return std::hypot(dx, dy);
}

bool Grid::is_boundary(std::size_t node) const {
  const std::size_t p = axis_.size();
  if (dim_ == 1) return node == 0 || node + 1 == p;
  const std::size_t ix = node / p, iy = node % p;
  return ix == 0 || ix + 1 == p || iy == 0 || iy + 1 == p;
}

GridFunction make_function(const GridPtr& grid,
                           const std::function<double(double, double)>& fn) {
  GridFunction f;
  f.grid = grid;
  f.values.resize(grid->node_count());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    auto xy = grid->coords(i);
    f.values[i] = fn(xy[0], xy[1]);
  }
  return f;
}

GridFunction zero_function(const GridPtr& grid) {
  GridFunction f;
  f.grid = grid;
  f.values.assign(grid->node_count(), 0.0);
  return f;
}

void check_function(const GridFunction& f) {
  require(f.grid != nullptr, "grid function: missing grid");
  require(f.values.size() == f.grid->node_count(),
          "grid function: value count does not match node count");
  for (double v : f.values)
    require(std::isfinite(v), "grid function: non-finite value");
}

double lp_norm(const GridFunction& f, double p) {
  require(p > 0.0, "lp_norm: p must be positive");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double a = std::abs(f.values[i]);
    if (a > 0.0) acc += f.grid->node_weight(i) * std::pow(a, p);
  }
  return std::pow(acc, 1.0 / p);
}

namespace {

void check_stack(std::span<const GridFunction> stack,
                 std::span<const double> weights) {
  require(!stack.empty(), "mixed norm: empty stack");
  require(weights.size() == stack.size(),
          "mixed norm: one weight per stack member required");
  for (const auto& f : stack) {
    require(f.grid != nullptr && f.grid->same_as(*stack.front().grid),
            "mixed norm: stack members live on different grids");
  }
}

}  // namespace

GridFunction inner_lq(std::span<const GridFunction> stack,
                      std::span<const double> weights, double q) {
  check_stack(stack, weights);
  require(q > 0.0, "inner_lq: q must be positive");
  GridFunction out = zero_function(stack.front().grid);
  const std::size_t n = out.values.size();
  if (std::isinf(q)) {
    for (std::size_t j = 0; j < stack.size(); ++j)
      for (std::size_t i = 0; i < n; ++i)
        out.values[i] =
            std::max(out.values[i], weights[j] * std::abs(stack[j].values[i]));
    return out;
  }
  for (std::size_t j = 0; j < stack.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = weights[j] * std::abs(stack[j].values[i]);
      if (a > 0.0) out.values[i] += std::pow(a, q);
    }
  }
  for (double& v : out.values) v = std::pow(v, 1.0 / q);
  return out;
}

double mixed_norm(std::span<const GridFunction> stack, double p, double q,
                  MixedNormMode mode, std::span<const double> weights) {
  check_stack(stack, weights);
  require(q > 0.0, "mixed norm: q must be positive");
  require(p > 0.0, "mixed norm: p must be positive");
  if (mode == MixedNormMode::Lp_of_lq) {
    return lp_norm(inner_lq(stack, weights, q), p);
  }
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t j = 0; j < stack.size(); ++j)
      m = std::max(m, weights[j] * lp_norm(stack[j], p));
    return m;
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < stack.size(); ++j) {
    const double a = weights[j] * lp_norm(stack[j], p);
    if (a > 0.0) acc += std::pow(a, q);
  }
  return std::pow(acc, 1.0 / q);
}

namespace {

// 4th-order interior stencil (f[-2] - 8 f[-1] + 8 f[+1] - f[+2]) / 12h with
// one-sided fallbacks on the two nodes nearest each edge.
double line_derivative(const std::vector<double>& v, std::size_t n,
                       std::size_t stride, std::size_t base, std::size_t i,
                       double h) {
  auto at = [&](std::size_t k) { return v[base + k * stride]; };
  if (i >= 2 && i + 2 < n) {
    return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) /
           (12.0 * h);
  }
  if (i == 0) return (at(1) - at(0)) / h;
  if (i + 1 == n) return (at(n - 1) - at(n - 2)) / h;
  return (at(i + 1) - at(i - 1)) / (2.0 * h);
}

}  // namespace

GridFunction gradient_component(const GridFunction& f, int axis) {
  require(axis >= 0 && axis < f.grid->dim(),
          "gradient: axis out of range for grid dimension");
  const auto& g = *f.grid;
  const std::size_t p = static_cast<std::size_t>(g.points_per_axis());
  GridFunction out = zero_function(f.grid);
  const double h = g.spacing();
  if (g.dim() == 1) {
    for (std::size_t i = 0; i < p; ++i)
      out.values[i] = line_derivative(f.values, p, 1, 0, i, h);
    return out;
  }
  if (axis == 0) {
    for (std::size_t iy = 0; iy < p; ++iy)
      for (std::size_t ix = 0; ix < p; ++ix)
        out.values[ix * p + iy] =
            line_derivative(f.values, p, p, iy, ix, h);
  } else {
    for (std::size_t ix = 0; ix < p; ++ix)
      for (std::size_t iy = 0; iy < p; ++iy)
        out.values[ix * p + iy] =
            line_derivative(f.values, p, 1, ix * p, iy, h);
  }
  return out;
}

GridFunction gradient_magnitude(const GridFunction& f) {
  GridFunction out = gradient_component(f, 0);
  if (f.grid->dim() == 2) {
    GridFunction gy = gradient_component(f, 1);
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = std::hypot(out.values[i], gy.values[i]);
  } else {
    for (double& v : out.values) v = std::abs(v);
  }
  return out;
}

}  // namespace specband
