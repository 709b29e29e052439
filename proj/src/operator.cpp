#include "specband/operator.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "specband/linalg.hpp"

namespace specband {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Potential Potential::zero() {
  return Potential(PotentialKind::zero, 0, {});
}

Potential Potential::hermite() {
  return Potential(PotentialKind::hermite, 0, {});
}

Potential Potential::poschl_teller(int nu) {
  require(nu >= 1, "poschl_teller: nu must be a positive integer");
  return Potential(PotentialKind::poschl_teller, nu, {});
}

Potential Potential::tabulated(std::vector<double> values) {
  for (double v : values)
    require(std::isfinite(v), "tabulated potential: non-finite value");
  return Potential(PotentialKind::tabulated, 0, std::move(values));
}

Potential Potential::tabulated_from_csv(const std::string& path,
                                        std::size_t node_count) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open potential CSV: " + path);
  std::vector<double> values(node_count);
  std::vector<bool> seen(node_count, false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("0123456789,.eE+- \t\r") !=
                           std::string::npos) {
      continue;  // header row
    }
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
      throw std::runtime_error("potential CSV: malformed line " +
                               std::to_string(lineno));
    }
    std::size_t idx = 0;
    double v = 0.0;
    try {
      idx = static_cast<std::size_t>(std::stoull(a));
      v = std::stod(b);
    } catch (const std::exception&) {
      throw std::runtime_error("potential CSV: parse error at line " +
                               std::to_string(lineno));
    }
    if (idx >= node_count)
      throw std::runtime_error("potential CSV: index out of range at line " +
                               std::to_string(lineno));
    values[idx] = v;
    seen[idx] = true;
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    if (!seen[i])
      throw std::runtime_error("potential CSV: missing value for node " +
                               std::to_string(i));
  }
  return tabulated(std::move(values));
}

double Potential::at(const Grid& grid, std::size_t node) const {
  const auto xy = grid.coords(node);
  switch (kind_) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::hermite:
      return xy[0] * xy[0] + xy[1] * xy[1];
    case PotentialKind::poschl_teller: {
      const double s = 1.0 / std::cosh(xy[0]);
      return -static_cast<double>(nu_) * (nu_ + 1) * s * s;
    }
    case PotentialKind::tabulated:
      require(table_.size() == grid.node_count(),
              "tabulated potential: size does not match grid");
      return table_[node];
  }
  return 0.0;
}

double Potential::min_value(const Grid& grid) const {
  double m = at(grid, 0);
  for (std::size_t i = 1; i < grid.node_count(); ++i)
    m = std::min(m, at(grid, i));
  return m;
}

std::string Potential::name() const {
  switch (kind_) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::hermite: return "hermite";
    case PotentialKind::poschl_teller:
      return "poschl_teller(nu=" + std::to_string(nu_) + ")";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "?";
}

DiscreteOperator assemble(const GridPtr& grid, Potential potential,
                          int stencil_order) {
  require(stencil_order == 2 || stencil_order == 4,
          "assemble: stencil_order must be 2 or 4");
  require(!(potential.kind() == PotentialKind::poschl_teller &&
            grid->dim() == 2),
          "assemble: poschl_teller potential is one-dimensional only");
  if (potential.kind() == PotentialKind::tabulated) {
    // Evaluating at node 0 validates the table size against this grid.
    potential.at(*grid, 0);
  }

  DiscreteOperator op;
  op.grid_ = grid;
  op.potential_ = potential;
  op.order_ = stencil_order;

  const auto& interior = grid->interior_nodes();
  const std::size_t m = interior.size();
  require(m > 0, "assemble: grid has no interior nodes");
  op.size_ = m;
  op.matrix_.assign(m * m, 0.0);

  const std::size_t p = static_cast<std::size_t>(grid->points_per_axis());
  const double h2 = grid->spacing() * grid->spacing();
  const int q = grid->points_per_axis() - 2;  // interior nodes per axis

  // 1D interior index of a node's axis index (axis index 1..P-2 -> 0..q-1).
  auto add = [&](std::size_t row, std::size_t col, double v) {
    op.matrix_[col * m + row] += v;
  };

  // -d^2/dx^2 along each axis. Neighbors on the wall contribute zero; the
  // 5-point stencil's beyond-wall ghost uses the odd image u(-L-h) =
  // -u(-L+h), which is exact for Dirichlet eigenmodes and only shifts the
  // two near-wall diagonal entries (symmetry preserved).
  const double diag1d =
      (stencil_order == 2 ? 2.0 : 2.5) / h2;
  const double near =
      (stencil_order == 2 ? -1.0 : -4.0 / 3.0) / h2;
  const double far = stencil_order == 2 ? 0.0 : (1.0 / 12.0) / h2;

  auto couple_axis = [&](std::size_t row, int ia, auto to_row) {
    add(row, to_row(ia), diag1d);
    if (ia - 1 >= 0) add(row, to_row(ia - 1), near);
    if (ia + 1 < q) add(row, to_row(ia + 1), near);
    if (stencil_order == 4) {
      if (ia - 2 >= 0)
        add(row, to_row(ia - 2), far);
      else if (ia == 0)
        add(row, to_row(0), -far);  // odd image through the left wall
      if (ia + 2 < q)
        add(row, to_row(ia + 2), far);
      else if (ia == q - 1)
        add(row, to_row(q - 1), -far);  // odd image through the right wall
    }
  };

  if (grid->dim() == 1) {
    for (int i = 0; i < q; ++i) {
      couple_axis(static_cast<std::size_t>(i), i,
                  [&](int a) { return static_cast<std::size_t>(a); });
    }
  } else {
    for (int ix = 0; ix < q; ++ix) {
      for (int iy = 0; iy < q; ++iy) {
        const std::size_t row = static_cast<std::size_t>(ix * q + iy);
        couple_axis(row, ix, [&](int a) {
          return static_cast<std::size_t>(a * q + iy);
        });
        couple_axis(row, iy, [&](int a) {
          return static_cast<std::size_t>(ix * q + a);
        });
      }
    }
  }

  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t node = interior[r];
    op.matrix_[r * m + r] += potential.at(*grid, node);
  }
  (void)p;
  return op;
}

GridFunction DiscreteOperator::apply(const GridFunction& f) const {
  require(f.grid && f.grid->same_as(*grid_),
          "operator apply: function lives on a different grid");
  const auto& interior = grid_->interior_nodes();
  std::vector<double> x(size_);
  for (std::size_t r = 0; r < size_; ++r) x[r] = f.values[interior[r]];
  std::vector<double> y = mat_vec(matrix_, size_, x);
  GridFunction out = zero_function(grid_);
  for (std::size_t r = 0; r < size_; ++r) out.values[interior[r]] = y[r];
  return out;
}

EigenDecomposition eigendecompose(const DiscreteOperator& op) {
  EigenDecomposition ed;
  ed.grid_ = op.grid();
  ed.order_ = op.stencil_order();
  ed.interior_ = op.grid()->interior_nodes();
  const std::size_t m = op.size();

  ed.basis_ = op.matrix();
  symmetric_eigendecompose(ed.basis_, m, ed.eigenvalues_);

  // Rescale LAPACK's Euclidean-orthonormal columns to quadrature
  // orthonormality; interior nodes all carry weight h^n.
  const double h = op.grid()->spacing();
  ed.weight_ = op.grid()->dim() == 1 ? h : h * h;
  const double scale = 1.0 / std::sqrt(ed.weight_);
  for (double& v : ed.basis_) v *= scale;
  return ed;
}

GridFunction EigenDecomposition::eigenfunction(std::size_t k) const {
  GridFunction f = zero_function(grid_);
  const std::size_t m = interior_.size();
  for (std::size_t r = 0; r < m; ++r)
    f.values[interior_[r]] = basis_[k * m + r];
  return f;
}

std::vector<double> EigenDecomposition::coefficients(
    const GridFunction& f) const {
  if (!f.grid || !f.grid->same_as(*grid_))
    throw std::invalid_argument(
        "coefficients: function lives on a different grid");
  const std::size_t m = interior_.size();
  std::vector<double> x(m);
  for (std::size_t r = 0; r < m; ++r) x[r] = f.values[interior_[r]];
  std::vector<double> c = mat_t_vec(basis_, m, x);
  for (double& v : c) v *= weight_;
  return c;
}

GridFunction EigenDecomposition::synthesize(
    const std::vector<double>& coeffs) const {
  if (coeffs.size() != eigenvalues_.size())
    throw std::invalid_argument("synthesize: coefficient count mismatch");
  const std::size_t m = interior_.size();
  std::vector<double> y = mat_vec(basis_, m, coeffs);
  GridFunction out = zero_function(grid_);
  for (std::size_t r = 0; r < m; ++r) out.values[interior_[r]] = y[r];
  return out;
}

double EigenDecomposition::lambda_cut(double fraction) const {
  const std::size_t n = eigenvalues_.size();
  std::size_t idx = static_cast<std::size_t>(fraction * n);
  if (idx >= n) idx = n - 1;
  return eigenvalues_[idx];
}

}  // namespace specband
