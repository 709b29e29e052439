#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "specband/grid.hpp"

namespace specband {

enum class PotentialKind { zero, hermite, poschl_teller, tabulated };

// Real potential V. hermite is |x|^2; poschl_teller is
// -nu(nu+1) sech^2(x), one-dimensional only; tabulated carries one value
// per grid node.
class Potential {
 public:
  static Potential zero();
  static Potential hermite();
  static Potential poschl_teller(int nu);
  static Potential tabulated(std::vector<double> values);
  // CSV rows "index,value"; every node index must appear exactly once.
  static Potential tabulated_from_csv(const std::string& path,
                                      std::size_t node_count);

  PotentialKind kind() const { return kind_; }
  int nu() const { return nu_; }

  double at(const Grid& grid, std::size_t node) const;
  double min_value(const Grid& grid) const;
  std::string name() const;

 private:
  Potential(PotentialKind k, int nu, std::vector<double> table)
      : kind_(k), nu_(nu), table_(std::move(table)) {}

  PotentialKind kind_;
  int nu_ = 0;
  std::vector<double> table_;
};

// Dense symmetric realization of H = -Laplacian + V with homogeneous
// Dirichlet walls exactly at +-L: boundary nodes are eliminated, so the
// matrix acts on the (P-2)^n interior nodes. The Laplacian uses a central
// stencil of order 2 (3-point) or 4 (5-point); both truncations against the
// zero wall values keep the matrix exactly symmetric.
class DiscreteOperator {
 public:
  const GridPtr& grid() const { return grid_; }
  const Potential& potential() const { return potential_; }
  int stencil_order() const { return order_; }
  std::size_t size() const { return size_; }

  // Column-major size*size matrix over interior nodes.
  const std::vector<double>& matrix() const { return matrix_; }
  double entry(std::size_t row, std::size_t col) const {
    return matrix_[col * size_ + row];
  }

  // Applies the operator with the input projected onto the Dirichlet
  // subspace (boundary values treated as zero); output vanishes there.
  GridFunction apply(const GridFunction& f) const;

 private:
  friend DiscreteOperator assemble(const GridPtr&, Potential, int);

  GridPtr grid_;
  Potential potential_ = Potential::zero();
  int order_ = 4;
  std::size_t size_ = 0;
  std::vector<double> matrix_;
};

DiscreteOperator assemble(const GridPtr& grid, Potential potential,
                          int stencil_order = 4);

// Eigenpairs of a DiscreteOperator. Eigenvalues ascend; eigenvectors are
// orthonormal in the quadrature inner product <u,v> = sum w u v (i.e. the
// LAPACK vectors scaled by h^{-n/2}) and extend by zero to the boundary.
class EigenDecomposition {
 public:
  const GridPtr& grid() const { return grid_; }
  std::size_t count() const { return eigenvalues_.size(); }
  double eigenvalue(std::size_t k) const { return eigenvalues_[k]; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  int stencil_order() const { return order_; }

  GridFunction eigenfunction(std::size_t k) const;

  // Quadrature coefficients <e_k, f> for all k.
  std::vector<double> coefficients(const GridFunction& f) const;
  // sum_k c_k e_k extended by zero to the boundary.
  GridFunction synthesize(const std::vector<double>& coeffs) const;

  // Largest eigenvalue whose index is below `fraction` of the spectrum;
  // dyadic blocks above this are flagged unreliable.
  double lambda_cut(double fraction = 0.5) const;

  // Interior-node eigenvector matrix, column-major, w-orthonormal columns.
  const std::vector<double>& basis() const { return basis_; }
  const std::vector<std::size_t>& interior() const { return interior_; }
  double quadrature_weight() const { return weight_; }

 private:
  friend EigenDecomposition eigendecompose(const DiscreteOperator&);

  GridPtr grid_;
  int order_ = 4;
  double weight_ = 0.0;  // h^n, the interior node weight
  std::vector<std::size_t> interior_;
  std::vector<double> eigenvalues_;
  std::vector<double> basis_;
};

EigenDecomposition eigendecompose(const DiscreteOperator& op);

}  // namespace specband
