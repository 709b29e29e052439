#pragma once

#include <cstddef>
#include <vector>

namespace specband {

// Thin wrappers over LAPACKE/CBLAS for the dense symmetric workloads.
// Matrices are column-major, size n*n.

// Full symmetric eigendecomposition (ascending eigenvalues). On return
// `matrix` holds the orthonormal eigenvectors column-wise. Throws
// std::runtime_error with the LAPACK info code on failure.
void symmetric_eigendecompose(std::vector<double>& matrix, std::size_t n,
                              std::vector<double>& eigenvalues);

// out = A * diag(d) * A^T for column-major A (n*n).
std::vector<double> sandwich_diag(const std::vector<double>& a,
                                  const std::vector<double>& d,
                                  std::size_t n);

// y = A^T x (column-major A).
std::vector<double> mat_t_vec(const std::vector<double>& a, std::size_t n,
                              const std::vector<double>& x);

// y = A x (column-major A).
std::vector<double> mat_vec(const std::vector<double>& a, std::size_t n,
                            const std::vector<double>& x);

}  // namespace specband
