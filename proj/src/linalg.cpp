#include "specband/linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace specband {

void symmetric_eigendecompose(std::vector<double>& matrix, std::size_t n,
                              std::vector<double>& eigenvalues) {
  eigenvalues.assign(n, 0.0);
  const lapack_int info = LAPACKE_dsyevd(
      LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), matrix.data(),
      static_cast<lapack_int>(n), eigenvalues.data());
  if (info != 0) {
    throw std::runtime_error("dsyevd failed to converge (info=" +
                             std::to_string(info) + ")");
  }
}

std::vector<double> sandwich_diag(const std::vector<double>& a,
                                  const std::vector<double>& d,
                                  std::size_t n) {
  std::vector<double> scaled(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double dk = d[k];
    const double* col = a.data() + k * n;
    double* out = scaled.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) out[i] = dk * col[i];
  }
  std::vector<double> result(n * n, 0.0);
  cblas_dgemm(CblasColMajor, CblasNoTrans, CblasTrans,
              static_cast<blasint>(n), static_cast<blasint>(n),
              static_cast<blasint>(n), 1.0, scaled.data(),
              static_cast<blasint>(n), a.data(), static_cast<blasint>(n), 0.0,
              result.data(), static_cast<blasint>(n));
  return result;
}

std::vector<double> mat_t_vec(const std::vector<double>& a, std::size_t n,
                              const std::vector<double>& x) {
  std::vector<double> y(n, 0.0);
  cblas_dgemv(CblasColMajor, CblasTrans, static_cast<blasint>(n),
              static_cast<blasint>(n), 1.0, a.data(),
              static_cast<blasint>(n), x.data(), 1, 0.0, y.data(), 1);
  return y;
}

std::vector<double> mat_vec(const std::vector<double>& a, std::size_t n,
                            const std::vector<double>& x) {
  std::vector<double> y(n, 0.0);
  cblas_dgemv(CblasColMajor, CblasNoTrans, static_cast<blasint>(n),
              static_cast<blasint>(n), 1.0, a.data(),
              static_cast<blasint>(n), x.data(), 1, 0.0, y.data(), 1);
  return y;
}

}  // namespace specband
