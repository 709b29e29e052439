#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "specband/dyadic.hpp"
#include "specband/grid.hpp"
#include "specband/operator.hpp"

namespace specband {

// Two-point function K(x, y) over full-grid node pairs, stored row-major in
// x. Continuum normalization throughout: the operator acts by quadrature,
// (K f)(x) = sum_y w(y) K(x, y) f(y), so K approximates the integral kernel
// and bounds with 2^{nj/2}-type scaling compare directly.
struct Kernel {
  GridPtr grid;
  std::vector<double> values;                 // node_count^2
  std::vector<std::vector<double>> gradient;  // per axis; empty if not built

  double at(std::size_t x, std::size_t y) const {
    return values[x * grid->node_count() + y];
  }
  double grad_at(int axis, std::size_t x, std::size_t y) const {
    return gradient[static_cast<std::size_t>(axis)]
                   [x * grid->node_count() + y];
  }
  bool has_gradient() const { return !gradient.empty(); }
};

using SpectralFunction = std::function<double(double)>;

// sum_k phi(lambda_k) <e_k, f> e_k. Throws if phi is non-finite anywhere on
// the spectrum.
GridFunction apply_spectral(const EigenDecomposition& ed,
                            const SpectralFunction& phi,
                            const GridFunction& f);

// K(x,y) = sum_k phi(lambda_k) e_k(x) e_k(y). The gradient block holds
// d/dx_a K via 4th-order differences in x (one-sided near the walls).
Kernel spectral_kernel(const EigenDecomposition& ed,
                       const SpectralFunction& phi, bool with_gradient = false);

// phi(lambda) = exp(-t lambda); t > 0.
Kernel heat_kernel_eigen(const EigenDecomposition& ed, double t,
                         bool with_gradient = false);

// Closed-form harmonic-oscillator heat kernel
//   (2 pi sinh 2t)^{-n/2} exp(-coth(2t)(|x|^2+|y|^2)/2 + csch(2t) x.y),
// gradient via the analytic factor (-coth(2t) x_a + csch(2t) y_a).
// Exponent underflow is clamped to 0; never NaN.
Kernel mehler_kernel(const GridPtr& grid, double t, bool with_gradient = false);

// Quadrature contraction (K f)(x) = sum_y w(y) K(x,y) f(y).
GridFunction kernel_apply(const Kernel& k, const GridFunction& f);

// Band projections u_j = phi_j(H) f for j in [j_lo, j_hi] (coefficients are
// computed once and reused).
std::vector<GridFunction> band_decompose(const EigenDecomposition& ed,
                                         const DyadicSystem& system,
                                         const GridFunction& f, int j_lo,
                                         int j_hi);

// CSV rows "x_index,y_index,value".
void write_csv(const Kernel& k, std::ostream& out);

}  // namespace specband
