#include "specband/calculus.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "specband/linalg.hpp"
#include "specband/parallel.hpp"

namespace specband {

namespace {

std::vector<double> spectrum_values(const EigenDecomposition& ed,
                                    const SpectralFunction& phi) {
  std::vector<double> d(ed.count());
  for (std::size_t k = 0; k < ed.count(); ++k) {
    d[k] = phi(ed.eigenvalue(k));
    if (!std::isfinite(d[k]))
      throw std::invalid_argument(
          "spectral function is non-finite on the spectrum (lambda=" +
          std::to_string(ed.eigenvalue(k)) + ")");
  }
  return d;
}

// Embed an interior-node matrix into full-grid node pairs (zeros on
// boundary rows/columns).
std::vector<double> embed_full(const Grid& grid,
                               const std::vector<std::size_t>& interior,
                               const std::vector<double>& inner) {
  const std::size_t n = grid.node_count();
  const std::size_t m = interior.size();
  std::vector<double> full(n * n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t x = interior[r];
    double* row = full.data() + x * n;
    const double* src = inner.data() + r;  // column-major inner: (r, c)
    for (std::size_t c = 0; c < m; ++c) row[interior[c]] = src[c * m];
  }
  return full;
}

// 4th-order x-derivative of every kernel column, one-sided near the walls.
std::vector<double> kernel_x_derivative(const Grid& grid,
                                        const std::vector<double>& full,
                                        int axis) {
  const std::size_t n = grid.node_count();
  const std::size_t p = static_cast<std::size_t>(grid.points_per_axis());
  const double h = grid.spacing();
  std::vector<double> out(n * n, 0.0);

  // x-index stride in node numbering for the requested axis.
  const std::size_t stride = (grid.dim() == 1 || axis == 1) ? 1 : p;
  const std::size_t nlines = n / p;

  parallel_for(n, [&](std::size_t y) {
    for (std::size_t line = 0; line < nlines; ++line) {
      // base node of this line along the axis
      std::size_t base;
      if (grid.dim() == 1) {
        base = 0;
      } else if (axis == 0) {
        base = line;  // fixed iy = line
      } else {
        base = line * p;  // fixed ix = line
      }
      auto at = [&](std::size_t i) {
        return full[(base + i * stride) * n + y];
      };
      for (std::size_t i = 0; i < p; ++i) {
        double v;
        if (i >= 2 && i + 2 < p) {
          v = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) /
              (12.0 * h);
        } else if (i == 0) {
          v = (at(1) - at(0)) / h;
        } else if (i + 1 == p) {
          v = (at(p - 1) - at(p - 2)) / h;
        } else {
          v = (at(i + 1) - at(i - 1)) / (2.0 * h);
        }
        out[(base + i * stride) * n + y] = v;
      }
    }
  });
  return out;
}

}  // namespace

GridFunction apply_spectral(const EigenDecomposition& ed,
                            const SpectralFunction& phi,
                            const GridFunction& f) {
  const std::vector<double> d = spectrum_values(ed, phi);
  std::vector<double> c = ed.coefficients(f);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= d[k];
  return ed.synthesize(c);
}

Kernel spectral_kernel(const EigenDecomposition& ed,
                       const SpectralFunction& phi, bool with_gradient) {
  const std::vector<double> d = spectrum_values(ed, phi);
  const std::size_t m = ed.interior().size();
  const std::vector<double> inner = sandwich_diag(ed.basis(), d, m);

  Kernel k;
  k.grid = ed.grid();
  k.values = embed_full(*ed.grid(), ed.interior(), inner);
  if (with_gradient) {
    for (int axis = 0; axis < ed.grid()->dim(); ++axis)
      k.gradient.push_back(kernel_x_derivative(*ed.grid(), k.values, axis));
  }
  return k;
}

Kernel heat_kernel_eigen(const EigenDecomposition& ed, double t,
                         bool with_gradient) {
  if (!(t > 0.0))
    throw std::invalid_argument("heat kernel: t must be positive");
  return spectral_kernel(
      ed, [t](double lam) { return std::exp(-t * lam); }, with_gradient);
}

Kernel mehler_kernel(const GridPtr& grid, double t, bool with_gradient) {
  if (!(t > 0.0))
    throw std::invalid_argument("mehler kernel: t must be positive");
  const int n = grid->dim();
  const std::size_t nodes = grid->node_count();
  const double sinh2t = std::sinh(2.0 * t);
  const double coth2t = std::cosh(2.0 * t) / sinh2t;
  const double csch2t = 1.0 / sinh2t;
  const double prefactor =
      std::pow(2.0 * M_PI * sinh2t, -0.5 * static_cast<double>(n));

  Kernel k;
  k.grid = grid;
  k.values.assign(nodes * nodes, 0.0);
  if (with_gradient)
    k.gradient.assign(static_cast<std::size_t>(n),
                      std::vector<double>(nodes * nodes, 0.0));

  parallel_for(nodes, [&](std::size_t x) {
    const auto xc = grid->coords(x);
    const double x2 = xc[0] * xc[0] + xc[1] * xc[1];
    double* row = k.values.data() + x * nodes;
    for (std::size_t y = 0; y < nodes; ++y) {
      const auto yc = grid->coords(y);
      const double y2 = yc[0] * yc[0] + yc[1] * yc[1];
      const double dot = xc[0] * yc[0] + xc[1] * yc[1];
      const double expo = -0.5 * coth2t * (x2 + y2) + csch2t * dot;
      // exp underflows to 0 for large negative exponents; that is the
      // documented guard (never NaN/inf: expo <= 0 always here).
      const double v = expo < -745.0 ? 0.0 : prefactor * std::exp(expo);
      row[y] = v;
      if (with_gradient) {
        for (int a = 0; a < n; ++a)
          k.gradient[static_cast<std::size_t>(a)][x * nodes + y] =
              v * (-coth2t * xc[static_cast<std::size_t>(a)] +
                   csch2t * yc[static_cast<std::size_t>(a)]);
      }
    }
  });
  return k;
}

GridFunction kernel_apply(const Kernel& k, const GridFunction& f) {
  if (!f.grid || !f.grid->same_as(*k.grid))
    throw std::invalid_argument("kernel_apply: grid mismatch");
  const std::size_t n = k.grid->node_count();
  std::vector<double> wf(n);
  for (std::size_t y = 0; y < n; ++y)
    wf[y] = k.grid->node_weight(y) * f.values[y];
  GridFunction out = zero_function(f.grid);
  parallel_for(n, [&](std::size_t x) {
    const double* row = k.values.data() + x * n;
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) acc += row[y] * wf[y];
    out.values[x] = acc;
  });
  return out;
}

std::vector<GridFunction> band_decompose(const EigenDecomposition& ed,
                                         const DyadicSystem& system,
                                         const GridFunction& f, int j_lo,
                                         int j_hi) {
  if (j_lo > j_hi)
    throw std::invalid_argument("band_decompose: empty j range");
  const std::vector<double> c = ed.coefficients(f);
  std::vector<GridFunction> bands;
  bands.reserve(static_cast<std::size_t>(j_hi - j_lo + 1));
  std::vector<double> scaled(c.size());
  for (int j = j_lo; j <= j_hi; ++j) {
    for (std::size_t k = 0; k < c.size(); ++k)
      scaled[k] = system.member(j, ed.eigenvalue(k)) * c[k];
    bands.push_back(ed.synthesize(scaled));
  }
  return bands;
}

void write_csv(const Kernel& k, std::ostream& out) {
  const std::size_t n = k.grid->node_count();
  out << "x_index,y_index,value\n";
  char buf[96];
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g\n", x, y, k.at(x, y));
      out << buf;
    }
  }
}

}  // namespace specband
