#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "specband/calculus.hpp"
#include "specband/dyadic.hpp"

using namespace specband;

namespace {

const EigenDecomposition& hermite_ed() {
  static EigenDecomposition ed = eigendecompose(
      assemble(Grid::make(1, 8.0, 257), Potential::hermite(), 4));
  return ed;
}

GridFunction random_function(const GridPtr& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GridFunction f = zero_function(g);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.values[i] = (rng() >> 11) * 0x1.0p-53 - 0.5;
  return f;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST_CASE("identity symbol returns the Dirichlet projection") {
  const auto& ed = hermite_ed();
  GridFunction f = random_function(ed.grid(), 1);
  // zero out the boundary: apply_spectral lives on the Dirichlet subspace
  for (std::size_t i = 0; i < f.size(); ++i)
    if (ed.grid()->is_boundary(i)) f.values[i] = 0.0;
  GridFunction g = apply_spectral(ed, [](double) { return 1.0; }, f);
  CHECK(max_abs_diff(f, g) < 1e-10);
}

TEST_CASE("eigenfunction scaling under the heat symbol") {
  const auto& ed = hermite_ed();
  GridFunction h0 = ed.eigenfunction(0);
  const double t = 0.7;
  GridFunction g =
      apply_spectral(ed, [t](double lam) { return std::exp(-t * lam); }, h0);
  const double factor = std::exp(-t * ed.eigenvalue(0));
  double worst = 0.0;
  for (std::size_t i = 0; i < h0.size(); ++i)
    worst = std::max(worst, std::abs(g.values[i] - factor * h0.values[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("indicator symbol acts as a spectral projector") {
  const auto& ed = hermite_ed();
  GridFunction f = random_function(ed.grid(), 2);
  const double target = ed.eigenvalue(5);
  GridFunction proj = apply_spectral(
      ed, [target](double lam) { return lam == target ? 1.0 : 0.0; }, f);
  const std::vector<double> c = ed.coefficients(f);
  GridFunction e5 = ed.eigenfunction(5);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(proj.values[i] - c[5] * e5.values[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("apply_spectral rejects non-finite symbols") {
  const auto& ed = hermite_ed();
  GridFunction f = random_function(ed.grid(), 3);
  CHECK_THROWS_AS(
      apply_spectral(ed, [](double) { return std::nan(""); }, f),
      std::invalid_argument);
}

TEST_CASE("linearity and multiplicativity of the calculus") {
  const auto& ed = hermite_ed();
  GridFunction f = random_function(ed.grid(), 4);
  auto phi = [](double lam) { return std::exp(-0.1 * lam); };
  auto theta = [](double lam) { return 1.0 / (1.0 + lam); };

  GridFunction lhs = apply_spectral(
      ed, [&](double lam) { return 2.0 * phi(lam) - 3.0 * theta(lam); }, f);
  GridFunction a = apply_spectral(ed, phi, f);
  GridFunction b = apply_spectral(ed, theta, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(lhs.values[i] - 2.0 * a.values[i] +
                                     3.0 * b.values[i]));
  CHECK(worst < 1e-12);

  GridFunction prod = apply_spectral(
      ed, [&](double lam) { return phi(lam) * theta(lam); }, f);
  GridFunction nested = apply_spectral(ed, phi, apply_spectral(ed, theta, f));
  CHECK(max_abs_diff(prod, nested) < 1e-10);
}

TEST_CASE("reproducing identity psi_j(H) phi_j(H) f = phi_j(H) f") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);
  ReproducingCutoff psi = make_reproducing_cutoff(BumpProfile());
  GridFunction f = random_function(ed.grid(), 5);
  for (int j : {2, 4, 6}) {
    GridFunction uj = apply_spectral(
        ed, [&](double lam) { return sys.member(j, lam); }, f);
    GridFunction rep = apply_spectral(
        ed, [&](double lam) { return psi.member(j, lam); }, uj);
    CHECK(max_abs_diff(rep, uj) < 1e-10);
  }
}

TEST_CASE("parseval identity in the quadrature inner product") {
  const auto& ed = hermite_ed();
  GridFunction f = random_function(ed.grid(), 6);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (ed.grid()->is_boundary(i)) f.values[i] = 0.0;
  const std::vector<double> c = ed.coefficients(f);
  double sum = 0.0;
  for (double v : c) sum += v * v;
  const double l2 = std::pow(lp_norm(f, 2.0), 2.0);
  CHECK(std::abs(sum - l2) <= 1e-10 * std::max(1.0, l2));
}

TEST_CASE("kernel of the identity is the discrete delta") {
  const auto& ed = hermite_ed();
  Kernel k = spectral_kernel(ed, [](double) { return 1.0; });
  GridFunction f = random_function(ed.grid(), 7);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (ed.grid()->is_boundary(i)) f.values[i] = 0.0;
  GridFunction g = kernel_apply(k, f);
  CHECK(max_abs_diff(f, g) < 1e-9);
}

TEST_CASE("kernel symmetry and application consistency") {
  const auto& ed = hermite_ed();
  auto phi = [](double lam) { return std::exp(-0.3 * lam); };
  Kernel k = spectral_kernel(ed, phi);
  const std::size_t n = ed.grid()->node_count();
  double worst = 0.0;
  for (std::size_t x = 0; x < n; x += 7)
    for (std::size_t y = 0; y < n; y += 11)
      worst = std::max(worst, std::abs(k.at(x, y) - k.at(y, x)));
  CHECK(worst < 1e-10);

  GridFunction f = random_function(ed.grid(), 8);
  GridFunction via_kernel = kernel_apply(k, f);
  GridFunction direct = apply_spectral(ed, phi, f);
  CHECK(max_abs_diff(via_kernel, direct) < 1e-10);

  // row sums against the constant function's expansion
  GridFunction ones = make_function(ed.grid(), [](double, double) { return 1.0; });
  GridFunction row_sums = kernel_apply(k, ones);
  GridFunction expanded = apply_spectral(ed, phi, ones);
  CHECK(max_abs_diff(row_sums, expanded) < 1e-10);
}

TEST_CASE("heat kernel semigroup, positivity, small-time limit") {
  const auto& ed2 = eigendecompose(
      assemble(Grid::make(1, 8.0, 257), Potential::hermite(), 2));
  const double t = 0.4;
  Kernel kt = heat_kernel_eigen(ed2, t);
  Kernel kh = heat_kernel_eigen(ed2, t / 2.0);

  // composition via quadrature
  const std::size_t n = ed2.grid()->node_count();
  double worst = 0.0, scale = 0.0;
  for (std::size_t x = 0; x < n; x += 5) {
    for (std::size_t y = 0; y < n; y += 5) {
      double acc = 0.0;
      for (std::size_t z = 0; z < n; ++z)
        acc += ed2.grid()->node_weight(z) * kh.at(x, z) * kh.at(z, y);
      worst = std::max(worst, std::abs(acc - kt.at(x, y)));
      scale = std::max(scale, std::abs(kt.at(x, y)));
    }
  }
  CHECK(worst / scale < 1e-8);

  // 2nd-order generator is an M-matrix: kernel stays nonnegative
  double mn = 0.0;
  for (double v : kt.values) mn = std::min(mn, v);
  CHECK(mn >= -1e-8);

  // t -> 0 limit on a band-limited function
  GridFunction f = zero_function(ed2.grid());
  std::vector<double> c(ed2.count(), 0.0);
  c[0] = 0.6;
  c[3] = -0.8;
  f = ed2.synthesize(c);
  GridFunction g = kernel_apply(heat_kernel_eigen(ed2, 1e-6), f);
  CHECK(max_abs_diff(f, g) < 1e-4);

  CHECK_THROWS_AS(heat_kernel_eigen(ed2, 0.0), std::invalid_argument);
}

TEST_CASE("mehler kernel against the eigen-series oracle") {
  const auto& ed = hermite_ed();
  // closed form at the origin: (2 pi sinh 1)^{-1/2}
  Kernel m = mehler_kernel(ed.grid(), 0.5, true);
  const std::size_t mid = ed.grid()->node_count() / 2;
  CHECK(m.at(mid, mid) ==
        doctest::Approx(std::pow(2.0 * M_PI * std::sinh(1.0), -0.5))
            .epsilon(1e-12));
  CHECK(m.at(mid, mid) == doctest::Approx(0.368010).epsilon(1e-5));
  // gradient vanishes at x = y = 0 by symmetry
  CHECK(m.grad_at(0, mid, mid) == 0.0);

  // truncated eigen-series oracle at selected points
  for (double t : {0.1, 0.5, 1.0}) {
    Kernel closed = mehler_kernel(ed.grid(), t);
    Kernel series = heat_kernel_eigen(ed, t);
    double sup = 0.0, diff = 0.0;
    const std::size_t n = ed.grid()->node_count();
    for (std::size_t x = 0; x < n; x += 3) {
      const double cx = ed.grid()->coords(x)[0];
      if (std::abs(cx) > 4.0) continue;
      for (std::size_t y = 0; y < n; y += 3) {
        if (std::abs(ed.grid()->coords(y)[0]) > 4.0) continue;
        sup = std::max(sup, std::abs(closed.at(x, y)));
        diff = std::max(diff, std::abs(closed.at(x, y) - series.at(x, y)));
      }
    }
    CHECK(diff / sup < 1e-4);  // h^4 scaling: ~3e-5 at P=257 vs 6e-7 at P=1024
  }
  CHECK_THROWS_AS(mehler_kernel(ed.grid(), -1.0), std::invalid_argument);
}

TEST_CASE("mehler kernel underflows to zero without NaN") {
  auto g = Grid::make(1, 60.0, 121);
  Kernel k = mehler_kernel(g, 0.01);
  for (double v : k.values) CHECK(std::isfinite(v));
  CHECK(k.at(0, 120) == 0.0);  // x=-60, y=60: far separated
}

TEST_CASE("band decomposition matches member-by-member application") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 6);
  GridFunction f = random_function(ed.grid(), 11);
  const auto bands = band_decompose(ed, sys, f, 0, 6);
  for (int j = 0; j <= 6; ++j) {
    GridFunction direct = apply_spectral(
        ed, [&](double lam) { return sys.member(j, lam); }, f);
    CHECK(max_abs_diff(bands[static_cast<std::size_t>(j)], direct) < 1e-12);
  }
}

TEST_CASE("kernel CSV export") {
  auto g = Grid::make(1, 1.0, 3);
  EigenDecomposition ed = eigendecompose(assemble(g, Potential::zero(), 2));
  Kernel k = spectral_kernel(ed, [](double) { return 1.0; });
  std::ostringstream out;
  write_csv(k, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x_index,y_index,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("2d mehler kernel agrees with the 2d eigen-series") {
  auto g = Grid::make(2, 5.0, 33);
  EigenDecomposition ed = eigendecompose(assemble(g, Potential::hermite(), 4));
  // 2d oscillator levels are n + 2|k| = 2, 4, 4, 6, ...
  CHECK(std::abs(ed.eigenvalue(0) - 2.0) < 2e-3);
  CHECK(std::abs(ed.eigenvalue(1) - 4.0) < 5e-3);
  for (double t : {0.3, 0.8}) {
    Kernel closed = mehler_kernel(g, t, true);
    Kernel series = heat_kernel_eigen(ed, t, true);
    double sup = 0.0, diff = 0.0, gsup = 0.0, gdiff = 0.0;
    const std::size_t n = g->node_count();
    for (std::size_t x = 0; x < n; x += 3) {
      const auto cx = g->coords(x);
      if (std::hypot(cx[0], cx[1]) > 3.0) continue;
      for (std::size_t y = 0; y < n; y += 3) {
        const auto cy = g->coords(y);
        if (std::hypot(cy[0], cy[1]) > 3.0) continue;
        sup = std::max(sup, std::abs(closed.at(x, y)));
        diff = std::max(diff, std::abs(closed.at(x, y) - series.at(x, y)));
        for (int a = 0; a < 2; ++a) {
          gsup = std::max(gsup, std::abs(closed.grad_at(a, x, y)));
          gdiff = std::max(gdiff, std::abs(closed.grad_at(a, x, y) -
                                           series.grad_at(a, x, y)));
        }
      }
    }
    CHECK(diff / sup < 2e-2);    // coarse 33-point axes
    CHECK(gdiff / gsup < 5e-2);
  }
}
