#include "specband/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specband/parallel.hpp"

namespace specband {

MaximalConfig MaximalConfig::dyadic(const Grid& grid) {
  MaximalConfig cfg;
  const double h = grid.spacing();
  cfg.radii.push_back(0.5 * h);
  for (double r = h; r <= 2.0 * grid.halfwidth(); r *= 2.0)
    cfg.radii.push_back(r);
  return cfg;
}

namespace {

// 1D: the ball B(x_i, r) on a uniform axis is the index window [i-k, i+k]
// with k = floor(r/h); prefix sums give each average in O(1).
GridFunction hl_maximal_1d(const GridFunction& f, const MaximalConfig& cfg) {
  const auto& g = *f.grid;
  const std::size_t n = g.node_count();
  const double h = g.spacing();

  std::vector<double> pref_wv(n + 1, 0.0), pref_w(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = g.node_weight(i);
    pref_wv[i + 1] = pref_wv[i] + w * std::abs(f.values[i]);
    pref_w[i + 1] = pref_w[i] + w;
  }

  GridFunction out = zero_function(f.grid);
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.0;
    for (double r : cfg.radii) {
      const std::ptrdiff_t k =
          static_cast<std::ptrdiff_t>(std::floor(r / h + 1e-12));
      const std::size_t lo =
          i >= static_cast<std::size_t>(std::max<std::ptrdiff_t>(k, 0))
              ? i - static_cast<std::size_t>(k)
              : 0;
      const std::size_t hi = std::min(n - 1, i + static_cast<std::size_t>(k));
      const double mass = pref_wv[hi + 1] - pref_wv[lo];
      const double meas = pref_w[hi + 1] - pref_w[lo];
      if (meas > 0.0) best = std::max(best, mass / meas);
    }
    out.values[i] = best;
  }
  return out;
}

GridFunction hl_maximal_2d(const GridFunction& f, const MaximalConfig& cfg) {
  const auto& g = *f.grid;
  const std::size_t p = static_cast<std::size_t>(g.points_per_axis());
  const double h = g.spacing();

  // Disk offsets per radius, sorted by radius.
  std::vector<std::vector<std::pair<int, int>>> disks;
  for (double r : cfg.radii) {
    std::vector<std::pair<int, int>> offs;
    const int k = static_cast<int>(std::floor(r / h + 1e-12));
    for (int dx = -k; dx <= k; ++dx)
      for (int dy = -k; dy <= k; ++dy)
        if (std::hypot(dx * h, dy * h) <= r * (1.0 + 1e-12))
          offs.emplace_back(dx, dy);
    disks.push_back(std::move(offs));
  }

  GridFunction out = zero_function(f.grid);
  parallel_for(p * p, [&](std::size_t node) {
    const int ix = static_cast<int>(node / p);
    const int iy = static_cast<int>(node % p);
    double best = 0.0;
    for (const auto& disk : disks) {
      double mass = 0.0, meas = 0.0;
      for (const auto& [dx, dy] : disk) {
        const int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= static_cast<int>(p) ||
            jy >= static_cast<int>(p))
          continue;
        const std::size_t m =
            static_cast<std::size_t>(jx) * p + static_cast<std::size_t>(jy);
        const double w = g.node_weight(m);
        mass += w * std::abs(f.values[m]);
        meas += w;
      }
      if (meas > 0.0) best = std::max(best, mass / meas);
    }
    out.values[node] = best;
  });
  return out;
}

}  // namespace

GridFunction hl_maximal(const GridFunction& f, const MaximalConfig& cfg) {
  check_function(f);
  if (cfg.radii.empty())
    throw std::invalid_argument("hl_maximal: empty radius set");
  for (std::size_t i = 1; i < cfg.radii.size(); ++i)
    if (!(cfg.radii[i] > cfg.radii[i - 1]))
      throw std::invalid_argument("hl_maximal: radii must increase");
  return f.grid->dim() == 1 ? hl_maximal_1d(f, cfg) : hl_maximal_2d(f, cfg);
}

PeetreEvaluator::PeetreEvaluator(const GridPtr& grid, int j, double s)
    : grid_(grid) {
  if (!(s > 0.0))
    throw std::invalid_argument("peetre: s must be positive");
  const std::size_t n = grid->node_count();
  const double scale = std::sqrt(std::ldexp(1.0, j));  // 2^{j/2}
  damping_.assign(n * n, 0.0);
  parallel_for(n, [&](std::size_t x) {
    double* row = damping_.data() + x * n;
    for (std::size_t t = 0; t < n; ++t)
      row[t] = std::pow(1.0 + scale * grid->distance(x, t), -s);
  });
}

GridFunction PeetreEvaluator::eval(const GridFunction& u) const {
  if (!u.grid || !u.grid->same_as(*grid_))
    throw std::invalid_argument("peetre: grid mismatch");
  const std::size_t n = grid_->node_count();
  std::vector<double> au(n);
  for (std::size_t t = 0; t < n; ++t) au[t] = std::abs(u.values[t]);
  GridFunction out = zero_function(u.grid);
  parallel_for(n, [&](std::size_t x) {
    const double* row = damping_.data() + x * n;
    double best = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      best = std::max(best, row[t] * au[t]);
    out.values[x] = best;
  });
  return out;
}

GridFunction peetre_maximal(const DyadicSystem& system,
                            const EigenDecomposition& ed, int j, double s,
                            const GridFunction& f, PeetreOrder order) {
  if (j < system.j_min() || j > system.j_max())
    throw std::invalid_argument("peetre: j outside the system range");
  GridFunction u = apply_spectral(
      ed, [&](double lam) { return system.member(j, lam); }, f);
  if (order == PeetreOrder::star_star) u = gradient_magnitude(u);
  return PeetreEvaluator(ed.grid(), j, s).eval(u);
}

}  // namespace specband
