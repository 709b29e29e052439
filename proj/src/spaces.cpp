#include "specband/spaces.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "specband/maximal.hpp"

namespace specband {

namespace {

std::vector<double> alpha_weights(const SpaceParams& params) {
  std::vector<double> w;
  for (int j = params.j_min; j <= params.j_max; ++j)
    w.push_back(std::pow(2.0, params.alpha * j));
  return w;
}

}  // namespace

double space_norm(const GridFunction& f, const DyadicSystem& system,
                  const EigenDecomposition& ed, const SpaceParams& params,
                  SpaceFamily family, SpaceVariant variant) {
  if (!(params.p > 0.0) || !(params.q > 0.0))
    throw std::invalid_argument("space_norm: p and q must be positive");
  if (family == SpaceFamily::triebel_lizorkin && std::isinf(params.p))
    throw std::invalid_argument("space_norm: F norms require p < inf");
  if (params.j_min < system.j_min() || params.j_max > system.j_max() ||
      params.j_min > params.j_max)
    throw std::invalid_argument("space_norm: j range outside the system");

  const int n = ed.grid()->dim();
  if (variant == SpaceVariant::maximal) {
    if (!(params.s > 0.0))
      throw std::invalid_argument("space_norm: maximal variant needs s > 0");
    const double threshold = family == SpaceFamily::besov
                                 ? n / params.p
                                 : n / std::min(params.p, params.q);
    if (params.s <= threshold && !params.warn_below_threshold)
      throw std::invalid_argument(
          "space_norm: s below the maximal-characterization threshold "
          "(enable warn_below_threshold to explore)");
  }

  std::vector<GridFunction> stack =
      band_decompose(ed, system, f, params.j_min, params.j_max);
  if (variant == SpaceVariant::maximal) {
    for (std::size_t i = 0; i < stack.size(); ++i) {
      const int j = params.j_min + static_cast<int>(i);
      stack[i] =
          PeetreEvaluator(ed.grid(), j, params.s).eval(stack[i]);
    }
  }
  const std::vector<double> weights = alpha_weights(params);
  const MixedNormMode mode = family == SpaceFamily::besov
                                 ? MixedNormMode::lq_of_Lp
                                 : MixedNormMode::Lp_of_lq;
  return mixed_norm(stack, params.p, params.q, mode, weights);
}

double square_function_norm(const GridFunction& f, const DyadicSystem& system,
                            const EigenDecomposition& ed, double p) {
  SpaceParams params;
  params.alpha = 0.0;
  params.p = p;
  params.q = 2.0;
  params.j_min = system.j_min();
  params.j_max = system.j_max();
  return space_norm(f, system, ed, params, SpaceFamily::triebel_lizorkin,
                    SpaceVariant::plain);
}

double sobolev_ratio(const GridFunction& f, const DyadicSystem& system,
                     const EigenDecomposition& ed, double s, double p) {
  const bool integer_s = s == std::floor(s);
  if (!integer_s && ed.eigenvalue(0) < 0.0)
    throw std::invalid_argument(
        "sobolev_ratio: negative eigenvalues need integer s");

  SpaceParams params;
  params.alpha = s;
  params.p = p;
  params.q = 2.0;
  params.j_min = system.j_min();
  params.j_max = system.j_max();
  const double weighted = space_norm(f, system, ed, params,
                                     SpaceFamily::triebel_lizorkin,
                                     SpaceVariant::plain);
  const GridFunction hsf = apply_spectral(
      ed, [s](double lam) { return std::pow(lam, s); }, f);
  const double denom = lp_norm(hsf, p);
  if (denom == 0.0)
    throw std::invalid_argument("sobolev_ratio: ||H^s f||_p vanishes");
  return weighted / denom;
}

}  // namespace specband
