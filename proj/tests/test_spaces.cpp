#include <doctest.h>

#include <cmath>
#include <random>

#include "specband/spaces.hpp"

using namespace specband;

namespace {

const EigenDecomposition& hermite_ed() {
  static EigenDecomposition ed = eigendecompose(
      assemble(Grid::make(1, 8.0, 257), Potential::hermite(), 4));
  return ed;
}

GridFunction band_random(const EigenDecomposition& ed, std::uint64_t seed,
                         double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::vector<double> c(ed.count(), 0.0);
  for (std::size_t k = 0; k < ed.count(); ++k)
    if (ed.eigenvalue(k) >= lo && ed.eigenvalue(k) <= hi)
      c[k] = (rng() >> 11) * 0x1.0p-53 - 0.5;
  GridFunction f = ed.synthesize(c);
  const double n = lp_norm(f, 2.0);
  for (double& v : f.values) v /= n;
  return f;
}

}  // namespace

TEST_CASE("eigenfunction with a single contributing block") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 6);
  // lambda_0 ~ 1 = 2^{1-1}: only phi_1 is nonzero there, with value 1
  GridFunction e0 = ed.eigenfunction(0);
  SpaceParams params;
  params.alpha = 0.7;
  params.p = 3.0;
  params.j_min = 0;
  params.j_max = 6;
  for (double q : {0.8, 2.0, std::numeric_limits<double>::infinity()}) {
    params.q = q;
    const double besov = space_norm(e0, sys, ed, params, SpaceFamily::besov,
                                    SpaceVariant::plain);
    const double expect = std::pow(2.0, 0.7) * lp_norm(e0, 3.0);
    CHECK(besov == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("besov and triebel-lizorkin coincide at p = q") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);
  GridFunction f = band_random(ed, 3, 1.0, 50.0);
  SpaceParams params;
  params.alpha = 0.0;
  params.p = 2.0;
  params.q = 2.0;
  params.j_min = 0;
  params.j_max = 7;
  const double b =
      space_norm(f, sys, ed, params, SpaceFamily::besov, SpaceVariant::plain);
  const double tl = space_norm(f, sys, ed, params,
                               SpaceFamily::triebel_lizorkin,
                               SpaceVariant::plain);
  CHECK(b == doctest::Approx(tl).epsilon(1e-12));
}

TEST_CASE("square-normalized system turns the norm into parseval") {
  const auto& ed = hermite_ed();
  SystemOptions opts;
  opts.square_normalized = true;
  DyadicSystem sys = make_system(BumpProfile(), 0, 7, opts);
  SpaceParams params;
  params.alpha = 0.0;
  params.p = 2.0;
  params.q = 2.0;
  params.j_min = 0;
  params.j_max = 7;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    GridFunction f = band_random(ed, seed, 1.0, 60.0);
    const double norm = space_norm(f, sys, ed, params,
                                   SpaceFamily::triebel_lizorkin,
                                   SpaceVariant::plain);
    CHECK(std::abs(norm - 1.0) < 1e-8);
  }
}

TEST_CASE("square function norm basics") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);

  GridFunction zero = zero_function(ed.grid());
  CHECK(square_function_norm(zero, sys, ed, 2.0) == 0.0);

  // eigenfunction: (sum_j phi_j(lambda_k)^2)^{1/2} ||e_k||_p
  GridFunction e4 = ed.eigenfunction(4);
  const double lam = ed.eigenvalue(4);
  double ssq = 0.0;
  for (int j = 0; j <= 7; ++j) ssq += std::pow(sys.member(j, lam), 2.0);
  for (double p : {1.5, 2.0, 4.0}) {
    CHECK(square_function_norm(e4, sys, ed, p) ==
          doctest::Approx(std::sqrt(ssq) * lp_norm(e4, p)).epsilon(1e-9));
  }

  // ratio to ||f||_2 sits in [sqrt(1/2), 1] for the telescoping system
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    GridFunction f = band_random(ed, seed, 1.0, 60.0);
    const double ratio = square_function_norm(f, sys, ed, 2.0);
    CHECK(ratio >= 0.7);
    CHECK(ratio <= 1.0 + 1e-10);
  }
}

TEST_CASE("space norm quasi-homogeneity") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);
  GridFunction f = band_random(ed, 21, 1.0, 40.0);
  GridFunction cf = f;
  for (double& v : cf.values) v *= -3.25;
  SpaceParams params;
  params.alpha = 0.3;
  params.p = 1.4;
  params.q = 0.9;
  params.j_min = 0;
  params.j_max = 7;
  for (auto family : {SpaceFamily::besov, SpaceFamily::triebel_lizorkin}) {
    const double a = space_norm(f, sys, ed, params, family,
                                SpaceVariant::plain);
    const double b = space_norm(cf, sys, ed, params, family,
                                SpaceVariant::plain);
    CHECK(b == doctest::Approx(3.25 * a).epsilon(1e-12));
  }
}

TEST_CASE("maximal variant dominates the plain norm") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);
  SpaceParams params;
  params.alpha = 0.0;
  params.p = 2.0;
  params.q = 2.0;
  params.s = 1.5;  // > n/min(p,q) = 1/2
  params.j_min = 0;
  params.j_max = 7;
  for (std::uint64_t seed : {31u, 32u}) {
    GridFunction f = band_random(ed, seed, 1.0, 50.0);
    const double plain = space_norm(f, sys, ed, params,
                                    SpaceFamily::triebel_lizorkin,
                                    SpaceVariant::plain);
    const double maximal = space_norm(f, sys, ed, params,
                                      SpaceFamily::triebel_lizorkin,
                                      SpaceVariant::maximal);
    CHECK(maximal >= plain - 1e-12);
  }
}

TEST_CASE("space norm parameter validation") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);
  GridFunction f = band_random(ed, 41, 1.0, 30.0);
  SpaceParams params;
  params.p = std::numeric_limits<double>::infinity();
  params.q = 2.0;
  params.j_min = 0;
  params.j_max = 7;
  CHECK_THROWS_AS(space_norm(f, sys, ed, params,
                             SpaceFamily::triebel_lizorkin,
                             SpaceVariant::plain),
                  std::invalid_argument);
  // Besov with p = inf is allowed
  CHECK(space_norm(f, sys, ed, params, SpaceFamily::besov,
                   SpaceVariant::plain) > 0.0);

  // maximal variant below the threshold: rejected unless warn mode
  params.p = 2.0;
  params.s = 0.25;  // below n/min(p,q) = 0.5
  CHECK_THROWS_AS(space_norm(f, sys, ed, params,
                             SpaceFamily::triebel_lizorkin,
                             SpaceVariant::maximal),
                  std::invalid_argument);
  params.warn_below_threshold = true;
  CHECK(space_norm(f, sys, ed, params, SpaceFamily::triebel_lizorkin,
                   SpaceVariant::maximal) > 0.0);

  params.j_max = 99;
  CHECK_THROWS_AS(space_norm(f, sys, ed, params, SpaceFamily::besov,
                             SpaceVariant::plain),
                  std::invalid_argument);
}

TEST_CASE("sobolev ratio reductions and support pinning") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);

  // s = 0 reduces to square function over ||f||_p
  GridFunction f = band_random(ed, 51, 1.0, 40.0);
  const double r0 = sobolev_ratio(f, sys, ed, 0.0, 2.0);
  CHECK(r0 == doctest::Approx(square_function_norm(f, sys, ed, 2.0) /
                              lp_norm(f, 2.0))
                  .epsilon(1e-10));

  // eigenfunction closed form at p = 2
  GridFunction e6 = ed.eigenfunction(6);
  const double lam = ed.eigenvalue(6);
  const double s = 1.0;
  double acc = 0.0;
  for (int j = 0; j <= 7; ++j)
    acc += std::pow(4.0, j * s) * std::pow(sys.member(j, lam), 2.0);
  const double expect = std::sqrt(acc) / std::pow(lam, s);
  CHECK(sobolev_ratio(e6, sys, ed, s, 2.0) ==
        doctest::Approx(expect).epsilon(1e-9));

  // spread across random band functions bounded by the support pinning
  double lo = 1e300, hi = 0.0;
  for (std::uint64_t seed : {61u, 62u, 63u, 64u, 65u}) {
    GridFunction g = band_random(ed, seed, 1.0, 40.0);
    const double r = sobolev_ratio(g, sys, ed, 1.0, 2.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 16.0);
}

TEST_CASE("sobolev ratio rejects fractional powers of a negative spectrum") {
  auto g = Grid::make(1, 10.0, 129);
  EigenDecomposition ed =
      eigendecompose(assemble(g, Potential::poschl_teller(1), 4));
  REQUIRE(ed.eigenvalue(0) < 0.0);
  DyadicSystem sys = make_system(BumpProfile(), 0, 5);
  GridFunction f = ed.eigenfunction(3);
  CHECK_THROWS_AS(sobolev_ratio(f, sys, ed, 0.5, 2.0), std::invalid_argument);
}

TEST_CASE("besov maximal variant ratio lies in [1, C] for s > n/p") {
  const auto& ed = hermite_ed();
  DyadicSystem sys = make_system(BumpProfile(), 0, 7);
  SpaceParams params;
  params.alpha = 0.0;
  params.p = 2.0;
  params.q = 2.0;
  params.s = 1.5;  // > n/p = 1/2
  params.j_min = 0;
  params.j_max = 7;
  double cmax = 0.0;
  for (std::uint64_t seed : {71u, 72u, 73u}) {
    GridFunction f = band_random(ed, seed, 1.0, 50.0);
    const double plain = space_norm(f, sys, ed, params, SpaceFamily::besov,
                                    SpaceVariant::plain);
    const double maximal = space_norm(f, sys, ed, params, SpaceFamily::besov,
                                      SpaceVariant::maximal);
    const double ratio = maximal / plain;
    CHECK(ratio >= 1.0 - 1e-12);
    cmax = std::max(cmax, ratio);
  }
  CHECK(cmax <= 50.0);
}
