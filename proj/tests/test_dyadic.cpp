#include <doctest.h>

#include <cmath>

#include "specband/dyadic.hpp"

using namespace specband;

TEST_CASE("bump profile plateau and support") {
  BumpProfile psi;
  CHECK(psi(0.0) == 1.0);
  CHECK(psi(0.5) == 1.0);
  CHECK(psi(-0.3) == 1.0);
  CHECK(psi(1.0) == 0.0);
  CHECK(psi(1.5) == 0.0);
  CHECK(psi(0.75) > 0.0);
  CHECK(psi(0.75) < 1.0);
  // monotone on [1/2, 1]
  double prev = 1.0;
  for (double x = 0.5; x <= 1.0; x += 0.01) {
    const double v = psi(x);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("telescoping partition of unity") {
  DyadicSystem sys = make_system(BumpProfile(), -20, 20);
  CHECK(sys.sum(1.37) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.sum(0.004) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.sum(777.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("support condition per member") {
  DyadicSystem sys = make_system(BumpProfile(), -5, 10);
  for (int j : {-3, 0, 4, 9}) {
    CHECK(sys.member(j, std::ldexp(1.0, j - 3)) == 0.0);
    CHECK(sys.member(j, 3.0 * std::ldexp(1.0, j)) == 0.0);
    CHECK(sys.member(j, 0.5 * std::ldexp(1.0, j)) == 1.0);  // plateau center
  }
}

TEST_CASE("scaling identity is exact") {
  DyadicSystem sys = make_system(BumpProfile(), -8, 12);
  for (int j : {-6, -1, 3, 11}) {
    for (double lam : {0.3, 1.0, 2.71828, 140.0}) {
      CHECK(sys.member(j, lam) == sys.member(0, std::ldexp(lam, -j)));
    }
  }
}

TEST_CASE("derivative rescaling is j-independent") {
  DyadicSystem sys = make_system(BumpProfile(), 0, 10, {}, 3);
  // sup_j |phi_j^(k)| 2^{kj} measured on a shared relative sweep
  for (int k : {1, 2, 3}) {
    double sup0 = 0.0, sup7 = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = 0.4 + (2.2 - 0.4) * i / 400.0;
      sup0 = std::max(sup0, std::abs(sys.member_derivative(0, std::ldexp(x, 0), k)));
      sup7 = std::max(sup7, std::abs(sys.member_derivative(7, std::ldexp(x, 7), k)) *
                                std::ldexp(1.0, 7 * k));
    }
    CHECK(std::abs(sup0 - sup7) <= 1e-9 * std::max(1.0, sup0));
  }
  CHECK(sys.derivative_bound(1) > 0.0);
  CHECK(std::isfinite(sys.derivative_bound(1)));
}

TEST_CASE("square normalized system sums squares to one") {
  SystemOptions opts;
  opts.square_normalized = true;
  DyadicSystem sys = make_system(BumpProfile(), -10, 10, opts);
  for (double lam : {0.2, 1.0, 1.7, 5.0, 300.0}) {
    double acc = 0.0;
    for (int j = sys.j_min(); j <= sys.j_max(); ++j) {
      const double v = sys.member(j, lam);
      acc += v * v;
    }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
  }
  // still an exact rescaling family
  CHECK(sys.member(4, 11.0) == sys.member(0, std::ldexp(11.0, -4)));
}

TEST_CASE("plain system squares sum into [1/2, 1]") {
  DyadicSystem sys = make_system(BumpProfile(), -15, 15);
  double lo = 2.0, hi = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double lam = 0.5 * std::pow(2.0, i / 1000.0);  // two octaves
    const double v = sys.raw_sum_of_squares(lam);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reproducing cutoff plateau, support, and reproduction") {
  ReproducingCutoff psi = make_reproducing_cutoff(BumpProfile());
  CHECK(psi(0.5) == 1.0);
  CHECK(psi(0.25) == 1.0);
  CHECK(psi(1.0) == 1.0);
  CHECK(psi(2.0) == 0.0);
  CHECK(psi(0.19) == 0.0);
  CHECK(psi(1.26) == 0.0);

  DyadicSystem sys = make_system(BumpProfile(), -5, 8);
  for (int j : {-3, 0, 5}) {
    double worst = 0.0;
    for (int i = 0; i <= 4096; ++i) {
      const double lam = std::ldexp(1.0, j - 3) +
                         (std::ldexp(1.0, j + 1) - std::ldexp(1.0, j - 3)) *
                             i / 4096.0;
      const double phi = sys.member(j, lam);
      worst = std::max(worst,
                       std::abs(psi.member(j, lam) * phi - phi));
    }
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("validate_system passes the default system") {
  DyadicSystem sys = make_system(BumpProfile(), -20, 20);
  SystemValidation v = validate_system(sys, 1e-3, 1e3, 512, 2);
  CHECK(v.pass);
  CHECK(v.support_violations == 0);
  CHECK(v.sum_lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.sum_upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("validate_system passes a truncated covered range") {
  DyadicSystem sys = make_system(BumpProfile(), 0, 10);
  SystemValidation v = validate_system(sys, 2.0, 500.0, 512, 2);
  CHECK(v.pass);
  CHECK(v.sum_lower == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("corrupted profile fails the sum floor") {
  SystemOptions opts;
  opts.corrupted = true;
  DyadicSystem sys = make_system(BumpProfile(), -20, 20, opts);
  SystemValidation v = validate_system(sys, 1e-2, 1e2, 512, 2);
  CHECK_FALSE(v.pass);
  CHECK(v.sum_lower < 0.5);
  CHECK(v.sum_lower > 0.0);
}

TEST_CASE("validate_system rejects an empty lambda range") {
  DyadicSystem sys = make_system(BumpProfile(), 0, 4);
  CHECK_THROWS_AS(validate_system(sys, 2.0, 1.0, 512, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_system(sys, -1.0, 1.0, 512, 2),
                  std::invalid_argument);
}

TEST_CASE("make_system rejects bad ranges") {
  CHECK_THROWS_AS(make_system(BumpProfile(), 5, 2), std::invalid_argument);
}

TEST_CASE("sharp profile is admissible too") {
  DyadicSystem sys = make_system(BumpProfile(ProfileKind::sharp), -12, 12);
  CHECK(sys.sum(3.3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.member(2, std::ldexp(1.0, -1)) == 0.0);
  SystemValidation v = validate_system(sys, 0.01, 100.0, 256, 2);
  CHECK(v.pass);
}

TEST_CASE("indicator profile telescopes but is discontinuous") {
  DyadicSystem sys = make_system(BumpProfile(ProfileKind::indicator), -12, 12);
  CHECK(sys.sum(2.2) == doctest::Approx(1.0).epsilon(1e-12));
  // values only 0 or 1
  for (double lam : {0.9, 1.4, 2.9}) {
    for (int j = -2; j <= 3; ++j) {
      const double v = sys.member(j, lam);
      CHECK((v == 0.0 || v == 1.0));
    }
  }
}
