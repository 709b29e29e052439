#include "specband/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specband {

namespace {

// exp(-1/u) mollifier piece; exactly 0 for u <= 0 (underflows for tiny u).
double mollifier(double u) {
  if (u <= 0.0) return 0.0;
  return std::exp(-1.0 / u);
}

// Smooth step: 0 for u <= 0, 1 for u >= 1, strictly increasing between.
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = mollifier(u);
  const double b = mollifier(1.0 - u);
  return a / (a + b);
}

constexpr double kDerivStep = 0.0078125;  // 2^-7

// 2nd-order central difference for the k-th derivative.
double central_diff(const BumpProfile& f, double x, int k, double h) {
  switch (k) {
    case 1:
      return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
      return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) -
              f(x - 2 * h)) /
             (2.0 * h * h * h);
    case 4:
      return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) +
              f(x - 2 * h)) /
             (h * h * h * h);
    default:
      throw std::invalid_argument("derivative order must be in [0,4]");
  }
}

double base_raw(const BumpProfile& psi, double x) {
  const double a = std::abs(x);
  return psi(a / 2.0) - psi(a);
}

double corruption_dip(double x) {
  const double d = std::abs(x) - 1.0;
  return 1.0 - 0.75 * std::exp(-32.0 * d * d);
}

}  // namespace

double BumpProfile::operator()(double x) const {
  const double a = std::abs(x);
  switch (kind_) {
    case ProfileKind::standard:
      return smoothstep(2.0 * (1.0 - a));
    case ProfileKind::sharp: {
      const double t = smoothstep(2.0 * (1.0 - a));
      return t * t * (3.0 - 2.0 * t);
    }
    case ProfileKind::indicator:
      return a <= 0.75 ? 1.0 : 0.0;
  }
  return 0.0;
}

double BumpProfile::derivative(double x, int k) const {
  if (k == 0) return (*this)(x);
  // One Richardson level turns the 2nd-order stencils into 4th order.
  const double d1 = central_diff(*this, x, k, kDerivStep);
  const double d2 = central_diff(*this, x, k, kDerivStep / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

double DyadicSystem::base(double x) const {
  double v = base_raw(profile_, x);
  if (options_.corrupted) v *= corruption_dip(x);
  if (options_.square_normalized) {
    if (v == 0.0) return 0.0;
    v /= std::sqrt(raw_sum_of_squares(x));
  }
  return v;
}

double DyadicSystem::base_derivative(double x, int k) const {
  if (k == 0) return base(x);
  auto eval = [this](double t) { return base(t); };
  auto cd = [&](double h) {
    switch (k) {
      case 1:
        return (eval(x + h) - eval(x - h)) / (2.0 * h);
      case 2:
        return (eval(x + h) - 2.0 * eval(x) + eval(x - h)) / (h * h);
      case 3:
        return (eval(x + 2 * h) - 2.0 * eval(x + h) + 2.0 * eval(x - h) -
                eval(x - 2 * h)) /
               (2.0 * h * h * h);
      case 4:
        return (eval(x + 2 * h) - 4.0 * eval(x + h) + 6.0 * eval(x) -
                4.0 * eval(x - h) + eval(x - 2 * h)) /
               (h * h * h * h);
      default:
        throw std::invalid_argument("derivative order must be in [0,4]");
    }
  };
  const double d1 = cd(kDerivStep);
  const double d2 = cd(kDerivStep / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

double DyadicSystem::member(int j, double lambda) const {
  // ldexp keeps the dyadic rescaling exact, so member(j, lambda) equals
  // member(0, 2^-j lambda) bit for bit.
  return base(std::ldexp(lambda, 1 - j));
}

double DyadicSystem::member_derivative(int j, double lambda, int k) const {
  if (k == 0) return member(j, lambda);
  return std::ldexp(base_derivative(std::ldexp(lambda, 1 - j), k),
                    (1 - j) * k);
}

double DyadicSystem::sum(double lambda) const {
  double acc = 0.0;
  for (int j = j_min_; j <= j_max_; ++j) acc += member(j, lambda);
  return acc;
}

double DyadicSystem::raw_sum_of_squares(double lambda) const {
  const double a = std::abs(lambda);
  if (a == 0.0) return 0.0;
  const int center = static_cast<int>(std::floor(std::log2(a)));
  double acc = 0.0;
  for (int i = center - 2; i <= center + 4; ++i) {
    double v = base_raw(profile_, std::ldexp(lambda, 1 - i));
    if (options_.corrupted) v *= corruption_dip(std::ldexp(lambda, 1 - i));
    acc += v * v;
  }
  return acc;
}

DyadicSystem make_system(const BumpProfile& profile, int j_min, int j_max,
                         const SystemOptions& options, int k_max) {
  if (j_min > j_max)
    throw std::invalid_argument("make_system: j_min must not exceed j_max");
  if (k_max < 0 || k_max > 4)
    throw std::invalid_argument("make_system: k_max must be in [0,4]");
  if (options.square_normalized && options.corrupted)
    throw std::invalid_argument(
        "make_system: square_normalized and corrupted are exclusive");

  DyadicSystem sys;
  sys.profile_ = profile;
  sys.j_min_ = j_min;
  sys.j_max_ = j_max;
  sys.options_ = options;

  // c_k = 2^k sup |base^{(k)}|, measured on a dense sweep of the support
  // neighborhood. The rescaling structure makes the same constant valid for
  // every j.
  const int samples = 4096;
  sys.derivative_bounds_.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    double sup = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double x = 0.4 + (2.2 - 0.4) * i / static_cast<double>(samples);
      sup = std::max(sup, std::abs(sys.base_derivative(x, k)));
    }
    sys.derivative_bounds_[static_cast<std::size_t>(k)] =
        std::ldexp(sup, k);
  }
  return sys;
}

double ReproducingCutoff::operator()(double x) const {
  const double a = std::abs(x);
  // Rising edge over [1/5, 1/4], falling edge over [1, 5/4].
  const double up = smoothstep((a - 0.2) / 0.05);
  const double down = smoothstep((1.25 - a) / 0.25);
  return up * down;
}

double ReproducingCutoff::member(int j, double lambda) const {
  return (*this)(std::ldexp(lambda, -j));
}

ReproducingCutoff make_reproducing_cutoff(const BumpProfile& profile) {
  return ReproducingCutoff(profile);
}

SystemValidation validate_system(const DyadicSystem& system, double lambda_min,
                                 double lambda_max, int samples_per_block,
                                 int k_max, double sum_floor) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
    throw std::invalid_argument(
        "validate_system: need 0 < lambda_min < lambda_max");
  if (samples_per_block < 8)
    throw std::invalid_argument("validate_system: sample density too low");

  SystemValidation report;
  report.sum_floor = sum_floor;

  // Support: sweep each block's dyadic neighborhood [2^{j-4}, 2^{j+2}] and
  // require exact zeros outside [2^{j-2}, 2^j].
  for (int j = system.j_min(); j <= system.j_max(); ++j) {
    const double lo = std::ldexp(1.0, j - 4);
    const double hi = std::ldexp(1.0, j + 2);
    const double ratio = hi / lo;
    for (int i = 0; i <= samples_per_block; ++i) {
      const double lam =
          lo * std::pow(ratio, i / static_cast<double>(samples_per_block));
      const double v = system.member(j, lam);
      const bool inside = lam >= std::ldexp(1.0, j - 2) * (1.0 - 1e-12) &&
                          lam <= std::ldexp(1.0, j) * (1.0 + 1e-12);
      if (!inside && v != 0.0) ++report.support_violations;
    }
  }

  // Rescaled derivative sups per k, maximized over sampled j.
  report.derivative_bounds.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    double sup = 0.0;
    for (int j = system.j_min(); j <= system.j_max(); ++j) {
      const double lo = std::ldexp(1.0, j - 2);
      const double hi = std::ldexp(1.0, j);
      for (int i = 0; i <= 512; ++i) {
        const double lam = lo + (hi - lo) * i / 512.0;
        sup = std::max(sup, std::abs(system.member_derivative(j, lam, k)) *
                                std::ldexp(1.0, k * j));
      }
    }
    report.derivative_bounds[static_cast<std::size_t>(k)] = sup;
  }

  // Partition sum bracket over [lambda_min, lambda_max], log-spaced.
  const int sum_samples =
      std::max(samples_per_block, 512) *
      std::max(1, system.j_max() - system.j_min() + 1) / 4;
  double a = std::numeric_limits<double>::infinity();
  double b = 0.0;
  const double ratio = lambda_max / lambda_min;
  for (int i = 0; i <= sum_samples; ++i) {
    const double lam =
        lambda_min * std::pow(ratio, i / static_cast<double>(sum_samples));
    const double s = system.sum(lam);
    a = std::min(a, s);
    b = std::max(b, s);
  }
  report.sum_lower = a;
  report.sum_upper = b;
  report.pass = report.support_violations == 0 && a >= sum_floor && a > 0.0;
  return report;
}

}  // namespace specband
