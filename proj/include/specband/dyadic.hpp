#pragma once

#include <vector>

#include "specband/grid.hpp"

namespace specband {

enum class ProfileKind {
  standard,   // exp(-1/x) mollifier smoothstep
  sharp,      // cubic reshaping of the standard transition (second
              // admissible profile, used for norm-equivalence cross-checks)
  indicator,  // discontinuous hard cutoff; negative control only
};

// Radial bump profile: 1 on |x| <= 1/2, 0 on |x| >= 1, monotone between,
// with exact floating-point cutoffs. Derivatives up to order 4 come from
// Richardson-extrapolated central differences with base step 2^-7.
class BumpProfile {
 public:
  explicit BumpProfile(ProfileKind kind = ProfileKind::standard)
      : kind_(kind) {}

  ProfileKind kind() const { return kind_; }
  double operator()(double x) const;
  double derivative(double x, int k) const;  // k = 0..4

 private:
  ProfileKind kind_;
};

struct SystemOptions {
  // Divide members by sqrt(sum_j phi_j^2) so the squares sum to 1; the
  // normalizer is invariant under dyadic rescaling, so members remain an
  // exact rescaling family.
  bool square_normalized = false;
  // Multiply the base by a smooth dip at |x| = 1, driving the partition sum
  // down to ~0.25 there; negative control for the sum condition.
  bool corrupted = false;
};

// Family phi_j(lambda) = phi(2^{1-j} lambda) built from the telescoping base
// phi(x) = Psi(x/2) - Psi(x): supp phi_j inside {2^{j-2} <= |lambda| <= 2^j},
// rescaled derivative bounds |phi_j^{(k)}| <= c_k 2^{-kj}, and partition sum
// identically 1 on the covered range.
class DyadicSystem {
 public:
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  const BumpProfile& profile() const { return profile_; }
  const SystemOptions& options() const { return options_; }

  double base(double x) const;
  double base_derivative(double x, int k) const;

  double member(int j, double lambda) const;
  double member_derivative(int j, double lambda, int k) const;

  // Measured c_k = 2^k sup |base^{(k)}| (one constant for every j).
  double derivative_bound(int k) const { return derivative_bounds_[k]; }
  int k_max() const { return static_cast<int>(derivative_bounds_.size()) - 1; }

  // sum over j in [j_min, j_max] of member(j, lambda).
  double sum(double lambda) const;
  // sum over all j in Z of the squared raw member (scale-invariant).
  double raw_sum_of_squares(double lambda) const;

 private:
  friend DyadicSystem make_system(const BumpProfile&, int, int,
                                  const SystemOptions&, int);

  BumpProfile profile_;
  int j_min_ = 0, j_max_ = 0;
  SystemOptions options_;
  std::vector<double> derivative_bounds_;
};

DyadicSystem make_system(const BumpProfile& profile, int j_min, int j_max,
                         const SystemOptions& options = {}, int k_max = 4);

// psi: smooth, supported in {1/5 <= |x| <= 5/4}, identically 1 on
// {1/4 <= |x| <= 1}; psi_j(lambda) = psi(2^-j lambda) is 1 on supp phi_j.
class ReproducingCutoff {
 public:
  explicit ReproducingCutoff(BumpProfile profile) : profile_(profile) {}
  double operator()(double x) const;
  double member(int j, double lambda) const;

 private:
  BumpProfile profile_;
};

ReproducingCutoff make_reproducing_cutoff(const BumpProfile& profile);

struct SystemValidation {
  int support_violations = 0;
  std::vector<double> derivative_bounds;  // per k, max over sampled j
  double sum_lower = 0.0;                 // a
  double sum_upper = 0.0;                 // b
  double sum_floor = 0.0;                 // configured pass floor
  bool pass = false;
};

// Samples every member over its dyadic neighborhood (support condition),
// measures the rescaled derivative sups, and brackets the partition sum on
// [lambda_min, lambda_max]. Pass requires zero support violations and
// sum_lower >= sum_floor > 0.
SystemValidation validate_system(const DyadicSystem& system, double lambda_min,
                                 double lambda_max, int samples_per_block,
                                 int k_max, double sum_floor = 0.5);

}  // namespace specband
