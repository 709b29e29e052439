#pragma once

#include "specband/calculus.hpp"
#include "specband/dyadic.hpp"
#include "specband/grid.hpp"
#include "specband/operator.hpp"

namespace specband {

enum class SpaceFamily { besov, triebel_lizorkin };
enum class SpaceVariant { plain, maximal };

struct SpaceParams {
  double alpha = 0.0;  // smoothness weight 2^{j alpha}
  double p = 2.0;      // outer exponent; F requires p < inf
  double q = 2.0;      // inner exponent, (0, inf]
  double s = 1.0;      // Peetre parameter for the maximal variant
  int j_min = 0;
  int j_max = 0;
  // The maximal characterization needs s > n/p (Besov) resp.
  // s > n/min(p,q) (Triebel-Lizorkin). With warn_below_threshold the norm
  // is still computed below the threshold (exploration mode).
  bool warn_below_threshold = false;
};

// plain Besov:  ( sum_j (2^{j alpha} ||phi_j(H) f||_p)^q )^{1/q}
// plain F:      || ( sum_j (2^{j alpha} |phi_j(H) f|)^q )^{1/q} ||_p
// maximal variants substitute the Peetre maximal function phi*_{j,s} f.
double space_norm(const GridFunction& f, const DyadicSystem& system,
                  const EigenDecomposition& ed, const SpaceParams& params,
                  SpaceFamily family, SpaceVariant variant);

// || ( sum_j |phi_j(H) f|^2 )^{1/2} ||_p  (= F norm with alpha=0, q=2).
double square_function_norm(const GridFunction& f, const DyadicSystem& system,
                            const EigenDecomposition& ed, double p);

// || (sum_j 2^{2js} |phi_j(H)f|^2)^{1/2} ||_p  divided by  ||H^s f||_p,
// with H^s realized spectrally as lambda^s. Requires a nonnegative
// spectrum when s is not an integer.
double sobolev_ratio(const GridFunction& f, const DyadicSystem& system,
                     const EigenDecomposition& ed, double s, double p);

}  // namespace specband
