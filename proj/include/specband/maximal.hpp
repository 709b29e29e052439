#pragma once

#include <vector>

#include "specband/calculus.hpp"
#include "specband/dyadic.hpp"
#include "specband/grid.hpp"
#include "specband/operator.hpp"

namespace specband {

// Ball radii for the discrete Hardy-Littlewood maximal function: dyadic
// r_m = h 2^m up to 2L, preceded by h/2 so the smallest ball is the node
// itself (this keeps Mf >= |f| pointwise).
struct MaximalConfig {
  std::vector<double> radii;
  static MaximalConfig dyadic(const Grid& grid);
};

// Mf(x) = max over radii of the quadrature average of |f| over
// B(x, r) ∩ grid (closed Euclidean balls, discrete measure).
GridFunction hl_maximal(const GridFunction& f, const MaximalConfig& cfg);

enum class PeetreOrder { star, star_star };

// phi*_{j,s} f(x)  = sup_t |phi_j(H) f(t)| / (1 + 2^{j/2} |x-t|)^s
// phi**_{j,s} f(x) = same with |grad phi_j(H) f| in the numerator
// (gradient by 4th-order differences); suprema run over grid nodes.
GridFunction peetre_maximal(const DyadicSystem& system,
                            const EigenDecomposition& ed, int j, double s,
                            const GridFunction& f, PeetreOrder order);

// Reusable damped-sup evaluator for a fixed (j, s): precomputes the damping
// matrix once and serves many band functions (corpus loops).
class PeetreEvaluator {
 public:
  PeetreEvaluator(const GridPtr& grid, int j, double s);

  // u must be the band function phi_j(H) f (star) or its gradient
  // magnitude (star_star).
  GridFunction eval(const GridFunction& u) const;

 private:
  GridPtr grid_;
  std::vector<double> damping_;  // (1 + 2^{j/2} |x-t|)^{-s}, row-major in x
};

}  // namespace specband
