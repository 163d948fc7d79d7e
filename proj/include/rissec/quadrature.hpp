#ifndef RISSEC_QUADRATURE_HPP
#define RISSEC_QUADRATURE_HPP

#include <functional>

namespace rissec {

struct QuadResult {
  double value = 0.0;
  double error = 0.0; // estimated absolute error
  int evaluations = 0;
};

struct QuadControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300; // pure relative control by default
  int max_depth = 48;
};

// Adaptive Gauss-Legendre (12-point panels, bisection on disagreement).
// Throws ConvergenceError (see mellin.hpp) if the depth limit is exhausted
// before the tolerance is met.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadControl& ctl = {});

// Integral over [0, inf) by dyadic panels [0,1],[1,2],[2,4],... stopping once
// a panel contributes below the tolerance relative to the running total.
QuadResult integrate_to_inf(const std::function<double(double)>& f,
                            const QuadControl& ctl = {});

} // namespace rissec

#endif
