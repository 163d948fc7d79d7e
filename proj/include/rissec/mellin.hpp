#ifndef RISSEC_MELLIN_HPP
#define RISSEC_MELLIN_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rissec/special.hpp"

namespace rissec {

// ---------------------------------------------------------------------------
// Errors. Every numerical-engine failure is one of these, so callers can tell
// a misplaced contour from a non-decaying integrand from plain non-convergence.
// ---------------------------------------------------------------------------
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContourError : NumericError {
  using NumericError::NumericError;
};
struct DecayError : NumericError {
  using NumericError::NumericError;
};
struct ConvergenceError : NumericError {
  using NumericError::NumericError;
};

// ---------------------------------------------------------------------------
// Gamma-factor bookkeeping.
//
// A GammaTerm is Gamma(c + scale*u) of one contour variable u; a
// GammaFactorGroup is prod(upper)/prod(lower). The admissible abscissa window
// (which poles sit left vs right of the contour) is data, not inferable from
// the terms alone: Mellin-Barnes blocks like Gamma(u)^2/Gamma(1+u) place the
// pole at 0 on one side and -1,-2,... on the other.
// ---------------------------------------------------------------------------
struct GammaTerm {
  double c;
  double scale;
};

struct GammaFactorGroup {
  std::vector<GammaTerm> upper;
  std::vector<GammaTerm> lower;
};

// Numerical contour placement and truncation controls for one vertical line.
struct ContourSpec {
  // Real part of the line. NaN = choose automatically (midpoint of the spec's
  // admissible window).
  double abscissa = std::numeric_limits<double>::quiet_NaN();
  // Truncation |Im| <= half_height. 0 = extend until the integrand falls
  // below decay_cutoff relative to its running peak.
  double half_height = 0.0;
  // Fixed node count per line (single pass). 0 = adaptive step refinement.
  int nodes = 0;
  // Refinement target: stop when successive step halvings agree to this
  // relative tolerance.
  double tolerance = 1e-9;
  // Minimum allowed distance from the abscissa to any pole line.
  double pole_margin = 0.1;
  // Tail cutoff relative to the integrand peak.
  double decay_cutoff = 1e-16;
};

struct EvalResult {
  double value = 0.0;
  double error = 0.0; // estimated absolute error (refinement delta + tails + roundoff mass)
};

// ---------------------------------------------------------------------------
// Univariate spec:  (1/2*pi*j) Int prod Gamma(c + A u) / ... * argument^u du
// over the vertical line Re u = abscissa, which must lie inside
// (window_lo, window_hi).
// ---------------------------------------------------------------------------
struct FoxHSpec {
  GammaFactorGroup factors;
  double argument = 1.0;
  double window_lo = -std::numeric_limits<double>::infinity();
  double window_hi = std::numeric_limits<double>::infinity();

  // Classical H^{m,n}_{p,q}(z | (a_j,A_j); (b_j,B_j)) with integrand
  //   prod_{j<=m} G(b_j+B_j u) prod_{j<=n} G(1-a_j-A_j u)
  //   / [prod_{j>m} G(1-b_j-B_j u) prod_{j>n} G(a_j+A_j u)] * z^{-u},
  // contour window (max_j(-b_j/B_j), min_j((1-a_j)/A_j)). Meijer G is the
  // all-unit-scale case.
  static FoxHSpec classical(int m, int n,
                            const std::vector<GammaTerm>& upper_params,
                            const std::vector<GammaTerm>& lower_params, double z);
};

EvalResult eval_fox_h(const FoxHSpec& spec, const ContourSpec& contour = {});

// ---------------------------------------------------------------------------
// Bivariate spec: joint terms Gamma(c + A s + B z) mixing both variables,
// plus pure-s and pure-z groups, with integrand
//   arg_s^s * arg_z^z * [gammas],  (1/2*pi*j)^2 double integral,
// s on Re s = abscissa_s in (window_s_*), z likewise.
//
// Straight tensor contours cannot always separate the joint factor's pole
// sheets from the s-contour; each wrong-side sheet contributes an automatic
// residue-correction term (a univariate Mellin-Barnes integral along the
// z-line). Supported for specs with at most one upper joint factor needing
// corrections.
// ---------------------------------------------------------------------------
struct JointGammaTerm {
  double c;
  double scale_s;
  double scale_z;
  bool upper = true;
};

struct BivariateFoxHSpec {
  std::vector<JointGammaTerm> joint;
  GammaFactorGroup group_s;
  GammaFactorGroup group_z;
  double arg_s = 1.0;
  double arg_z = 1.0;
  double window_s_lo = -std::numeric_limits<double>::infinity();
  double window_s_hi = std::numeric_limits<double>::infinity();
  double window_z_lo = -std::numeric_limits<double>::infinity();
  double window_z_hi = std::numeric_limits<double>::infinity();
};

EvalResult eval_bivariate_fox_h(const BivariateFoxHSpec& spec,
                                const ContourSpec& contour_s = {},
                                const ContourSpec& contour_z = {});

// Vertical-line integral (1/2*pi) Int f(nu + j t) dt of a caller-supplied
// integrand. conjugate_symmetric means f(conj u) == conj(f(u)), halving the
// work and forcing a real result. Building block for eval_fox_h and for the
// residue terms of the asymptotic secrecy expressions.
EvalResult integrate_vertical_line(const std::function<cplx(cplx)>& f, double nu,
                                   const ContourSpec& contour, bool conjugate_symmetric);

// Diagnostic sample dump (CSV: im_s,im_zeta,re_integrand,im_integrand).
void dump_integrand_csv(const FoxHSpec& spec, const ContourSpec& contour, std::ostream& os);
void dump_integrand_csv(const BivariateFoxHSpec& spec, const ContourSpec& contour_s,
                        const ContourSpec& contour_z, std::ostream& os);

} // namespace rissec

#endif
