#ifndef RISSEC_SPECIAL_HPP
#define RISSEC_SPECIAL_HPP

#include <complex>

namespace rissec {

using cplx = std::complex<double>;

// Principal-branch log-gamma, analytic continuation of ln Gamma off the
// negative real axis (Lanczos g=7 on the right half-plane, reflection with a
// branch-stable log-sin on the left). Relative error <= ~1e-13 for |z| <= 1e6.
// Throws std::domain_error at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

// Digamma for Re(z) > 0 (recurrence + asymptotic series).
cplx digamma(cplx z);

// ln Gamma(x), x > 0.
double log_gamma_real(double x);

// ln B(x, y) for x, y > 0.
double log_beta(double x, double y);

// Regularized lower incomplete gamma P(shape, x) = gamma(shape, x)/Gamma(shape).
// Series for x < shape + 1, Lentz continued fraction otherwise.
// Absolute error <= ~1e-14. Throws std::domain_error for shape <= 0 or x < 0.
double regularized_lower_gamma(double shape, double x);

} // namespace rissec

#endif
