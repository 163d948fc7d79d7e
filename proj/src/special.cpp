#include "rissec/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rissec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2Pi = 1.8378770664093454836; // ln(2*pi)

// Lanczos g=7, n=9 coefficients (Godfrey/Pugh set).
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re(z) >= 0.5 via the Lanczos series in log form.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return 0.5 * kLn2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Branch-stable log(sin(pi z)) for Im(z) != 0, continuous off the real axis
// and matching ln(sin(pi x)) in the real limit. Uses
//   sin(pi z) = -e^{i pi z} (e^{-2 i pi z} - 1) / (2i)    for Im z < 0,
// and the conjugate form above the axis, so the exp argument always decays.
cplx log_sin_pi(cplx z) {
  const cplx ipi(0.0, kPi);
  if (z.imag() >= 0.0) {
    // |e^{2 i pi z}| = e^{-2 pi Im z} <= 1
    cplx w = std::exp(2.0 * ipi * z);
    return cplx(0.0, kPi / 2.0) - std::log(cplx(2.0)) - ipi * z + std::log(1.0 - w);
  }
  cplx w = std::exp(-2.0 * ipi * z);
  return cplx(0.0, -kPi / 2.0) - std::log(cplx(2.0)) + ipi * z + std::log(1.0 - w);
}

} // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole at z = " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Reflection: log Gamma(z) = ln pi - log sin(pi z) - log Gamma(1 - z).
  return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cplx digamma(cplx z) {
  if (z.real() <= 0.0)
    throw std::domain_error("digamma: Re(z) > 0 required");
  cplx acc = 0.0;
  while (std::abs(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // DLMF 5.11.2
  const double b[6] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  cplx inv2 = 1.0 / (z * z);
  cplx sum = 0.0, p = inv2;
  for (int n = 0; n < 6; ++n) {
    sum += b[n] / (2.0 * (n + 1)) * p;
    p *= inv2;
  }
  return acc + std::log(z) - 0.5 / z - sum;
}

double log_gamma_real(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma_real: x > 0 required");
  // lgamma_r: std::lgamma writes the global signgam, racing across threads
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_beta(double x, double y) {
  return log_gamma_real(x) + log_gamma_real(y) - log_gamma_real(x + y);
}

double regularized_lower_gamma(double shape, double x) {
  if (!(shape > 0.0)) throw std::domain_error("regularized_lower_gamma: shape > 0 required");
  if (x < 0.0) throw std::domain_error("regularized_lower_gamma: x >= 0 required");
  if (x == 0.0) return 0.0;

  const double lpre = shape * std::log(x) - x - log_gamma_real(shape);
  if (x < shape + 1.0) {
    // series: P = x^a e^{-x} / Gamma(a+1) * sum x^n / ((a+1)...(a+n))
    double ap = shape, term = 1.0 / shape, sum = term;
    for (int n = 0; n < 1000; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    return std::exp(lpre) * sum;
  }
  // Lentz continued fraction for Q, P = 1 - Q
  const double tiny = 1e-300;
  double b = x + 1.0 - shape, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 1000; ++i) {
    double an = -i * (i - shape);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  double q = std::exp(lpre) * h;
  double p = 1.0 - q;
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

} // namespace rissec
