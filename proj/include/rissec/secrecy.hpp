#ifndef RISSEC_SECRECY_HPP
#define RISSEC_SECRECY_HPP

#include "rissec/channel.hpp"

namespace rissec {

// Everything needed to evaluate secrecy metrics: the target rate and the two
// moment-matched SNR laws. Rates are stored in nats (the capacity definition
// uses ln); ASC values are reported in bits.
struct SecrecyConfig {
  double rate_nats = 1.0;
  GammaSumApprox main; // Bob:  (a, b, gbar_B)
  GammaSumApprox eve;  // Eve:  (a', b', gbar_E)

  double rate_threshold() const;        // R_t = e^{R_s}
  double rate_threshold_excess() const; // Rbar_t = R_t - 1
  void validate() const;
};

// C_s = max(ln(1+gammaB) - ln(1+gammaE), 0), in nats.
double secrecy_capacity(double gamma_b, double gamma_e);

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

// SOP = Int_0^inf F_B(gammaE R_t + Rbar_t) f_E(gammaE) dgammaE by adaptive
// quadrature, relative error ~1e-11. Oracle for sop_exact.
ValueWithError sop_quadrature(const SecrecyConfig& cfg);

// SOP via the bivariate Mellin-Barnes closed form (double contour integral
// with prefactor Rbar_t b'^{-2} / (R_t gbar_E Gamma(a'+1) Gamma(a+1))).
// Must agree with sop_quadrature; disagreement beyond tolerance at the
// call site is a consistency error, overshoot of [0,1] beyond the error
// estimate throws here.
ValueWithError sop_exact(const SecrecyConfig& cfg);

// High-gbar_B leading term: exact power law
//   E[(gammaE R_t + Rbar_t)^{(a+1)/2}] / Gamma(a+2) * (b^2 gbar_B)^{-(a+1)/2};
// decays as gbar_B^{-(a+1)/2} exactly.
double sop_asymptotic(const SecrecyConfig& cfg);

struct AscParts {
  double total = 0.0; // bits
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
  double error = 0.0;
};

// ASC = I1 + I2 - I3 with
//   I1 = Int log2(1+g) f_B(g) F_E(g) dg,  I2 = Int log2(1+g) f_E(g) F_B(g) dg,
//   I3 = Int log2(1+g) f_E(g) dg,
// each by adaptive quadrature. Oracle for asc_exact.
AscParts asc_quadrature(const SecrecyConfig& cfg);

// ASC via two bivariate Mellin-Barnes integrals (I1, I2) and the univariate
// Mellin-Barnes form of I3.
AscParts asc_exact(const SecrecyConfig& cfg);

// Residue-based high-SNR expansion: joint-pole and s=0 residue terms of the
// I1/I2 double integrals minus the exact I3. The s=0 residues are double
// poles, carrying ln(b^2 gbar) + 2 psi(1+a+zeta) weights.
struct AscAsymptoticTerms {
  double joint_main = 0.0; // (b^2 gbarB)^{-(1+a)/2}-damped term of I1
  double log_main = 0.0;   // s=0 double-pole term of I1 (carries the log growth)
  double joint_eve = 0.0;  // mirrored terms of I2
  double log_eve = 0.0;
  double i3 = 0.0;
  double total() const { return joint_main + log_main + joint_eve + log_eve - i3; }
};
AscAsymptoticTerms asc_asymptotic_terms(const SecrecyConfig& cfg);
double asc_asymptotic(const SecrecyConfig& cfg);

} // namespace rissec

#endif
