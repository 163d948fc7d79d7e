#ifndef RISSEC_CHANNEL_HPP
#define RISSEC_CHANNEL_HPP

#include "rissec/philox.hpp"

namespace rissec {

// Per-link Fisher-Snedecor F composite fading: m = multipath severity,
// m_s = shadowing severity (> 1 so the first power moment exists),
// omega = mean channel power (linear).
struct FisherFParams {
  double m = 2.0;
  double m_s = 3.0;
  double omega = 1.0;
  const char* label = "link";

  void validate() const;
};

// Transmit power, receiver noise, and geometry for one end-to-end path.
struct LinkBudget {
  double power_dBm = 30.0;
  double noise_dBm = -40.0;
  double dist_AR_m = 10.0;
  double dist_Rx_m = 10.0;
  double alpha = 3.0;

  void validate() const;
};

// Product-moment building blocks of the end-to-end amplitude W_n = G_n H_n:
//   A = B(m1+1, ms1-1) B(m2+1, ms2-1)
//   B = B(m1+1/2, ms1-1/2) B(m2+1/2, ms2-1/2)
//   C = B(m1, ms1) B(m2, ms2)
//   D = sqrt((ms1-1)(ms2-1) O1 O2 / (m1 m2))
// with E(W_n) = B D / C and Var(W_n) = D^2 (A C - B^2) / C^2.
struct ProductMomentSet {
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
};

struct ProductMoments {
  double mean = 0.0;
  double variance = 0.0;
  ProductMomentSet set;
};

ProductMoments product_moments(const FisherFParams& link1, const FisherFParams& link2);

// Moment-matched Gamma law of the amplitude sum W = sum_{n=1}^{N} W_n:
// Gamma(shape a+1, scale b). The SNR is gamma = avg_snr * W^2.
struct GammaSumApprox {
  double a = 0.0;       // shape offset; shape = a + 1
  double b = 1.0;       // scale
  double avg_snr = 1.0; // linear average SNR (gamma-bar)
};

// (a, b) computed via the product-moment route; the closed-form route in
// (A, B, C, D) is algebraically identical and exposed for cross-checking.
GammaSumApprox moment_match(int n_elements, const FisherFParams& link1,
                            const FisherFParams& link2);
GammaSumApprox moment_match_closed_form(int n_elements, const FisherFParams& link1,
                                        const FisherFParams& link2);

// PDF / CDF of the end-to-end SNR under the Gamma-sum approximation:
//   f(g) = g^{(a-1)/2} / (2 gbar^{(a+1)/2} b^{a+1} Gamma(a+1)) e^{-sqrt(g/gbar)/b}
//   F(g) = P(a+1, sqrt(g/gbar)/b)
double snr_pdf(double gamma, const GammaSumApprox& approx);
double snr_cdf(double gamma, const GammaSumApprox& approx);

// gbar = P / (sigma^2 d_AR^alpha d_Rx^alpha), all in linear units.
double avg_snr(const LinkBudget& budget);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watt(double dbm);

// One draw of the F-distributed channel power Y (so the amplitude is sqrt(Y)),
// via the Gamma-ratio construction Y = omega (m_s - 1)/m * G(m) / G(m_s),
// which reproduces every fractional moment:
//   E[Y^k] = omega^k ((m_s-1)/m)^k G(m+k)G(m_s-k) / (G(m)G(m_s)).
double sample_f_power(const FisherFParams& params, PhiloxStream& rng);

} // namespace rissec

#endif
