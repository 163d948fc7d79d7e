#include "rissec/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rissec/special.hpp"

namespace rissec {

void FisherFParams::validate() const {
  if (!(m > 0.0))
    throw std::domain_error(std::string(label) + ": fading severity m must be > 0");
  if (!(m_s > 1.0))
    throw std::domain_error(std::string(label) +
                            ": shadowing parameter m_s must be > 1 (first moment and the "
                            "Beta factors B(m+1, m_s-1) require it)");
  if (!(omega > 0.0))
    throw std::domain_error(std::string(label) + ": mean power omega must be > 0");
}

void LinkBudget::validate() const {
  if (!(dist_AR_m > 0.0) || !(dist_Rx_m > 0.0))
    throw std::domain_error("LinkBudget: distances must be > 0");
  if (alpha < 0.0) throw std::domain_error("LinkBudget: path-loss exponent must be >= 0");
  if (!std::isfinite(avg_snr(*this)))
    throw std::domain_error("LinkBudget: derived average SNR is not finite");
}

ProductMoments product_moments(const FisherFParams& link1, const FisherFParams& link2) {
  link1.validate();
  link2.validate();
  ProductMoments out;
  auto beta = [](double x, double y) { return std::exp(log_beta(x, y)); };
  out.set.A = beta(link1.m + 1.0, link1.m_s - 1.0) * beta(link2.m + 1.0, link2.m_s - 1.0);
  out.set.B = beta(link1.m + 0.5, link1.m_s - 0.5) * beta(link2.m + 0.5, link2.m_s - 0.5);
  out.set.C = beta(link1.m, link1.m_s) * beta(link2.m, link2.m_s);
  out.set.D = std::sqrt((link1.m_s - 1.0) * (link2.m_s - 1.0) * link1.omega * link2.omega /
                        (link1.m * link2.m));
  out.mean = out.set.B * out.set.D / out.set.C;
  out.variance = out.set.D * out.set.D * (out.set.A * out.set.C - out.set.B * out.set.B) /
                 (out.set.C * out.set.C);
  return out;
}

GammaSumApprox moment_match(int n_elements, const FisherFParams& link1,
                            const FisherFParams& link2) {
  if (n_elements < 1) throw std::domain_error("moment_match: N >= 1 required");
  const ProductMoments pm = product_moments(link1, link2);
  GammaSumApprox g;
  g.a = n_elements * pm.mean * pm.mean / pm.variance - 1.0;
  g.b = pm.variance / pm.mean;
  return g;
}

GammaSumApprox moment_match_closed_form(int n_elements, const FisherFParams& link1,
                                        const FisherFParams& link2) {
  if (n_elements < 1) throw std::domain_error("moment_match: N >= 1 required");
  const ProductMomentSet s = product_moments(link1, link2).set;
  GammaSumApprox g;
  const double gap = s.A * s.C - s.B * s.B; // Lyapunov: > 0 except degenerately
  g.a = ((n_elements + 1) * s.B * s.B - s.A * s.C) / gap;
  g.b = s.D * gap / (s.B * s.C);
  return g;
}

double snr_pdf(double gamma, const GammaSumApprox& approx) {
  if (gamma < 0.0) throw std::domain_error("snr_pdf: gamma >= 0 required");
  if (gamma == 0.0) {
    if (approx.a > 1.0) return 0.0;
    if (approx.a < 1.0) return std::numeric_limits<double>::infinity();
    return std::exp(-std::log(approx.avg_snr) - 2.0 * std::log(approx.b) - std::log(2.0));
  }
  const double a = approx.a, b = approx.b, gbar = approx.avg_snr;
  const double lg = 0.5 * (a - 1.0) * std::log(gamma) - 0.5 * (a + 1.0) * std::log(gbar) -
                    (a + 1.0) * std::log(b) - log_gamma_real(a + 1.0) -
                    std::sqrt(gamma / gbar) / b - std::log(2.0);
  return std::exp(lg);
}

double snr_cdf(double gamma, const GammaSumApprox& approx) {
  if (gamma < 0.0) throw std::domain_error("snr_cdf: gamma >= 0 required");
  return regularized_lower_gamma(approx.a + 1.0,
                                 std::sqrt(gamma / approx.avg_snr) / approx.b);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double avg_snr(const LinkBudget& budget) {
  const double p = dbm_to_watt(budget.power_dBm);
  const double n = dbm_to_watt(budget.noise_dBm);
  return p / (n * std::pow(budget.dist_AR_m, budget.alpha) *
              std::pow(budget.dist_Rx_m, budget.alpha));
}

double sample_f_power(const FisherFParams& params, PhiloxStream& rng) {
  const double g1 = rng.gamma(params.m);
  const double g2 = rng.gamma(params.m_s);
  return params.omega * (params.m_s - 1.0) / params.m * g1 / g2;
}

} // namespace rissec
