#ifndef RISSEC_MC_SIM_HPP
#define RISSEC_MC_SIM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "rissec/channel.hpp"

namespace rissec {

// coherent: Eve sees the phase-aligned sum (gbar_E (sum g k)^2), matching the
// analysis; random_phase samples residual phases uniformly instead.
enum class EveMode { coherent, random_phase };

// independent redraws the Alice-RIS amplitudes for Eve (mirroring the
// analysis, which multiplies the marginal laws of gamma_B and gamma_E);
// shared reuses Bob's draws (the physical model). The gap between the two is
// a modeling choice worth measuring, hence both.
enum class GMode { independent, shared };

struct Scenario {
  int n_elements = 6;
  FisherFParams params_AR{2.0, 3.0, 1.0, "A-RIS"};
  FisherFParams params_RB{2.0, 3.0, 1.0, "RIS-Bob"};
  FisherFParams params_RE{2.0, 3.0, 1.0, "RIS-Eve"};
  LinkBudget budget_B{30.0, -40.0, 10.0, 10.0, 3.0};
  LinkBudget budget_E{30.0, -20.0, 10.0, 10.0, 3.0};
  double rate_nats = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  EveMode eve_mode = EveMode::coherent;
  GMode g_mode = GMode::independent;

  void validate() const;
};

// Per-trial end-to-end SNR draws. Trial t uses the Philox substream
// (seed, t); outputs are bit-identical for a fixed Scenario regardless of
// thread count or trial partition.
struct SampleSet {
  std::vector<double> gamma_b;
  std::vector<double> gamma_e;
  double gbar_b = 1.0;
  double gbar_e = 1.0;
  double rate_nats = 1.0;
  std::uint64_t seed = 0;
};

SampleSet simulate(const Scenario& scenario, unsigned threads = 0);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Fraction of trials with C_s <= rate (binomial standard error).
Estimate empirical_sop(const SampleSet& samples, double rate_nats);

// Mean per-trial secrecy capacity in bits (pairwise summation).
Estimate empirical_asc(const SampleSet& samples);

// Empirical CDF at grid points with a Dvoretzky-Kiefer-Wolfowitz band.
struct CdfPoint {
  double x = 0.0;
  double empirical = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
};
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples,
                                    const std::vector<double>& grid,
                                    double confidence = 0.99);

// Kolmogorov-Smirnov style sup-distance between the empirical CDF of the
// samples and a callable reference CDF.
double cdf_sup_distance(std::vector<double> samples,
                        const std::function<double(double)>& reference_cdf);

// CSV export (columns: trial,gamma_b,gamma_e,c_s_nats).
void export_samples_csv(const SampleSet& samples, std::ostream& os);

// Deterministic pairwise (cascade) sum; order-stable reduction used by the
// estimators.
double pairwise_sum(const double* data, std::size_t n);

} // namespace rissec

#endif
