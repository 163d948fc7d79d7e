#include "rissec/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rissec/secrecy.hpp"

namespace rissec {

void Scenario::validate() const {
  if (n_elements < 1) throw std::domain_error("Scenario: n_elements >= 1 required");
  if (trials < 1) throw std::domain_error("Scenario: trials >= 1 required");
  if (rate_nats < 0.0) throw std::domain_error("Scenario: rate_nats >= 0 required");
  params_AR.validate();
  params_RB.validate();
  params_RE.validate();
  budget_B.validate();
  budget_E.validate();
}

namespace {

// Fixed draw order per trial: Bob's N (g, h) pairs, Eve's N k draws, then the
// mode-dependent extras (Eve's own g redraws, Eve phases). Changing the order
// changes every sample, so it is part of the reproducibility contract.
void run_trial(const Scenario& sc, std::uint64_t trial, double& gb, double& ge) {
  PhiloxStream rng(sc.seed, trial);
  const int n = sc.n_elements;
  double sum_b = 0.0;
  std::vector<double> g(static_cast<size_t>(n));
  std::vector<double> k(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<size_t>(i)] = std::sqrt(sample_f_power(sc.params_AR, rng));
    const double h = std::sqrt(sample_f_power(sc.params_RB, rng));
    sum_b += g[static_cast<size_t>(i)] * h;
  }
  for (int i = 0; i < n; ++i)
    k[static_cast<size_t>(i)] = std::sqrt(sample_f_power(sc.params_RE, rng));
  if (sc.g_mode == GMode::independent)
    for (auto& gi : g) gi = std::sqrt(sample_f_power(sc.params_AR, rng));

  const double gbar_b = avg_snr(sc.budget_B);
  const double gbar_e = avg_snr(sc.budget_E);
  gb = gbar_b * sum_b * sum_b;

  if (sc.eve_mode == EveMode::coherent) {
    double sum_e = 0.0;
    for (int i = 0; i < n; ++i) sum_e += g[static_cast<size_t>(i)] * k[static_cast<size_t>(i)];
    ge = gbar_e * sum_e * sum_e;
  } else {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = 6.28318530717958647692 * rng.uniform();
      const double amp = g[static_cast<size_t>(i)] * k[static_cast<size_t>(i)];
      re += amp * std::cos(w);
      im += amp * std::sin(w);
    }
    ge = gbar_e * (re * re + im * im);
  }
}

} // namespace

SampleSet simulate(const Scenario& scenario, unsigned threads) {
  scenario.validate();
  SampleSet out;
  out.gbar_b = avg_snr(scenario.budget_B);
  out.gbar_e = avg_snr(scenario.budget_E);
  out.rate_nats = scenario.rate_nats;
  out.seed = scenario.seed;
  out.gamma_b.resize(scenario.trials);
  out.gamma_e.resize(scenario.trials);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(scenario.trials / 4096, 1)));

  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t t = lo; t < hi; ++t)
      run_trial(scenario, t, out.gamma_b[t], out.gamma_e[t]);
  };
  if (threads <= 1) {
    worker(0, scenario.trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (scenario.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, scenario.trials);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

Estimate empirical_sop(const SampleSet& samples, double rate_nats) {
  const std::size_t n = samples.gamma_b.size();
  if (n == 0) throw std::domain_error("empirical_sop: empty sample set");
  std::uint64_t outages = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (secrecy_capacity(samples.gamma_b[i], samples.gamma_e[i]) <= rate_nats) ++outages;
  const double p = static_cast<double>(outages) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

Estimate empirical_asc(const SampleSet& samples) {
  const std::size_t n = samples.gamma_b.size();
  if (n == 0) throw std::domain_error("empirical_asc: empty sample set");
  constexpr double kLn2 = 0.69314718055994530942;
  std::vector<double> cs(n), cs2(n);
  for (std::size_t i = 0; i < n; ++i) {
    cs[i] = secrecy_capacity(samples.gamma_b[i], samples.gamma_e[i]) / kLn2;
    cs2[i] = cs[i] * cs[i];
  }
  const double mean = pairwise_sum(cs.data(), n) / static_cast<double>(n);
  const double m2 = pairwise_sum(cs2.data(), n) / static_cast<double>(n);
  const double var = std::max(m2 - mean * mean, 0.0);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples,
                                    const std::vector<double>& grid, double confidence) {
  if (samples.empty()) throw std::domain_error("empirical_cdf: empty sample set");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::domain_error("empirical_cdf: confidence in (0,1) required");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  const double eps = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * n));
  std::vector<CdfPoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    const double f = static_cast<double>(it - samples.begin()) / n;
    out.push_back({x, f, std::max(f - eps, 0.0), std::min(f + eps, 1.0)});
  }
  return out;
}

double cdf_sup_distance(std::vector<double> samples,
                        const std::function<double(double)>& reference_cdf) {
  if (samples.empty()) throw std::domain_error("cdf_sup_distance: empty sample set");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double ref = reference_cdf(samples[i]);
    const double hi = static_cast<double>(i + 1) / n;
    const double lo = static_cast<double>(i) / n;
    sup = std::max({sup, std::fabs(hi - ref), std::fabs(ref - lo)});
  }
  return sup;
}

void export_samples_csv(const SampleSet& samples, std::ostream& os) {
  os << "trial,gamma_b,gamma_e,c_s_nats\n";
  char buf[160];
  for (std::size_t i = 0; i < samples.gamma_b.size(); ++i) {
    const double cs = secrecy_capacity(samples.gamma_b[i], samples.gamma_e[i]);
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, samples.gamma_b[i],
                  samples.gamma_e[i], cs);
    os << buf;
  }
}

} // namespace rissec
