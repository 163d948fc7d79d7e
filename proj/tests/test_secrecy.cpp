#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rissec/mellin.hpp"

#include "rissec/philox.hpp"
#include "rissec/quadrature.hpp"
#include "rissec/secrecy.hpp"
#include "rissec/special.hpp"

using namespace rissec;

namespace {

// reference settings: N = 6, (m_s, m) = (3, 2), gbar_E = -10 dB, R_s = 1 nat
SecrecyConfig ref_config(double gb_db, double ge_db = -10.0, int n = 6, double m = 2.0) {
  const FisherFParams link{m, 3.0, 1.0, "link"};
  SecrecyConfig cfg;
  cfg.rate_nats = 1.0;
  cfg.main = moment_match(n, link, link);
  cfg.main.avg_snr = db_to_linear(gb_db);
  cfg.eve = moment_match(n, link, link);
  cfg.eve.avg_snr = db_to_linear(ge_db);
  return cfg;
}

// no-eavesdropper capacity E[log2(1 + gammaB)] by quadrature
double mean_log_capacity(const GammaSumApprox& law) {
  const double s = law.b * std::sqrt(law.avg_snr);
  const double lg = log_gamma_real(law.a + 1.0);
  auto f = [&](double u) {
    return std::log1p(s * s * u * u) / 0.69314718055994530942 *
           std::exp(law.a * std::log(u) - u - lg);
  };
  return integrate(f, 0.0, law.a + 60.0 * std::sqrt(law.a + 1.0) + 60.0).value;
}

} // namespace

TEST_CASE("secrecy capacity basics") {
  for (double x : {0.0, 0.4, 7.0}) CHECK(secrecy_capacity(x, x) == 0.0);
  CHECK(secrecy_capacity(std::exp(1.0) - 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(secrecy_capacity(0.0, 5.0) == 0.0);
  CHECK_THROWS_AS(secrecy_capacity(-1.0, 0.0), std::domain_error);
}

TEST_CASE("sop quadrature: iid symmetric zero-rate gives 1/2") {
  SecrecyConfig cfg = ref_config(3.0, 3.0);
  cfg.rate_nats = 0.0;
  CHECK(sop_quadrature(cfg).value == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("sop quadrature: vanishing main channel forces outage") {
  SecrecyConfig cfg = ref_config(-120.0);
  CHECK(sop_quadrature(cfg).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sop quadrature: frozen references at the default settings") {
  CHECK(sop_quadrature(ref_config(-10.0)).value ==
        doctest::Approx(0.95115766859986305).epsilon(1e-10));
  CHECK(sop_quadrature(ref_config(0.0)).value ==
        doctest::Approx(0.12017019448375787).epsilon(1e-10));
  CHECK(sop_quadrature(ref_config(10.0)).value ==
        doctest::Approx(0.00021129252990639259).epsilon(1e-10));
  CHECK(sop_quadrature(ref_config(20.0)).value ==
        doctest::Approx(2.4257290687295319e-8).epsilon(1e-10));
  CHECK(sop_quadrature(ref_config(40.0)).value ==
        doctest::Approx(2.2589642024869201e-17).epsilon(1e-10));
  CHECK(sop_quadrature(ref_config(70.0)).value ==
        doctest::Approx(2.2067147221102454e-31).epsilon(1e-10));
}

TEST_CASE("sop exact tracks the quadrature oracle over 90 dB") {
  for (double gb : {-10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 30.0, 40.0, 55.0, 70.0, 80.0}) {
    const SecrecyConfig cfg = ref_config(gb);
    const auto e = sop_exact(cfg);
    const auto q = sop_quadrature(cfg);
    CAPTURE(gb);
    CHECK(std::fabs(e.value - q.value) <=
          std::max(1e-6 * q.value, 2.0 * (e.error + q.error)));
  }
}

TEST_CASE("sop exact: monotone in gbar_B, N, rate, gbar_E") {
  double prev = 2.0;
  for (double gb = -10.0; gb <= 40.0; gb += 5.0) {
    const double v = sop_exact(ref_config(gb)).value;
    CHECK(v < prev);
    prev = v;
  }
  // ordered in N at fixed budgets
  const double n2 = sop_exact(ref_config(10.0, -10.0, 2)).value;
  const double n4 = sop_exact(ref_config(10.0, -10.0, 4)).value;
  const double n6 = sop_exact(ref_config(10.0, -10.0, 6)).value;
  CHECK(n2 > n4);
  CHECK(n4 > n6);
  // nondecreasing in the target rate and in gbar_E
  SecrecyConfig lo = ref_config(5.0);
  SecrecyConfig hi = lo;
  hi.rate_nats = 1.5;
  CHECK(sop_exact(hi).value > sop_exact(lo).value);
  CHECK(sop_exact(ref_config(5.0, -5.0)).value > sop_exact(ref_config(5.0, -10.0)).value);
}

TEST_CASE("sop exact: zero-rate limit delegates to the defining integral") {
  SecrecyConfig cfg = ref_config(3.0, 3.0);
  cfg.rate_nats = 0.0;
  CHECK(sop_exact(cfg).value == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("sop asymptotic: exact power law and convergence to exact") {
  const SecrecyConfig cfg = ref_config(60.0);
  const double a = cfg.main.a;
  SecrecyConfig cfg2 = cfg;
  cfg2.main.avg_snr *= 2.0;
  const double v1 = sop_asymptotic(cfg);
  const double v2 = sop_asymptotic(cfg2);
  CHECK(v2 / v1 == doctest::Approx(std::pow(2.0, -0.5 * (a + 1.0))).epsilon(1e-12));

  // convergence toward 1 from above: the relative error of the leading term
  // decays like 1/sqrt(gbar_B); 5% is reached near 60 dB at these parameters
  double prev_gap = 1e9;
  for (double gb : {40.0, 50.0, 60.0, 70.0}) {
    const SecrecyConfig c = ref_config(gb);
    const double ratio = sop_asymptotic(c) / sop_exact(c).value;
    CAPTURE(gb);
    const double gap = std::fabs(ratio - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
    if (gb >= 60.0) CHECK(gap < 0.05);
  }

  // fitted log-log slope over [60, 80] dB equals -(a+1)/2 within 1%
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double gb = 60.0; gb <= 80.0; gb += 5.0, ++n) {
    const double x = std::log(db_to_linear(gb));
    const double y = std::log(sop_exact(ref_config(gb)).value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::fabs(slope + 0.5 * (a + 1.0)) < 0.01 * 0.5 * (a + 1.0));
}

TEST_CASE("asc quadrature: symmetry, no-eavesdropper limit, frozen references") {
  const SecrecyConfig sym = ref_config(3.0, 3.0);
  const AscParts p = asc_quadrature(sym);
  CHECK(std::fabs(p.i1 - p.i2) <= 1e-9);

  SecrecyConfig noeve = ref_config(10.0, -140.0);
  const AscParts q = asc_quadrature(noeve);
  CHECK(q.i2 <= 1e-9);
  CHECK(q.i3 <= 1e-6);
  CHECK(q.total == doctest::Approx(mean_log_capacity(noeve.main)).epsilon(1e-6));

  CHECK(asc_quadrature(ref_config(-10.0)).total ==
        doctest::Approx(0.34823706223874195).epsilon(1e-10));
  const AscParts ref10 = asc_quadrature(ref_config(10.0));
  CHECK(ref10.total == doctest::Approx(5.9893094268683149).epsilon(1e-10));
  CHECK(ref10.i1 == doctest::Approx(7.6300390837704421).epsilon(1e-10));
  CHECK(ref10.i3 == doctest::Approx(1.6407399948937018).epsilon(1e-10));
  CHECK(asc_quadrature(ref_config(40.0)).total ==
        doctest::Approx(15.945795693941546).epsilon(1e-10));
}

TEST_CASE("printed Meijer-G form of I3 (duplication identity, 4 b'^2 gbar_E)") {
  // I3 = 2^{a'} / (sqrt(pi) ln2 Gamma(a'+1)) *
  //      (1/2pij) Int G(s)^2 G(1-s) G((a'+1)/2 - s) G((a'+2)/2 - s) / G(1+s)
  //                 (4 b'^2 gbar_E)^{-s} ds,   nu in (-1, 0),
  // equivalent to the scale-2 kernel by Legendre duplication.
  const SecrecyConfig cfg = ref_config(10.0);
  const double ap = cfg.eve.a;
  const double w = 4.0 * cfg.eve.b * cfg.eve.b * cfg.eve.avg_snr;
  FoxHSpec spec;
  spec.factors.upper = {{0.0, 1.0},
                        {0.0, 1.0},
                        {1.0, -1.0},
                        {0.5 * (ap + 1.0), -1.0},
                        {0.5 * (ap + 2.0), -1.0}};
  spec.factors.lower = {{1.0, 1.0}};
  spec.argument = 1.0 / w;
  spec.window_lo = -1.0;
  spec.window_hi = 0.0;
  ContourSpec c;
  c.abscissa = -0.5;
  c.tolerance = 1e-11;
  const auto r = eval_fox_h(spec, c);
  const double pref = std::exp(ap * std::log(2.0) - log_gamma_real(cfg.eve.a + 1.0)) /
                      (std::sqrt(3.14159265358979323846) * 0.69314718055994530942);
  const double i3 = asc_quadrature(cfg).i3;
  CHECK(pref * r.value == doctest::Approx(i3).epsilon(1e-9));
}

TEST_CASE("asc exact tracks the quadrature oracle") {
  for (double gb : {-10.0, 0.0, 10.0, 25.0, 40.0}) {
    const SecrecyConfig cfg = ref_config(gb);
    const AscParts e = asc_exact(cfg);
    const AscParts q = asc_quadrature(cfg);
    CAPTURE(gb);
    CHECK(std::fabs(e.total - q.total) <=
          std::max(1e-5 * q.total, 2.0 * (e.error + q.error)));
  }
  // term-wise: each double-contour term matches its own 1-D quadrature
  const AscParts e = asc_exact(ref_config(10.0));
  const AscParts q = asc_quadrature(ref_config(10.0));
  CHECK(e.i1 == doctest::Approx(q.i1).epsilon(1e-8));
  CHECK(e.i2 == doctest::Approx(q.i2).epsilon(1e-4)); // i2 ~ 1e-5, abs-tiny
  CHECK(e.i3 == doctest::Approx(q.i3).epsilon(1e-9));
  // positive even when gbar_B <= gbar_E
  const AscParts weak = asc_exact(ref_config(-5.0, 10.0));
  CHECK(weak.total > 0.0);
}

TEST_CASE("asc exact: monotone trends and capacity bound") {
  double prev = -1.0;
  for (double gb = -10.0; gb <= 40.0; gb += 10.0) {
    const SecrecyConfig cfg = ref_config(gb);
    const double v = asc_exact(cfg).total;
    CHECK(v > prev);
    prev = v;
    CHECK(v <= mean_log_capacity(cfg.main) + 1e-9);
  }
  CHECK(asc_exact(ref_config(10.0, -5.0)).total < asc_exact(ref_config(10.0, -10.0)).total);
}

TEST_CASE("asc asymptotic: convergence, vanishing terms, pair symmetry") {
  for (double gb : {20.0, 30.0, 40.0}) {
    const SecrecyConfig cfg = ref_config(gb);
    const double asy = asc_asymptotic(cfg);
    const double exact = asc_exact(cfg).total;
    CAPTURE(gb);
    CHECK(std::fabs(asy - exact) / exact < 0.02);
  }
  // damped terms vanish with gbar_B; the log term carries the growth
  const AscAsymptoticTerms t40 = asc_asymptotic_terms(ref_config(40.0));
  const AscAsymptoticTerms t60 = asc_asymptotic_terms(ref_config(60.0));
  CHECK(std::fabs(t60.joint_main) < std::fabs(t40.joint_main) + 1e-300);
  CHECK(std::fabs(t60.joint_eve) < 1e-6);
  CHECK(std::fabs(t60.log_eve) < 1e-6);
  CHECK(t60.log_main > t40.log_main);
  CHECK(std::fabs(t40.joint_main) < 1e-12);
  // relabeling symmetry for a symmetric configuration
  const AscAsymptoticTerms sym = asc_asymptotic_terms(ref_config(3.0, 3.0));
  CHECK(sym.joint_main == doctest::Approx(sym.joint_eve).epsilon(1e-9));
  CHECK(sym.log_main == doctest::Approx(sym.log_eve).epsilon(1e-9));
}

TEST_CASE("oracle equivalence on a randomized parameter sweep") {
  PhiloxStream rng(77, 3);
  int done = 0;
  while (done < 20) {
    const FisherFParams l1{1.0 + 3.0 * rng.uniform(), 1.8 + 3.0 * rng.uniform(), 1.0, "l1"};
    const FisherFParams l2{1.0 + 3.0 * rng.uniform(), 1.8 + 3.0 * rng.uniform(), 1.0, "l2"};
    const FisherFParams l3{1.0 + 3.0 * rng.uniform(), 1.8 + 3.0 * rng.uniform(), 1.0, "l3"};
    const int n = 1 + static_cast<int>(rng.uniform() * 8.0);
    SecrecyConfig cfg;
    cfg.rate_nats = 0.2 + 1.6 * rng.uniform();
    cfg.main = moment_match(n, l1, l2);
    cfg.main.avg_snr = db_to_linear(-10.0 + 45.0 * rng.uniform());
    cfg.eve = moment_match(n, l1, l3);
    cfg.eve.avg_snr = db_to_linear(-15.0 + 25.0 * rng.uniform());
    CAPTURE(done);
    CAPTURE(cfg.main.a);
    CAPTURE(cfg.eve.a);
    CAPTURE(cfg.main.avg_snr);
    CAPTURE(cfg.eve.avg_snr);

    const auto sq = sop_quadrature(cfg);
    const auto se = sop_exact(cfg);
    CHECK(se.value >= 0.0);
    CHECK(se.value <= 1.0);
    CHECK(std::fabs(se.value - sq.value) <=
          std::max(1e-6 * sq.value, 2.0 * (se.error + sq.error)));

    const AscParts ae = asc_exact(cfg);
    const AscParts aq = asc_quadrature(cfg);
    CHECK(ae.total >= 0.0);
    CHECK(std::fabs(ae.total - aq.total) <=
          std::max(1e-5 * aq.total, 2.0 * (ae.error + aq.error)));
    ++done;
  }
}
