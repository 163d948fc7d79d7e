#include "rissec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rissec/mellin.hpp"
#include "rissec/quadrature.hpp"

namespace rissec {

namespace {
constexpr double kLn2 = 0.69314718055994530942;

// Upper integration limit covering the Gamma(shape,1) weight plus algebraic
// growth of the companion factor: tail mass falls below ~1e-22.
double gamma_weight_limit(double shape_eff) {
  const double s = std::max(shape_eff, 1.0);
  return s + 50.0 * std::sqrt(s) + 60.0;
}

// Int_0^inf extra(u) u^apow e^{-u} du / e^{lgnorm} with the substitution
// u = v^q. q is chosen so the endpoint exponent q(apow+1)-1 stays >= 1;
// fractional powers at the origin otherwise stall the panel refinement.
QuadResult gamma_weighted_integral(const std::function<double(double)>& extra, double apow,
                                   double lgnorm, double shape_eff, double rel_tol) {
  int q = 4;
  if (apow < -0.5) q = 2 * static_cast<int>(std::ceil(1.0 / (apow + 1.0))) + 2;
  const double p = q * (apow + 1.0) - 1.0;
  const double vmax = std::pow(gamma_weight_limit(shape_eff), 1.0 / q);
  auto f = [&, q, p](double v) {
    if (v <= 0.0) return 0.0;
    const double u = std::pow(v, q);
    const double lw = p * std::log(v) + std::log(static_cast<double>(q)) - u - lgnorm;
    return extra(u) * std::exp(lw);
  };
  QuadControl ctl;
  ctl.rel_tol = rel_tol;
  return integrate(f, 0.0, vmax, ctl);
}
} // namespace

double SecrecyConfig::rate_threshold() const { return std::exp(rate_nats); }
double SecrecyConfig::rate_threshold_excess() const { return std::expm1(rate_nats); }

void SecrecyConfig::validate() const {
  if (rate_nats < 0.0) throw std::domain_error("SecrecyConfig: rate_nats >= 0 required");
  if (!(main.a > -1.0) || !(eve.a > -1.0))
    throw std::domain_error("SecrecyConfig: shape offsets must exceed -1");
  if (!(main.b > 0.0) || !(eve.b > 0.0))
    throw std::domain_error("SecrecyConfig: scales must be positive");
  if (!(main.avg_snr > 0.0) || !(eve.avg_snr > 0.0))
    throw std::domain_error("SecrecyConfig: average SNRs must be positive");
}

double secrecy_capacity(double gamma_b, double gamma_e) {
  if (gamma_b < 0.0 || gamma_e < 0.0)
    throw std::domain_error("secrecy_capacity: SNRs must be nonnegative");
  return std::max(std::log1p(gamma_b) - std::log1p(gamma_e), 0.0);
}

// ---------------------------------------------------------------------------
// Quadrature oracles. Substituting u = sqrt(gammaE/gbar_E)/b' turns the Eve
// density into a Gamma(a'+1,1) weight: gammaE = b'^2 gbar_E u^2.
// ---------------------------------------------------------------------------

ValueWithError sop_quadrature(const SecrecyConfig& cfg) {
  cfg.validate();
  const double a = cfg.main.a, ap = cfg.eve.a;
  const double rt = cfg.rate_threshold(), rbt = cfg.rate_threshold_excess();
  const double c = cfg.eve.b * cfg.eve.b * cfg.eve.avg_snr * rt;
  const double sb = cfg.main.b * std::sqrt(cfg.main.avg_snr);
  auto extra = [&](double u) {
    return regularized_lower_gamma(a + 1.0, std::sqrt(c * u * u + rbt) / sb);
  };
  const QuadResult r = gamma_weighted_integral(extra, ap, log_gamma_real(ap + 1.0),
                                               a + ap + 2.0, 1e-11);
  return {r.value, r.error};
}

AscParts asc_quadrature(const SecrecyConfig& cfg) {
  cfg.validate();
  const double a = cfg.main.a, ap = cfg.eve.a;
  const double sb = cfg.main.b * std::sqrt(cfg.main.avg_snr);
  const double se = cfg.eve.b * std::sqrt(cfg.eve.avg_snr);
  const double lga = log_gamma_real(a + 1.0), lgap = log_gamma_real(ap + 1.0);

  auto log_term = [](double s, double u) { return std::log1p(s * s * u * u) / kLn2; };
  auto f1 = [&](double u) {
    return log_term(sb, u) * regularized_lower_gamma(ap + 1.0, u * sb / se);
  };
  auto f2 = [&](double u) {
    return log_term(se, u) * regularized_lower_gamma(a + 1.0, u * se / sb);
  };
  auto f3 = [&](double u) { return log_term(se, u); };

  AscParts out;
  const QuadResult r1 = gamma_weighted_integral(f1, a, lga, a + 1.0, 1e-11);
  const QuadResult r2 = gamma_weighted_integral(f2, ap, lgap, ap + 1.0, 1e-11);
  const QuadResult r3 = gamma_weighted_integral(f3, ap, lgap, ap + 1.0, 1e-11);
  out.i1 = r1.value;
  out.i2 = r2.value;
  out.i3 = r3.value;
  out.total = out.i1 + out.i2 - out.i3;
  out.error = r1.error + r2.error + r3.error;
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms via the Mellin-Barnes engine.
// ---------------------------------------------------------------------------

namespace {

// SOP double integrand (normative form):
//   X^zeta Y^s G(zeta/2+s-1) G(a+1+zeta)G(-zeta)/(G(zeta/2)G(1-zeta))
//             G(1-s) G(2s+a'-1)
// X = b sqrt(gbarB)/sqrt(Rbar_t), Y = b'^2 R_t gbarE / Rbar_t,
// s-window ((1-a')/2, 1), zeta-window (-(a+1), 0).
BivariateFoxHSpec sop_spec(const SecrecyConfig& cfg) {
  const double a = cfg.main.a, ap = cfg.eve.a;
  const double rt = cfg.rate_threshold(), rbt = cfg.rate_threshold_excess();
  BivariateFoxHSpec spec;
  spec.joint.push_back({-1.0, 1.0, 0.5, true});
  spec.group_s.upper = {{1.0, -1.0}, {ap - 1.0, 2.0}};
  spec.group_z.upper = {{a + 1.0, 1.0}, {0.0, -1.0}};
  spec.group_z.lower = {{0.0, 0.5}, {1.0, -1.0}};
  spec.arg_s = cfg.eve.b * cfg.eve.b * rt * cfg.eve.avg_snr / rbt;
  spec.arg_z = cfg.main.b * std::sqrt(cfg.main.avg_snr) / std::sqrt(rbt);
  spec.window_s_lo = 0.5 * (1.0 - ap);
  spec.window_s_hi = 1.0;
  spec.window_z_lo = -(a + 1.0);
  spec.window_z_hi = 0.0;
  return spec;
}

// Deterministic retry ladder around a preferred abscissa when the strict
// margin checks reject it.
template <typename Eval>
EvalResult eval_with_nudge(Eval&& eval, double preferred, double lo, double hi) {
  const double step = 0.21;
  for (int i = 0; i <= 10; ++i) {
    for (double sgn : {1.0, -1.0}) {
      if (i == 0 && sgn < 0.0) continue;
      const double nu = preferred + sgn * i * step;
      if (!(nu > lo && nu < hi)) continue;
      try {
        return eval(nu);
      } catch (const ContourError&) {
        continue;
      }
    }
  }
  throw ContourError("eval_with_nudge: no admissible abscissa near " +
                     std::to_string(preferred));
}

} // namespace

ValueWithError sop_exact(const SecrecyConfig& cfg) {
  cfg.validate();
  if (cfg.rate_nats == 0.0) {
    // Rbar_t = 0 collapses the Mellin kernel (X diverges); the defining
    // integral is still perfectly behaved, so delegate to it.
    return sop_quadrature(cfg);
  }
  const double a = cfg.main.a, ap = cfg.eve.a;
  const BivariateFoxHSpec spec = sop_spec(cfg);

  // s-abscissa: inside ((1-a')/2, 1), biased toward 1 when the window is deep.
  const double lo_s = spec.window_s_lo;
  const double nu_s = std::max(lo_s + 0.35 * (1.0 - lo_s), 0.6);
  // zeta-abscissa: balance the X^zeta magnitude so every piece of the
  // straight-contour + residue-correction decomposition is of the order of
  // the result (deep-tail relative accuracy).
  const double lnx = std::log(spec.arg_z);
  const double base =
      std::clamp(-2.0 * lnx, spec.window_z_lo + 0.3, spec.window_z_hi - 0.3);

  EvalResult r = eval_with_nudge(
      [&](double nu_z) {
        ContourSpec cs, cz;
        cs.abscissa = nu_s;
        cs.tolerance = cz.tolerance = 1e-9;
        cz.abscissa = nu_z;
        return eval_bivariate_fox_h(spec, cs, cz);
      },
      base, spec.window_z_lo, spec.window_z_hi);

  const double prefactor =
      std::exp(-log_gamma_real(ap + 1.0) - log_gamma_real(a + 1.0)) / spec.arg_s;
  double value = prefactor * r.value;
  const double err = prefactor * r.error;

  const double slack = std::max(err, 1e-9);
  if (value < -slack || value > 1.0 + slack)
    throw NumericError("sop_exact: result " + std::to_string(value) +
                       " outside [0,1] beyond the error estimate");
  value = std::clamp(value, 0.0, 1.0);
  return {value, err};
}

double sop_asymptotic(const SecrecyConfig& cfg) {
  cfg.validate();
  const double a = cfg.main.a, ap = cfg.eve.a;
  const double rt = cfg.rate_threshold(), rbt = cfg.rate_threshold_excess();
  const double p = 0.5 * (a + 1.0);
  const double c = cfg.eve.b * cfg.eve.b * cfg.eve.avg_snr * rt;
  auto extra = [&](double u) { return std::pow(c * u * u + rbt, p); };
  const double moment =
      gamma_weighted_integral(extra, ap, log_gamma_real(ap + 1.0), a + ap + 2.0, 1e-12)
          .value;
  const double sb2 = cfg.main.b * cfg.main.b * cfg.main.avg_snr;
  return moment * std::exp(-log_gamma_real(a + 2.0) - p * std::log(sb2));
}

// ---------------------------------------------------------------------------
// ASC closed form. I1 (and I2 with roles swapped) is the double contour
// integral
//   (b^2 gbarB)^s (b sqrt(gbarB)/(b' sqrt(gbarE)))^zeta
//   G(1-s)G(s)^2/G(1+s) G(a'+1-zeta)G(zeta)/G(1+zeta) G(1+a+2s+zeta)
//   / (G(a+1) G(a'+1) ln 2),
// s-window (0,1), zeta-window (0, a'+1); no wrong-side sheets exist there.
// I3 is the univariate integral of G(s)G(1-s)G(a'+1-2s)/s (b'^2 gbarE)^{-s}
// on (-1, 0).
// ---------------------------------------------------------------------------

namespace {

struct Law {
  double a, b, gbar;
};

BivariateFoxHSpec asc_term_spec(const Law& x, const Law& y) {
  BivariateFoxHSpec spec;
  spec.joint.push_back({1.0 + x.a, 2.0, 1.0, true});
  spec.group_s.upper = {{1.0, -1.0}, {0.0, 1.0}, {0.0, 1.0}};
  spec.group_s.lower = {{1.0, 1.0}};
  spec.group_z.upper = {{y.a + 1.0, -1.0}, {0.0, 1.0}};
  spec.group_z.lower = {{1.0, 1.0}};
  spec.arg_s = x.b * x.b * x.gbar;
  spec.arg_z = x.b * std::sqrt(x.gbar) / (y.b * std::sqrt(y.gbar));
  spec.window_s_lo = 0.0;
  spec.window_s_hi = 1.0;
  spec.window_z_lo = 0.0;
  spec.window_z_hi = y.a + 1.0;
  return spec;
}

EvalResult asc_term(const Law& x, const Law& y) {
  const BivariateFoxHSpec spec = asc_term_spec(x, y);
  ContourSpec cs, cz;
  cs.abscissa = 0.5;
  cs.tolerance = cz.tolerance = 1e-10;
  EvalResult r = eval_with_nudge(
      [&](double nu_z) {
        ContourSpec czz = cz;
        czz.abscissa = nu_z;
        return eval_bivariate_fox_h(spec, cs, czz);
      },
      std::min(0.5, 0.5 * (y.a + 1.0)), spec.window_z_lo, spec.window_z_hi);
  const double norm =
      std::exp(-log_gamma_real(x.a + 1.0) - log_gamma_real(y.a + 1.0)) / kLn2;
  return {r.value * norm, r.error * norm};
}

EvalResult asc_i3(const Law& y) {
  FoxHSpec spec;
  spec.factors.upper = {{0.0, 1.0}, {0.0, 1.0}, {1.0, -1.0}, {y.a + 1.0, -2.0}};
  spec.factors.lower = {{1.0, 1.0}};
  spec.argument = 1.0 / (y.b * y.b * y.gbar);
  spec.window_lo = -1.0;
  spec.window_hi = 0.0;
  ContourSpec c;
  c.abscissa = -0.5;
  c.tolerance = 1e-11;
  EvalResult r = eval_fox_h(spec, c);
  const double norm = std::exp(-log_gamma_real(y.a + 1.0)) / kLn2;
  return {r.value * norm, r.error * norm};
}

} // namespace

AscParts asc_exact(const SecrecyConfig& cfg) {
  cfg.validate();
  const Law bob{cfg.main.a, cfg.main.b, cfg.main.avg_snr};
  const Law eve{cfg.eve.a, cfg.eve.b, cfg.eve.avg_snr};
  const EvalResult i1 = asc_term(bob, eve);
  const EvalResult i2 = asc_term(eve, bob);
  const EvalResult i3 = asc_i3(eve);
  AscParts out;
  out.i1 = i1.value;
  out.i2 = i2.value;
  out.i3 = i3.value;
  out.total = out.i1 + out.i2 - out.i3;
  out.error = i1.error + i2.error + i3.error;
  if (out.total < -std::max(out.error, 1e-9))
    throw NumericError("asc_exact: negative ASC beyond the error estimate");
  out.total = std::max(out.total, 0.0);
  return out;
}

// ---------------------------------------------------------------------------
// Asymptotic ASC: residues of the I1/I2 double integrals at the s-poles
// closest to the contour. s = -(1+a+zeta)/2 (joint pole, weight 1/2) gives a
// (b^2 gbar)^{-(1+a)/2}-damped univariate integral whose integrand has a
// pole ladder zeta = 2k-1-a; it is evaluated in the admissible window that
// minimizes the integrand magnitude. s = 0 is a double pole and carries
// ln(b^2 gbar) + 2 psi(1+a+zeta).
// ---------------------------------------------------------------------------

namespace {

double asym_joint_term(const Law& x, const Law& y) {
  const double aa = x.a, aap = y.a;
  const double lnq = -std::log(y.b * std::sqrt(y.gbar));

  // admissible windows: (0, a'+1) split at the ladder points 2k-1-a
  std::vector<double> cuts{0.0};
  for (int k = static_cast<int>(std::ceil(0.5 * (1.0 + aa) - 1e-12));; ++k) {
    const double zk = 2.0 * k - 1.0 - aa;
    if (zk >= aap + 1.0 - 1e-9) break;
    if (zk > 1e-9) cuts.push_back(zk);
  }
  cuts.push_back(aap + 1.0);

  FoxHSpec spec;
  spec.factors.upper = {{aap + 1.0, -1.0},
                        {0.0, 1.0},
                        {0.5 * (3.0 + aa), 0.5},
                        {-0.5 * (1.0 + aa), -0.5},
                        {-0.5 * (1.0 + aa), -0.5}};
  spec.factors.lower = {{1.0, 1.0}, {0.5 * (1.0 - aa), -0.5}};
  spec.argument = std::exp(lnq);

  auto log_mag = [&](double nu) {
    const cplx z(nu, 0.5); // slightly off-axis keeps lgamma away from real poles
    cplx acc = z * lnq;
    for (const auto& t : spec.factors.upper) acc += log_gamma(cplx(t.c) + t.scale * z);
    for (const auto& t : spec.factors.lower) acc -= log_gamma(cplx(t.c) + t.scale * z);
    return acc.real();
  };
  double best_nu = 0.0, best = 0.0;
  bool have = false;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 0.4) continue;
    const double nu = 0.5 * (cuts[i] + cuts[i + 1]);
    const double m = log_mag(nu);
    if (!have || m < best) {
      best = m;
      best_nu = nu;
      have = true;
    }
  }
  if (!have) throw ContourError("asc_asymptotic: no admissible window for the joint term");

  ContourSpec c;
  c.abscissa = best_nu;
  c.tolerance = 1e-10;
  c.pole_margin = 0.05;
  spec.window_lo = 0.0;
  spec.window_hi = aap + 1.0;
  const EvalResult r = eval_fox_h(spec, c);
  return 0.5 * r.value * std::pow(x.b * x.b * x.gbar, -0.5 * (1.0 + aa)) *
         std::exp(-log_gamma_real(aa + 1.0) - log_gamma_real(aap + 1.0)) / kLn2;
}

double asym_s0_term(const Law& x, const Law& y) {
  const double aa = x.a, aap = y.a;
  const double lnq = std::log(x.b * std::sqrt(x.gbar) / (y.b * std::sqrt(y.gbar)));
  const double lnp = std::log(x.b * x.b * x.gbar);
  const double nu = std::clamp(-2.0 * lnq, 0.5, aap + 0.5);
  auto f = [&](cplx z) {
    const cplx lg = log_gamma(cplx(aap + 1.0) - z) + log_gamma(z) - log_gamma(1.0 + z) +
                    log_gamma(cplx(1.0 + aa) + z) + z * lnq;
    return std::exp(lg) * (lnp + 2.0 * digamma(cplx(1.0 + aa) + z));
  };
  ContourSpec c;
  c.tolerance = 1e-10;
  const EvalResult r = integrate_vertical_line(f, nu, c, true);
  return r.value * std::exp(-log_gamma_real(aa + 1.0) - log_gamma_real(aap + 1.0)) / kLn2;
}

} // namespace

AscAsymptoticTerms asc_asymptotic_terms(const SecrecyConfig& cfg) {
  cfg.validate();
  const Law bob{cfg.main.a, cfg.main.b, cfg.main.avg_snr};
  const Law eve{cfg.eve.a, cfg.eve.b, cfg.eve.avg_snr};
  AscAsymptoticTerms t;
  t.joint_main = asym_joint_term(bob, eve);
  t.log_main = asym_s0_term(bob, eve);
  t.joint_eve = asym_joint_term(eve, bob);
  t.log_eve = asym_s0_term(eve, bob);
  t.i3 = asc_i3(eve).value;
  return t;
}

double asc_asymptotic(const SecrecyConfig& cfg) { return asc_asymptotic_terms(cfg).total(); }

} // namespace rissec
