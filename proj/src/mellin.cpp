#include "rissec/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace rissec {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kEps = 2.2e-16;
constexpr double kHardCapT = 600.0; // far beyond any gamma-product decay scale in scope
constexpr int kRunBelowCutoff = 12; // consecutive sub-cutoff nodes before truncating
constexpr double kCoarsestStep = 0.2;
constexpr int kMaxLevels = 7;

bool finite(double x) { return std::isfinite(x); }

// Distance from q to the nearest nonpositive integer (the Gamma pole lattice).
double pole_lattice_distance(double q) {
  if (q >= 0.5) return q;
  double lo = std::floor(q), hi = std::min(std::ceil(q), 0.0);
  return std::min(std::fabs(q - lo), std::fabs(q - hi));
}

void check_upper_margin(double q, double scale_mass, double margin, const char* what) {
  if (pole_lattice_distance(q) < margin * std::max(scale_mass, 1.0))
    throw ContourError(std::string(what) +
                       ": contour hits or crowds a pole lattice (gamma argument real part " +
                       std::to_string(q) + ")");
}

cplx log_gamma_group(const GammaFactorGroup& g, cplx u) {
  cplx acc = 0.0;
  for (const auto& t : g.upper) acc += log_gamma(cplx(t.c) + t.scale * u);
  for (const auto& t : g.lower) acc -= log_gamma(cplx(t.c) + t.scale * u);
  return acc;
}

struct LineSum {
  double value = 0.0; // symmetric mode: real by construction
  cplx value_c = 0.0; // full mode
  double mass = 0.0;  // (1/2pi) Int |f| dt
  double tail = 0.0;  // truncation remainder estimate
};

// Trapezoid along nu + j t at fixed step h. Truncates a side after
// kRunBelowCutoff consecutive nodes below cutoff*peak. user_cap means the
// caller fixed half_height: exceeding it with a fat integrand is a truncation
// failure, not a decay failure.
LineSum line_sum(const std::function<cplx(cplx)>& f, double nu, double h, double cap,
                 bool user_cap, double cutoff, bool symmetric) {
  LineSum out;
  const cplx v0 = f(cplx(nu, 0.0));
  double peak = std::abs(v0);
  double acc_re = v0.real();
  cplx acc = v0;
  double mass = std::abs(v0);

  for (int dir = 0; dir < (symmetric ? 1 : 2); ++dir) {
    const double sgn = dir == 0 ? 1.0 : -1.0;
    int below = 0;
    double last = 0.0;
    for (double t = h;; t += h) {
      if (t > cap) {
        if (last > std::max(cutoff, 1e-12) * peak) {
          if (user_cap)
            throw ConvergenceError("line_sum: truncation at half_height leaves integrand at " +
                                   std::to_string(last / peak) + " of peak");
          throw DecayError("line_sum: integrand not decaying along the contour");
        }
        break;
      }
      const cplx v = f(cplx(nu, sgn * t));
      const double a = std::abs(v);
      peak = std::max(peak, a);
      last = a;
      if (symmetric) {
        acc_re += 2.0 * v.real();
        mass += 2.0 * a;
      } else {
        acc += v;
        mass += a;
      }
      below = a < cutoff * peak ? below + 1 : 0;
      if (below >= kRunBelowCutoff) break;
    }
    out.tail += last * kRunBelowCutoff;
  }
  const double w = h / kTwoPi;
  out.value = acc_re * w;
  out.value_c = acc * w;
  out.mass = mass * w;
  out.tail *= w;
  return out;
}

} // namespace

EvalResult integrate_vertical_line(const std::function<cplx(cplx)>& f, double nu,
                                   const ContourSpec& contour, bool conjugate_symmetric) {
  const bool user_cap = contour.half_height > 0.0;
  const double cap = user_cap ? contour.half_height : kHardCapT;
  auto pick = [&](const LineSum& s) {
    return conjugate_symmetric ? s.value : s.value_c.real();
  };
  if (contour.nodes > 0) {
    if (!user_cap)
      throw ContourError("integrate_vertical_line: fixed node count requires half_height");
    const double h = contour.half_height / contour.nodes;
    LineSum s = line_sum(f, nu, h, cap, user_cap, contour.decay_cutoff, conjugate_symmetric);
    return {pick(s), s.tail + 8.0 * kEps * s.mass};
  }
  double h = kCoarsestStep;
  LineSum prev{};
  bool have_prev = false;
  for (int level = 0; level < kMaxLevels; ++level) {
    LineSum cur = line_sum(f, nu, h, cap, user_cap, contour.decay_cutoff, conjugate_symmetric);
    if (have_prev) {
      const double delta = std::fabs(pick(cur) - pick(prev));
      const double floor = 8.0 * kEps * cur.mass;
      if (delta <= std::max(contour.tolerance * std::fabs(pick(cur)), floor))
        return {pick(cur), delta + cur.tail + floor};
    }
    prev = cur;
    have_prev = true;
    h *= 0.5;
  }
  throw ConvergenceError("integrate_vertical_line: step refinement exhausted at nu = " +
                         std::to_string(nu));
}

FoxHSpec FoxHSpec::classical(int m, int n, const std::vector<GammaTerm>& upper_params,
                             const std::vector<GammaTerm>& lower_params, double z) {
  if (!(z > 0.0)) throw std::domain_error("FoxHSpec::classical: argument must be positive");
  const int p = static_cast<int>(upper_params.size());
  const int q = static_cast<int>(lower_params.size());
  if (m > q || n > p) throw std::domain_error("FoxHSpec::classical: need m <= q, n <= p");
  FoxHSpec spec;
  spec.argument = 1.0 / z; // z^{-u} == (1/z)^{u}
  for (int j = 0; j < q; ++j) {
    const auto& t = lower_params[static_cast<size_t>(j)];
    if (j < m) {
      spec.factors.upper.push_back({t.c, t.scale});
      spec.window_lo = std::max(spec.window_lo, -t.c / t.scale);
    } else {
      spec.factors.lower.push_back({1.0 - t.c, -t.scale});
    }
  }
  for (int j = 0; j < p; ++j) {
    const auto& t = upper_params[static_cast<size_t>(j)];
    if (j < n) {
      spec.factors.upper.push_back({1.0 - t.c, -t.scale});
      spec.window_hi = std::min(spec.window_hi, (1.0 - t.c) / t.scale);
    } else {
      spec.factors.lower.push_back({t.c, t.scale});
    }
  }
  if (!(spec.window_lo < spec.window_hi))
    throw ContourError("FoxHSpec::classical: empty pole-free strip");
  return spec;
}

namespace {

double choose_abscissa(double lo, double hi, double user, double margin, const char* what) {
  if (finite(user)) {
    if (user <= lo || user >= hi)
      throw ContourError(std::string(what) + ": abscissa " + std::to_string(user) +
                         " outside admissible window (" + std::to_string(lo) + ", " +
                         std::to_string(hi) + ")");
    return user;
  }
  const bool lo_f = finite(lo), hi_f = finite(hi);
  double nu;
  if (lo_f && hi_f)
    nu = 0.5 * (lo + hi);
  else if (lo_f)
    nu = lo + 1.0;
  else if (hi_f)
    nu = hi - 1.0;
  else
    nu = 0.0;
  if ((lo_f && nu - lo < margin) || (hi_f && hi - nu < margin))
    throw ContourError(std::string(what) + ": window narrower than 2*pole_margin");
  return nu;
}

void validate_group_margins(const GammaFactorGroup& g, double nu, double margin,
                            const char* what) {
  for (const auto& t : g.upper)
    if (t.scale != 0.0) check_upper_margin(t.c + t.scale * nu, std::fabs(t.scale), margin, what);
}

std::function<cplx(cplx)> univariate_integrand(const FoxHSpec& spec) {
  const double lnx = std::log(spec.argument);
  return [factors = spec.factors, lnx](cplx u) {
    return std::exp(log_gamma_group(factors, u) + u * lnx);
  };
}

} // namespace

EvalResult eval_fox_h(const FoxHSpec& spec, const ContourSpec& contour) {
  if (!(spec.argument > 0.0))
    throw std::domain_error("eval_fox_h: argument must be positive");
  const double nu = choose_abscissa(spec.window_lo, spec.window_hi, contour.abscissa,
                                    contour.pole_margin, "eval_fox_h");
  validate_group_margins(spec.factors, nu, contour.pole_margin, "eval_fox_h");
  return integrate_vertical_line(univariate_integrand(spec), nu, contour, true);
}

// ---------------------------------------------------------------------------
// Bivariate evaluation
// ---------------------------------------------------------------------------

namespace {

struct CorrectionSheet {
  size_t factor = 0;
  int k = 0;
};

struct BivPlacement {
  double nu_s = 0.0, nu_z = 0.0;
  std::vector<CorrectionSheet> sheets;
};

// Pole sheets s = (-c - k - B*z)/A of upper joint factors lying on the wrong
// side of the s-contour. Each contributes a residue correction restoring the
// bent-contour (iterated Parseval) value on straight tensor lines.
std::vector<CorrectionSheet> wrong_side_sheets(const BivariateFoxHSpec& spec, double nu_s,
                                               double nu_z, double margin) {
  std::vector<CorrectionSheet> sheets;
  size_t active_factors = 0;
  for (size_t fi = 0; fi < spec.joint.size(); ++fi) {
    const auto& f = spec.joint[fi];
    if (!f.upper || f.scale_s == 0.0) continue;
    bool any = false;
    for (int k = 0; k <= 512; ++k) {
      const double sheet_re = (-f.c - k - f.scale_z * nu_z) / f.scale_s;
      const bool wrong = f.scale_s > 0.0 ? sheet_re > nu_s : sheet_re < nu_s;
      if (!wrong) break;
      if (std::fabs(sheet_re - nu_s) < margin)
        throw ContourError("eval_bivariate_fox_h: joint pole sheet within pole_margin of "
                           "the s-contour (Re = " +
                           std::to_string(sheet_re) + ")");
      sheets.push_back({fi, k});
      any = true;
    }
    if (any) ++active_factors;
  }
  if (active_factors > 1)
    throw ContourError("eval_bivariate_fox_h: residue corrections for more than one joint "
                       "factor are not supported");
  return sheets;
}

BivPlacement place_contours(const BivariateFoxHSpec& spec, const ContourSpec& cs,
                            const ContourSpec& cz) {
  BivPlacement pl;
  pl.nu_s = choose_abscissa(spec.window_s_lo, spec.window_s_hi, cs.abscissa, cs.pole_margin,
                            "eval_bivariate_fox_h[s]");
  validate_group_margins(spec.group_s, pl.nu_s, cs.pole_margin, "eval_bivariate_fox_h[s]");
  pl.nu_z = choose_abscissa(spec.window_z_lo, spec.window_z_hi, cz.abscissa, cz.pole_margin,
                            "eval_bivariate_fox_h[z]");

  const double jmargin = std::max(cs.pole_margin, cz.pole_margin);
  auto joint_ok = [&](double nu_z) {
    for (const auto& f : spec.joint) {
      if (!f.upper) continue;
      const double q = f.c + f.scale_s * pl.nu_s + f.scale_z * nu_z;
      const double mass = std::fabs(f.scale_s) + std::fabs(f.scale_z);
      if (pole_lattice_distance(q) < jmargin * std::max(mass, 1.0)) return false;
    }
    return true;
  };
  auto z_ok = [&](double nu_z) {
    if (!(nu_z > spec.window_z_lo + cz.pole_margin && nu_z < spec.window_z_hi - cz.pole_margin))
      return false;
    try {
      validate_group_margins(spec.group_z, nu_z, cz.pole_margin, "z");
    } catch (const ContourError&) {
      return false;
    }
    return joint_ok(nu_z);
  };

  if (!z_ok(pl.nu_z)) {
    if (finite(cz.abscissa))
      throw ContourError("eval_bivariate_fox_h: supplied z-abscissa violates pole margins");
    bool placed = false;
    const double step = std::max(2.5 * cz.pole_margin, 0.05);
    for (int i = 1; i <= 16 && !placed; ++i)
      for (double sgn : {1.0, -1.0})
        if (z_ok(pl.nu_z + sgn * i * step)) {
          pl.nu_z += sgn * i * step;
          placed = true;
          break;
        }
    if (!placed)
      throw ContourError("eval_bivariate_fox_h: no admissible z-abscissa near the requested "
                         "placement");
  }
  pl.sheets = wrong_side_sheets(spec, pl.nu_s, pl.nu_z, std::max(cs.pole_margin, 1e-3));
  return pl;
}

struct ResidueTerm {
  FoxHSpec spec;
  double coefficient = 0.0;
};

// Residue of the double integrand at the sheet s = alpha + beta*z of joint
// factor `sh.factor`, assembled as a univariate spec in z. The residue of
// Gamma(c + A s + B z) in s at sheet k carries (-1)^k / (k! |A|) after
// orientation bookkeeping (left-designated sheets are added, right-designated
// subtracted; the 1/A sign folds into |A|).
ResidueTerm residue_term(const BivariateFoxHSpec& spec, const CorrectionSheet& sh) {
  const auto& f = spec.joint[sh.factor];
  const double A = f.scale_s;
  const double alpha = (-f.c - sh.k) / A;
  const double beta = -f.scale_z / A;

  ResidueTerm out;
  out.spec.argument = spec.arg_z * std::pow(spec.arg_s, beta);
  double kfact = 1.0;
  for (int i = 2; i <= sh.k; ++i) kfact *= i;
  out.coefficient =
      (sh.k % 2 == 0 ? 1.0 : -1.0) / (kfact * std::fabs(A)) * std::pow(spec.arg_s, alpha);

  for (const auto& t : spec.group_s.upper)
    out.spec.factors.upper.push_back({t.c + t.scale * alpha, t.scale * beta});
  for (const auto& t : spec.group_s.lower)
    out.spec.factors.lower.push_back({t.c + t.scale * alpha, t.scale * beta});
  for (const auto& t : spec.group_z.upper) out.spec.factors.upper.push_back(t);
  for (const auto& t : spec.group_z.lower) out.spec.factors.lower.push_back(t);
  for (size_t fi = 0; fi < spec.joint.size(); ++fi) {
    if (fi == sh.factor) continue;
    const auto& g = spec.joint[fi];
    GammaTerm sub{g.c + g.scale_s * alpha, g.scale_z + g.scale_s * beta};
    (g.upper ? out.spec.factors.upper : out.spec.factors.lower).push_back(sub);
  }
  return out;
}

struct BivSum {
  double value = 0.0;
  double mass = 0.0; // (1/2pi)^2 Int Int |f|, roundoff floor scale
  double tail = 0.0;
};

// Tensor trapezoid at fixed step h: inner full s-line per outer z-node, outer
// half-line with conjugate symmetry. Pure-s factor values are cached per node.
class BivGrid {
public:
  BivGrid(const BivariateFoxHSpec& spec, double nu_s, double nu_z, double h, double cutoff,
          double cap_s, double cap_z, bool user_cap_s, bool user_cap_z)
      : spec_(spec), nu_s_(nu_s), nu_z_(nu_z), h_(h), cutoff_(cutoff), cap_s_(cap_s),
        cap_z_(cap_z), user_cap_s_(user_cap_s), user_cap_z_(user_cap_z),
        ln_arg_s_(std::log(spec.arg_s)), ln_arg_z_(std::log(spec.arg_z)) {}

  BivSum run() {
    BivSum out;
    const double w = h_ / kTwoPi;
    double row_mass = 0.0;
    const cplx c0 = row(0, row_mass) * pure_z(0);
    double grid_mass = row_mass * std::abs(pure_z(0));
    double acc = c0.real();
    double peak = std::abs(c0);
    double last = 0.0;
    int below = 0;
    for (int j = 1;; ++j) {
      if (j * h_ > cap_z_) {
        if (last > std::max(cutoff_, 1e-12) * peak) {
          if (user_cap_z_)
            throw ConvergenceError("eval_bivariate_fox_h: outer truncation at half_height "
                                   "leaves integrand above cutoff");
          throw DecayError("eval_bivariate_fox_h: outer integrand not decaying");
        }
        break;
      }
      const cplx gz = pure_z(j);
      const cplx cj = row(j, row_mass) * gz;
      grid_mass += 2.0 * row_mass * std::abs(gz);
      const double a = std::abs(cj);
      peak = std::max(peak, a);
      last = a;
      acc += 2.0 * cj.real();
      below = a < cutoff_ * peak ? below + 1 : 0;
      if (below >= kRunBelowCutoff) break;
    }
    out.value = acc * w;
    out.mass = grid_mass * w * w;
    out.tail = last * w * kRunBelowCutoff;
    return out;
  }

private:
  cplx pure_z(int j) const {
    const cplx z(nu_z_, j * h_);
    return std::exp(log_gamma_group(spec_.group_z, z) + z * ln_arg_z_);
  }

  const cplx& pure_s(int m) {
    auto& vec = m >= 0 ? s_pos_ : s_neg_;
    const size_t idx = static_cast<size_t>(m >= 0 ? m : -m - 1);
    while (vec.size() <= idx) {
      const int mm = m >= 0 ? static_cast<int>(vec.size()) : -static_cast<int>(vec.size()) - 1;
      const cplx s(nu_s_, mm * h_);
      vec.push_back(std::exp(log_gamma_group(spec_.group_s, s) + s * ln_arg_s_));
    }
    return vec[idx];
  }

  // inner (1/2pi) Int f_s(s) joint(s, z_j) ds over the full s-line
  cplx row(int j, double& mass) {
    const cplx z(nu_z_, j * h_);
    cplx acc = 0.0;
    mass = 0.0;
    double peak = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
      int below = 0;
      double last = 0.0;
      for (int m = dir == 0 ? 0 : -1;; m += dir == 0 ? 1 : -1) {
        if (std::fabs(m) * h_ > cap_s_) {
          if (last > std::max(cutoff_, 1e-12) * peak) {
            if (user_cap_s_)
              throw ConvergenceError("eval_bivariate_fox_h: inner truncation at half_height "
                                     "leaves integrand above cutoff");
            throw DecayError("eval_bivariate_fox_h: inner integrand not decaying");
          }
          break;
        }
        const cplx s(nu_s_, m * h_);
        cplx lg = 0.0;
        for (const auto& f : spec_.joint) {
          const cplx g = log_gamma(cplx(f.c) + f.scale_s * s + f.scale_z * z);
          lg += f.upper ? g : -g;
        }
        const cplx v = pure_s(m) * std::exp(lg);
        const double a = std::abs(v);
        acc += v;
        mass += a;
        peak = std::max(peak, a);
        last = a;
        below = a < cutoff_ * peak ? below + 1 : 0;
        if (below >= kRunBelowCutoff) break;
      }
    }
    return acc * (h_ / kTwoPi);
  }

  const BivariateFoxHSpec& spec_;
  double nu_s_, nu_z_, h_, cutoff_, cap_s_, cap_z_;
  bool user_cap_s_, user_cap_z_;
  double ln_arg_s_, ln_arg_z_;
  std::vector<cplx> s_pos_, s_neg_;
};

} // namespace

EvalResult eval_bivariate_fox_h(const BivariateFoxHSpec& spec, const ContourSpec& contour_s,
                                const ContourSpec& contour_z) {
  if (!(spec.arg_s > 0.0) || !(spec.arg_z > 0.0))
    throw std::domain_error("eval_bivariate_fox_h: arguments must be positive");
  const BivPlacement pl = place_contours(spec, contour_s, contour_z);

  double corr_value = 0.0, corr_error = 0.0;
  for (const auto& sh : pl.sheets) {
    ResidueTerm rt = residue_term(spec, sh);
    ContourSpec cz = contour_z;
    cz.abscissa = pl.nu_z;
    cz.tolerance = std::min(contour_z.tolerance, 1e-10);
    EvalResult r = eval_fox_h(rt.spec, cz);
    corr_value += rt.coefficient * r.value;
    corr_error += std::fabs(rt.coefficient) * r.error;
  }

  const bool ucs = contour_s.half_height > 0.0, ucz = contour_z.half_height > 0.0;
  const double cap_s = ucs ? contour_s.half_height : kHardCapT;
  const double cap_z = ucz ? contour_z.half_height : kHardCapT;
  const double cutoff = std::min(contour_s.decay_cutoff, contour_z.decay_cutoff);
  const double tol = std::min(contour_s.tolerance, contour_z.tolerance);

  double h = kCoarsestStep;
  BivSum prev{};
  bool have_prev = false;
  for (int level = 0; level < kMaxLevels; ++level) {
    BivSum cur = BivGrid(spec, pl.nu_s, pl.nu_z, h, cutoff, cap_s, cap_z, ucs, ucz).run();
    if (have_prev) {
      const double delta = std::fabs(cur.value - prev.value);
      const double scale = std::fabs(cur.value) + std::fabs(corr_value);
      const double floor = 16.0 * kEps * cur.mass;
      if (delta <= std::max(tol * scale, floor))
        return {cur.value + corr_value, delta + cur.tail + floor + corr_error};
    }
    prev = cur;
    have_prev = true;
    h *= 0.5;
  }
  throw ConvergenceError("eval_bivariate_fox_h: step refinement exhausted");
}

void dump_integrand_csv(const FoxHSpec& spec, const ContourSpec& contour, std::ostream& os) {
  const double nu = choose_abscissa(spec.window_lo, spec.window_hi, contour.abscissa,
                                    contour.pole_margin, "dump_integrand_csv");
  auto f = univariate_integrand(spec);
  const double cap = contour.half_height > 0.0 ? contour.half_height : 40.0;
  const double h = contour.nodes > 0 ? cap / contour.nodes : 0.05;
  os << "im_s,im_zeta,re_integrand,im_integrand\n";
  const int n = static_cast<int>(cap / h);
  for (int i = -n; i <= n; ++i) {
    const double t = i * h;
    const cplx v = f(cplx(nu, t));
    os << t << ",0," << v.real() << ',' << v.imag() << '\n';
  }
}

void dump_integrand_csv(const BivariateFoxHSpec& spec, const ContourSpec& contour_s,
                        const ContourSpec& contour_z, std::ostream& os) {
  const BivPlacement pl = place_contours(spec, contour_s, contour_z);
  const double h = 0.25, cap = 12.0;
  const double lns = std::log(spec.arg_s), lnz = std::log(spec.arg_z);
  os << "im_s,im_zeta,re_integrand,im_integrand\n";
  const int n = static_cast<int>(cap / h);
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const double ts = i * h, tz = j * h;
      const cplx s(pl.nu_s, ts), z(pl.nu_z, tz);
      cplx lg = log_gamma_group(spec.group_s, s) + log_gamma_group(spec.group_z, z) +
                s * lns + z * lnz;
      for (const auto& f : spec.joint) {
        const cplx g = log_gamma(cplx(f.c) + f.scale_s * s + f.scale_z * z);
        lg += f.upper ? g : -g;
      }
      const cplx v = std::exp(lg);
      os << ts << ',' << tz << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
}

} // namespace rissec
