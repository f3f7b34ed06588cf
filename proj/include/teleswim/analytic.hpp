// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form law of the proportional-rate process.  In the tau clock the
// process is a classical constant-coefficient telegraph process with speed c0
// and rate lambda0, so every quantity below depends on (profile, t) only
// through tau(t).
//
// Absolutely continuous component, written in scaled-Bessel form with
//   u = lambda0 * tau,  z = (lambda0/c0) * sqrt((c0 tau)^2 - y^2),  y = x - x0:
//
//   p_ac(y) = (lambda0 / 2 c0) * e^{z - u} * [ i0s(z) + u * i1ozs(z) ],
//
// where i0s = e^{-z} I0(z) and i1ozs = e^{-z} I1(z)/z.  The time-derivative
// term of the raw formula reduces to u * I1(z)/z because the 1/(c0 w(t))
// prefactor cancels the w(t) from the chain rule; I1(z)/z is analytic, so the
// density is smooth up to the support edge (no integrable singularity).
// Since z <= u, the exponent z - u is never positive and nothing overflows.
//
// The remaining mass e^{-u}/2 sits in two boundary atoms at x0 +/- c0 tau
// (paths that never tumbled).
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "teleswim/errors.hpp"
#include "teleswim/grid.hpp"
#include "teleswim/numerics.hpp"
#include "teleswim/profiles.hpp"
#include "teleswim/special.hpp"

namespace teleswim {

struct TelegraphParams {
  double c0 = 1.0;       // base speed, > 0
  double lambda0 = 1.0;  // base tumbling rate, >= 0
  double x0 = 0.0;       // initial position

  void validate() const {
    if (!(c0 > 0.0) || !std::isfinite(c0)) {
      throw domain_error("TelegraphParams: c0 must be > 0");
    }
    if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
      throw domain_error("TelegraphParams: lambda0 must be >= 0");
    }
    if (!std::isfinite(x0)) {
      throw domain_error("TelegraphParams: x0 must be finite");
    }
  }
};

// Snapshot of the law's bookkeeping at one time.
struct LawAtTime {
  double t = 0.0;
  double tau = 0.0;
  double front = 0.0;      // support half-width c0 * tau
  double atom_mass = 0.0;  // each boundary atom, e^{-lambda0 tau}/2
  double ac_mass = 0.0;    // 1 - 2 * atom_mass
};

inline LawAtTime law_at(const TelegraphParams& params, const TimeProfile& profile,
                        double t) {
  params.validate();
  if (!(t >= 0.0)) throw domain_error("law_at: t must be >= 0");
  LawAtTime law;
  law.t = t;
  law.tau = eval_tau(profile, t);
  law.front = params.c0 * law.tau;
  law.atom_mass = 0.5 * std::exp(-params.lambda0 * law.tau);
  law.ac_mass = -std::expm1(-params.lambda0 * law.tau);
  return law;
}

// Density of the absolutely continuous component at x.  Points within
// 1e-12 * front of the support edge count as outside (the atoms carry the
// front mass); beyond the front the density is zero.
inline double density_ac(const TelegraphParams& params,
                         const TimeProfile& profile, double x, double t) {
  params.validate();
  if (!(t > 0.0)) throw domain_error("density_ac: t must be > 0");
  if (params.lambda0 == 0.0) {
    throw degenerate_law_error(
        "density_ac: lambda0 = 0, law is two boundary atoms only");
  }
  const double tau = eval_tau(profile, t);
  const double front = params.c0 * tau;
  const double y = std::abs(x - params.x0);
  if (y >= front * (1.0 - 1e-12)) return 0.0;
  const double u = params.lambda0 * tau;
  const double q = (front - y) * (front + y);
  const double z = params.lambda0 / params.c0 * std::sqrt(q);
  return 0.5 * (params.lambda0 / params.c0) * std::exp(z - u) *
         (bessel_i0_scaled(z) + u * bessel_i1_over_z_scaled(z));
}

// Boundary atoms at x0 +/- c0 tau, mass e^{-lambda0 tau}/2 each.
inline std::pair<Atom, Atom> boundary_atoms(const TelegraphParams& params,
                                            const TimeProfile& profile,
                                            double t) {
  const LawAtTime law = law_at(params, profile, t);
  return {Atom{params.x0 - law.front, law.atom_mass},
          Atom{params.x0 + law.front, law.atom_mass}};
}

// P{X(t) <= x}; right-continuous, with jumps at the two boundary atoms.
inline double cdf(const TelegraphParams& params, const TimeProfile& profile,
                  double x, double t) {
  params.validate();
  if (!(t > 0.0)) throw domain_error("cdf: t must be > 0");
  if (params.lambda0 == 0.0) {
    throw degenerate_law_error("cdf: lambda0 = 0, law is two atoms only");
  }
  const LawAtTime law = law_at(params, profile, t);
  const double lo = params.x0 - law.front;
  const double hi = params.x0 + law.front;
  if (x < lo) return 0.0;
  if (x >= hi) return 1.0;
  double f = law.atom_mass;
  if (x > lo) {
    f += integrate_adaptive(
        [&](double s) { return density_ac(params, profile, s, t); }, lo,
        std::min(x, hi), 1e-9);
  }
  return std::min(std::max(f, 0.0), 1.0);
}

// Mean square displacement as a function of tau:
//   (c0^2 / 2 lambda0^2) [2 u - 1 + e^{-2u}],  u = lambda0 tau,
// with a Taylor branch below u = 1e-4 to avoid cancellation, and the
// ballistic limit (c0 tau)^2 for lambda0 = 0.
inline double msd_at_tau(const TelegraphParams& params, double tau) {
  params.validate();
  if (!(tau >= 0.0)) throw domain_error("msd_at_tau: tau must be >= 0");
  const double c0 = params.c0;
  const double l0 = params.lambda0;
  if (l0 == 0.0) {
    const double r = c0 * tau;
    return r * r;
  }
  const double u = l0 * tau;
  double bracket;
  if (u < 1e-4) {
    // sum_{n>=2} (-2u)^n / n! = 2u^2 (1 - 2u/3 + u^2/3 - 2u^3/15 + ...)
    bracket = 2.0 * u * u *
              (1.0 - 2.0 / 3.0 * u + u * u / 3.0 - 2.0 / 15.0 * u * u * u);
  } else {
    bracket = 2.0 * u - 1.0 + std::exp(-2.0 * u);
  }
  return c0 * c0 / (2.0 * l0 * l0) * bracket;
}

inline double msd(const TelegraphParams& params, const TimeProfile& profile,
                  double t) {
  if (!(t >= 0.0)) throw domain_error("msd: t must be >= 0");
  return msd_at_tau(params, eval_tau(profile, t));
}

// Stationary mean square displacement of the constant-rate process under an
// exponentially relaxing speed c(t) = c0 e^{-gamma t}.  From the second
// moment m(tau) of the tau-form equation,
//   m'' + 2 lambda_eff(tau) m' = 2 c0^2,  lambda_eff = lambda0/(1 - gamma tau),
// integrated over tau in [0, 1/gamma):  m_inf = c0^2 / (gamma (2 lambda0 + gamma)).
inline double stationary_msd_constant_rate(double c0, double lambda0,
                                           double gamma) {
  if (!(c0 > 0.0) || !(lambda0 >= 0.0) || !(gamma > 0.0)) {
    throw domain_error("stationary_msd_constant_rate: invalid parameters");
  }
  return c0 * c0 / (gamma * (2.0 * lambda0 + gamma));
}

enum class Regime { Confined, Logarithmic, Subdiffusive, Normal, Superdiffusive };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Confined:
      return "Confined";
    case Regime::Logarithmic:
      return "Logarithmic";
    case Regime::Subdiffusive:
      return "Subdiffusive";
    case Regime::Normal:
      return "Normal";
    case Regime::Superdiffusive:
      return "Superdiffusive";
  }
  return "?";
}

struct RegimeReport {
  double beta = 0.0;
  Regime regime = Regime::Normal;
  std::optional<double> msd_exponent;  // 1 - beta where a power law applies
};

// Long-time MSD regime for w(t) ~ t^{-beta}.  beta = 1 and beta = 0 are
// matched exactly; empirical fits near the thresholds are ambiguous.
inline RegimeReport classify_regime(double beta) {
  if (!std::isfinite(beta)) {
    throw domain_error("classify_regime: beta must be finite");
  }
  RegimeReport rep;
  rep.beta = beta;
  if (beta > 1.0) {
    rep.regime = Regime::Confined;
  } else if (beta == 1.0) {
    rep.regime = Regime::Logarithmic;
  } else if (beta > 0.0) {
    rep.regime = Regime::Subdiffusive;
    rep.msd_exponent = 1.0 - beta;
  } else if (beta == 0.0) {
    rep.regime = Regime::Normal;
    rep.msd_exponent = 1.0;
  } else {
    rep.regime = Regime::Superdiffusive;
    rep.msd_exponent = 1.0 - beta;
  }
  return rep;
}

// Precomputed CDF for repeated evaluation (KS tests, CLI summaries).
// Composite Simpson cumulative over the open support plus the two atoms;
// left() gives the left limit, which differs from at() exactly at the atoms.
class AnalyticCdf {
 public:
  AnalyticCdf(const TelegraphParams& params, const TimeProfile& profile,
              double t, std::size_t n_panels = 4096)
      : law_(law_at(params, profile, t)), x0_(params.x0) {
    if (params.lambda0 == 0.0) {
      throw degenerate_law_error("AnalyticCdf: lambda0 = 0");
    }
    lo_ = x0_ - law_.front;
    hi_ = x0_ + law_.front;
    h_ = (hi_ - lo_) / static_cast<double>(n_panels);
    cum_.resize(n_panels + 1);
    cum_[0] = 0.0;
    // evaluate just inside the open support: the density extends
    // continuously to the edge, where the plain evaluation cuts off to zero
    const double nudge = 1e-9 * law_.front;
    auto f = [&](double x) {
      return density_ac(params, profile,
                        std::clamp(x, lo_ + nudge, hi_ - nudge), t);
    };
    double fl = f(lo_);
    for (std::size_t i = 0; i < n_panels; ++i) {
      const double a = lo_ + h_ * static_cast<double>(i);
      const double b = a + h_;
      const double fr = f(b);
      cum_[i + 1] = cum_[i] + h_ / 6.0 * (fl + 4.0 * f(0.5 * (a + b)) + fr);
      fl = fr;
    }
  }

  double at(double x) const {
    if (x < lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return law_.atom_mass + ac_below(x);
  }

  double left(double x) const {
    if (x <= lo_) return 0.0;
    if (x > hi_) return 1.0;
    if (x == hi_) return law_.atom_mass + cum_.back();
    return law_.atom_mass + ac_below(x);
  }

  const LawAtTime& law() const { return law_; }

 private:
  double ac_below(double x) const {
    const double s = (x - lo_) / h_;
    const auto i = static_cast<std::size_t>(
        std::min(std::max(s, 0.0), static_cast<double>(cum_.size() - 2)));
    const double frac = s - static_cast<double>(i);
    return cum_[i] + frac * (cum_[i + 1] - cum_[i]);
  }

  LawAtTime law_;
  double x0_, lo_ = 0.0, hi_ = 0.0, h_ = 0.0;
  std::vector<double> cum_;
};

// Analytic law sampled on a given cell-center grid, in the same
// representation the PDE solver produces: cells within `front_window_cells`
// of a support edge are zeroed and their AC mass is lumped into the boundary
// atom of that edge, so the two grids can be compared channel by channel.
inline DensityGrid analytic_density_grid(const TelegraphParams& params,
                                         const TimeProfile& profile, double t,
                                         const std::vector<double>& centers,
                                         int front_window_cells = 0) {
  const LawAtTime law = law_at(params, profile, t);
  DensityGrid g;
  g.centers = centers;
  g.values.assign(centers.size(), 0.0);
  g.time = t;
  const double dx = g.dx();
  const double lo = params.x0 - law.front;
  const double hi = params.x0 + law.front;
  const double window = front_window_cells * dx;
  double extra_lo = 0.0, extra_hi = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double x = centers[i];
    const double v =
        params.lambda0 > 0.0 ? density_ac(params, profile, x, t) : 0.0;
    if (front_window_cells > 0 &&
        (std::abs(x - lo) <= window || std::abs(x - hi) <= window)) {
      // assign the cell to the nearer edge
      if (std::abs(x - lo) <= std::abs(x - hi)) {
        extra_lo += v * dx;
      } else {
        extra_hi += v * dx;
      }
      continue;
    }
    g.values[i] = v;
  }
  g.atoms = {Atom{lo, law.atom_mass + extra_lo},
             Atom{hi, law.atom_mass + extra_hi}};
  return g;
}

}  // namespace teleswim
