// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Speed shape w(t), tumbling rate lambda(t), and the time change
// tau(t) = integral of w over [0, t] with its inverse t(tau).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "teleswim/errors.hpp"
#include "teleswim/numerics.hpp"

namespace teleswim {

enum class ProfileKind {
  Constant,
  PowerLaw,
  ExponentialDecay,
  PiecewiseConstant,
  Tabulated,
};

// Nonnegative speed shape w(t), integrable on every [0, t].
//
// PowerLaw is regularized as w(t) = (1 + t/t_ref)^(-beta) so that w(0) = 1
// and w(t) ~ t^(-beta) for large t; the bare power is not integrable at the
// origin for beta >= 1.
struct TimeProfile {
  ProfileKind kind = ProfileKind::Constant;
  double beta = 0.0;   // PowerLaw exponent
  double t_ref = 1.0;  // PowerLaw offset, > 0
  double gamma = 1.0;  // ExponentialDecay rate, > 0
  // PiecewiseConstant: values[i] holds on [breakpoints[i], breakpoints[i+1]),
  // values.back() from breakpoints.back() on; breakpoints.front() must be 0.
  std::vector<double> breakpoints;
  std::vector<double> values;
  // Tabulated: ascending (t, w) samples starting at t = 0, linearly
  // interpolated; no extrapolation beyond the last sample.
  std::vector<std::pair<double, double>> samples;

  static TimeProfile constant() { return TimeProfile{}; }

  static TimeProfile power_law(double beta, double t_ref = 1.0) {
    if (!std::isfinite(beta) || !(t_ref > 0.0)) {
      throw domain_error("power_law: beta must be finite and t_ref > 0");
    }
    TimeProfile p;
    p.kind = ProfileKind::PowerLaw;
    p.beta = beta;
    p.t_ref = t_ref;
    return p;
  }

  static TimeProfile exponential_decay(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw domain_error("exponential_decay: gamma must be > 0");
    }
    TimeProfile p;
    p.kind = ProfileKind::ExponentialDecay;
    p.gamma = gamma;
    return p;
  }

  static TimeProfile piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values) {
    if (breakpoints.empty() || breakpoints.size() != values.size()) {
      throw domain_error(
          "piecewise_constant: need equal, nonempty breakpoints and values");
    }
    if (breakpoints.front() != 0.0) {
      throw domain_error("piecewise_constant: first breakpoint must be 0");
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      if (!(breakpoints[i] < breakpoints[i + 1])) {
        throw domain_error("piecewise_constant: breakpoints must ascend");
      }
    }
    for (double v : values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw domain_error("piecewise_constant: values must be >= 0");
      }
    }
    TimeProfile p;
    p.kind = ProfileKind::PiecewiseConstant;
    p.breakpoints = std::move(breakpoints);
    p.values = std::move(values);
    return p;
  }

  static TimeProfile tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) {
      throw domain_error("tabulated: need at least two samples");
    }
    if (samples.front().first != 0.0) {
      throw domain_error("tabulated: first sample must be at t = 0");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i + 1 < samples.size() &&
          !(samples[i].first < samples[i + 1].first)) {
        throw domain_error("tabulated: sample times must ascend");
      }
      if (!(samples[i].second >= 0.0) || !std::isfinite(samples[i].second)) {
        throw domain_error("tabulated: w samples must be >= 0");
      }
    }
    TimeProfile p;
    p.kind = ProfileKind::Tabulated;
    p.samples = std::move(samples);
    return p;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case ProfileKind::Constant:
        os << "constant";
        break;
      case ProfileKind::PowerLaw:
        os << "power_law(beta=" << beta << ",t_ref=" << t_ref << ")";
        break;
      case ProfileKind::ExponentialDecay:
        os << "exponential_decay(gamma=" << gamma << ")";
        break;
      case ProfileKind::PiecewiseConstant:
        os << "piecewise_constant(" << values.size() << " segments)";
        break;
      case ProfileKind::Tabulated:
        os << "tabulated(" << samples.size() << " samples)";
        break;
    }
    return os.str();
  }
};

namespace detail {

inline double check_time(double t, const char* who) {
  if (!(t >= 0.0)) {
    throw domain_error(std::string(who) + ": t must be >= 0");
  }
  return t;
}

inline double interp_table(const std::vector<std::pair<double, double>>& tab,
                           double t, const char* who) {
  if (t > tab.back().first) {
    throw extrapolation_error(std::string(who) +
                              ": t beyond last tabulated sample");
  }
  auto it = std::upper_bound(
      tab.begin(), tab.end(), t,
      [](double v, const std::pair<double, double>& s) { return v < s.first; });
  if (it == tab.begin()) return tab.front().second;
  if (it == tab.end()) return tab.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double theta = (t - lo.first) / (hi.first - lo.first);
  return lo.second + theta * (hi.second - lo.second);
}

// Integral of the linear interpolant of tab over [0, t]; exact trapezoid.
inline double integrate_table(const std::vector<std::pair<double, double>>& tab,
                              double t, const char* who) {
  if (t > tab.back().first) {
    throw extrapolation_error(std::string(who) +
                              ": t beyond last tabulated sample");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < tab.size(); ++i) {
    const double t0 = tab[i].first;
    const double t1 = tab[i + 1].first;
    if (t <= t0) break;
    const double hi = std::min(t, t1);
    const double w0 = tab[i].second;
    const double w1 = interp_table(tab, hi, who);
    acc += 0.5 * (w0 + w1) * (hi - t0);
    if (t <= t1) break;
  }
  return acc;
}

}  // namespace detail

// w(t).
inline double eval_w(const TimeProfile& p, double t) {
  detail::check_time(t, "eval_w");
  switch (p.kind) {
    case ProfileKind::Constant:
      return 1.0;
    case ProfileKind::PowerLaw:
      return std::pow(1.0 + t / p.t_ref, -p.beta);
    case ProfileKind::ExponentialDecay:
      return std::exp(-p.gamma * t);
    case ProfileKind::PiecewiseConstant: {
      auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
      const std::size_t idx =
          static_cast<std::size_t>(it - p.breakpoints.begin()) - 1;
      return p.values[idx];
    }
    case ProfileKind::Tabulated:
      return detail::interp_table(p.samples, t, "eval_w");
  }
  throw domain_error("eval_w: unknown profile kind");
}

// tau(t) = integral of w over [0, t]; closed form for the parametric kinds,
// exact trapezoid of the interpolant for Tabulated.
inline double eval_tau(const TimeProfile& p, double t) {
  detail::check_time(t, "eval_tau");
  switch (p.kind) {
    case ProfileKind::Constant:
      return t;
    case ProfileKind::PowerLaw: {
      const double x = t / p.t_ref;
      if (p.beta == 1.0) return p.t_ref * std::log1p(x);
      const double om = 1.0 - p.beta;
      return p.t_ref * std::expm1(om * std::log1p(x)) / om;
    }
    case ProfileKind::ExponentialDecay:
      return -std::expm1(-p.gamma * t) / p.gamma;
    case ProfileKind::PiecewiseConstant: {
      double acc = 0.0;
      for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        const double t0 = p.breakpoints[i];
        if (t <= t0) break;
        const double t1 = (i + 1 < p.breakpoints.size())
                              ? std::min(t, p.breakpoints[i + 1])
                              : t;
        acc += p.values[i] * (t1 - t0);
      }
      return acc;
    }
    case ProfileKind::Tabulated:
      return detail::integrate_table(p.samples, t, "eval_tau");
  }
  throw domain_error("eval_tau: unknown profile kind");
}

// Supremum of tau(t) over t >= 0; +inf when the time change does not saturate.
// For Tabulated profiles this is the value at the last sample (the profile is
// undefined beyond it).
inline double tau_infinity(const TimeProfile& p) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (p.kind) {
    case ProfileKind::Constant:
      return inf;
    case ProfileKind::PowerLaw:
      return p.beta > 1.0 ? p.t_ref / (p.beta - 1.0) : inf;
    case ProfileKind::ExponentialDecay:
      return 1.0 / p.gamma;
    case ProfileKind::PiecewiseConstant:
      return p.values.back() > 0.0 ? inf : eval_tau(p, p.breakpoints.back());
    case ProfileKind::Tabulated:
      return eval_tau(p, p.samples.back().first);
  }
  throw domain_error("tau_infinity: unknown profile kind");
}

// Inverse of the time change: the smallest t with tau(t) = tau.
inline double eval_t_of_tau(const TimeProfile& p, double tau) {
  if (!(tau >= 0.0)) {
    throw domain_error("eval_t_of_tau: tau must be >= 0");
  }
  switch (p.kind) {
    case ProfileKind::Constant:
      return tau;
    case ProfileKind::PowerLaw: {
      if (p.beta > 1.0) {
        const double tau_inf = p.t_ref / (p.beta - 1.0);
        if (tau >= tau_inf) {
          throw saturation_error("eval_t_of_tau: tau at or beyond saturation",
                                 tau_inf);
        }
      }
      if (p.beta == 1.0) return p.t_ref * std::expm1(tau / p.t_ref);
      const double om = 1.0 - p.beta;
      return p.t_ref * std::expm1(std::log1p(om * tau / p.t_ref) / om);
    }
    case ProfileKind::ExponentialDecay: {
      const double tau_inf = 1.0 / p.gamma;
      if (tau >= tau_inf) {
        throw saturation_error("eval_t_of_tau: tau at or beyond saturation",
                               tau_inf);
      }
      return -std::log1p(-p.gamma * tau) / p.gamma;
    }
    case ProfileKind::PiecewiseConstant: {
      double rem = tau;
      for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        const double t0 = p.breakpoints[i];
        if (rem <= 0.0) return t0;
        const bool last = (i + 1 == p.breakpoints.size());
        const double v = p.values[i];
        if (last) {
          if (v > 0.0) return t0 + rem / v;
          throw saturation_error("eval_t_of_tau: tau beyond saturation",
                                 eval_tau(p, p.breakpoints.back()));
        }
        const double cap = v * (p.breakpoints[i + 1] - t0);
        if (v > 0.0 && rem <= cap) return t0 + rem / v;
        rem -= cap;
      }
      throw domain_error("eval_t_of_tau: unreachable");
    }
    case ProfileKind::Tabulated: {
      const double tau_max = eval_tau(p, p.samples.back().first);
      if (tau > tau_max * (1.0 + 1e-12)) {
        throw extrapolation_error(
            "eval_t_of_tau: tau beyond last tabulated sample");
      }
      if (tau >= tau_max) return p.samples.back().first;
      return invert_nondecreasing(
          [&p](double t) { return eval_tau(p, t); }, tau,
          p.samples.back().first);
    }
  }
  throw domain_error("eval_t_of_tau: unknown profile kind");
}

enum class RateMode { ProportionalToSpeed, ConstantRate, Explicit };

// Tumbling rate lambda(t) >= 0.
//
// ProportionalToSpeed means lambda(t) = lambda0 * w(t) exactly.
struct RateProfile {
  RateMode mode = RateMode::ProportionalToSpeed;
  double lambda0 = 0.0;
  std::vector<std::pair<double, double>> samples;  // Explicit (t, lambda)

  static RateProfile proportional_to_speed(double lambda0) {
    if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
      throw domain_error("proportional_to_speed: lambda0 must be >= 0");
    }
    RateProfile r;
    r.mode = RateMode::ProportionalToSpeed;
    r.lambda0 = lambda0;
    return r;
  }

  static RateProfile constant_rate(double lambda0) {
    if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
      throw domain_error("constant_rate: lambda0 must be >= 0");
    }
    RateProfile r;
    r.mode = RateMode::ConstantRate;
    r.lambda0 = lambda0;
    return r;
  }

  static RateProfile explicit_table(
      std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2 || samples.front().first != 0.0) {
      throw domain_error(
          "explicit_table: need >= 2 samples starting at t = 0");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i + 1 < samples.size() &&
          !(samples[i].first < samples[i + 1].first)) {
        throw domain_error("explicit_table: sample times must ascend");
      }
      if (!(samples[i].second >= 0.0) || !std::isfinite(samples[i].second)) {
        throw domain_error("explicit_table: rates must be >= 0");
      }
    }
    RateProfile r;
    r.mode = RateMode::Explicit;
    r.samples = std::move(samples);
    return r;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (mode) {
      case RateMode::ProportionalToSpeed:
        os << "proportional(lambda0=" << lambda0 << ")";
        break;
      case RateMode::ConstantRate:
        os << "constant(lambda0=" << lambda0 << ")";
        break;
      case RateMode::Explicit:
        os << "explicit(" << samples.size() << " samples)";
        break;
    }
    return os.str();
  }
};

// lambda(t).
inline double eval_lambda(const RateProfile& r, const TimeProfile& p,
                          double t) {
  detail::check_time(t, "eval_lambda");
  switch (r.mode) {
    case RateMode::ProportionalToSpeed:
      return r.lambda0 * eval_w(p, t);
    case RateMode::ConstantRate:
      return r.lambda0;
    case RateMode::Explicit:
      return detail::interp_table(r.samples, t, "eval_lambda");
  }
  throw domain_error("eval_lambda: unknown rate mode");
}

// Effective rate in the tau clock: lambda(t(tau)) / w(t(tau)).  Constant and
// equal to lambda0 in the proportional mode, without inverting the time
// change.
inline double eval_lambda_eff(const RateProfile& r, const TimeProfile& p,
                              double tau) {
  if (r.mode == RateMode::ProportionalToSpeed) return r.lambda0;
  const double t = eval_t_of_tau(p, tau);
  const double w = eval_w(p, t);
  if (!(w > 0.0)) {
    throw singularity_error("eval_lambda_eff: w(t(tau)) = 0");
  }
  return eval_lambda(r, p, t) / w;
}

namespace detail {

// sup of w over [t0, t1]; exact for every kind (w is monotone or piecewise
// linear/constant).
inline double sup_w(const TimeProfile& p, double t0, double t1) {
  switch (p.kind) {
    case ProfileKind::Constant:
      return 1.0;
    case ProfileKind::PowerLaw:
      return p.beta >= 0.0 ? eval_w(p, t0) : eval_w(p, t1);
    case ProfileKind::ExponentialDecay:
      return eval_w(p, t0);
    case ProfileKind::PiecewiseConstant: {
      double m = 0.0;
      for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        const double s0 = p.breakpoints[i];
        const double s1 = (i + 1 < p.breakpoints.size())
                              ? p.breakpoints[i + 1]
                              : std::numeric_limits<double>::infinity();
        if (s1 <= t0 || s0 > t1) continue;
        m = std::max(m, p.values[i]);
      }
      return m;
    }
    case ProfileKind::Tabulated: {
      double m = std::max(interp_table(p.samples, t0, "sup_w"),
                          interp_table(p.samples, t1, "sup_w"));
      for (const auto& s : p.samples) {
        if (s.first > t0 && s.first < t1) m = std::max(m, s.second);
      }
      return m;
    }
  }
  throw domain_error("sup_w: unknown profile kind");
}

inline double sup_table(const std::vector<std::pair<double, double>>& tab,
                        double t0, double t1, const char* who) {
  double m = std::max(interp_table(tab, t0, who), interp_table(tab, t1, who));
  for (const auto& s : tab) {
    if (s.first > t0 && s.first < t1) m = std::max(m, s.second);
  }
  return m;
}

}  // namespace detail

// Finite upper bound of lambda on [t0, t1] (dominating rate for thinning).
inline double rate_upper_bound(const RateProfile& r, const TimeProfile& p,
                               double t0, double t1) {
  if (!(t1 >= t0) || !(t0 >= 0.0)) {
    throw domain_error("rate_upper_bound: need 0 <= t0 <= t1");
  }
  switch (r.mode) {
    case RateMode::ProportionalToSpeed:
      return r.lambda0 * detail::sup_w(p, t0, t1);
    case RateMode::ConstantRate:
      return r.lambda0;
    case RateMode::Explicit:
      return detail::sup_table(r.samples, t0, t1, "rate_upper_bound");
  }
  throw domain_error("rate_upper_bound: unknown rate mode");
}

// Integrated rate over [t0, t1]; exact for every mode.
inline double integrated_rate(const RateProfile& r, const TimeProfile& p,
                              double t0, double t1) {
  if (!(t1 >= t0) || !(t0 >= 0.0)) {
    throw domain_error("integrated_rate: need 0 <= t0 <= t1");
  }
  switch (r.mode) {
    case RateMode::ProportionalToSpeed:
      return r.lambda0 * (eval_tau(p, t1) - eval_tau(p, t0));
    case RateMode::ConstantRate:
      return r.lambda0 * (t1 - t0);
    case RateMode::Explicit:
      return detail::integrate_table(r.samples, t1, "integrated_rate") -
             detail::integrate_table(r.samples, t0, "integrated_rate");
  }
  throw domain_error("integrated_rate: unknown rate mode");
}

}  // namespace teleswim
