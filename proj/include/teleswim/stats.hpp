// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Comparison metrics and exponent fitting.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "teleswim/errors.hpp"
#include "teleswim/grid.hpp"

namespace teleswim {

struct L1Result {
  double density = 0.0;  // sum |p1 - p2| dx over cells
  double atoms = 0.0;    // sum |m1 - m2| over atom positions

  double total() const { return density + atoms; }
};

// L1 distance between two density grids on identical cell centers; atoms are
// compared separately by position and reported alongside.
inline L1Result l1_distance(const DensityGrid& g1, const DensityGrid& g2) {
  if (g1.centers.size() != g2.centers.size() || g1.centers.empty()) {
    throw domain_error("l1_distance: mismatched grids");
  }
  const double dx = g1.dx();
  const double tol = 1e-9 * std::max(1.0, std::abs(g1.centers.back()));
  for (std::size_t i = 0; i < g1.centers.size(); ++i) {
    if (std::abs(g1.centers[i] - g2.centers[i]) > tol) {
      throw domain_error("l1_distance: mismatched grids");
    }
  }
  L1Result r;
  for (std::size_t i = 0; i < g1.values.size(); ++i) {
    r.density += std::abs(g1.values[i] - g2.values[i]);
  }
  r.density *= dx;

  // pair atoms by position (within tol); unmatched atoms count in full
  std::vector<std::pair<double, double>> deltas;  // (position, signed mass)
  auto add = [&](double pos, double mass) {
    for (auto& d : deltas) {
      if (std::abs(d.first - pos) <= tol) {
        d.second += mass;
        return;
      }
    }
    deltas.emplace_back(pos, mass);
  };
  for (const auto& a : g1.atoms) add(a.position, a.mass);
  for (const auto& a : g2.atoms) add(a.position, -a.mass);
  for (const auto& d : deltas) r.atoms += std::abs(d.second);
  return r;
}

// One-sample Kolmogorov-Smirnov statistic against a law given by its CDF and
// the CDF's left limit (they differ at atoms).  Samples must be sorted.
template <class CdfAt, class CdfLeft>
double ks_distance(std::span<const double> sorted_samples, CdfAt&& cdf_at,
                   CdfLeft&& cdf_left) {
  const std::size_t n = sorted_samples.size();
  if (n == 0) throw domain_error("ks_distance: no samples");
  const double dn = static_cast<double>(n);
  double d = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && sorted_samples[j] == sorted_samples[i]) ++j;
    const double v = sorted_samples[i];
    d = std::max(d, std::abs(static_cast<double>(i) / dn - cdf_left(v)));
    d = std::max(d, std::abs(static_cast<double>(j) / dn - cdf_at(v)));
    i = j;
  }
  return d;
}

// Continuous-law overload: left limit equals the CDF.
template <class CdfAt>
double ks_distance(std::span<const double> sorted_samples, CdfAt&& cdf_at) {
  return ks_distance(sorted_samples, cdf_at, cdf_at);
}

// Two-sample Kolmogorov-Smirnov statistic; both inputs sorted.
inline double ks_two_sample(std::span<const double> a,
                            std::span<const double> b) {
  if (a.empty() || b.empty()) throw domain_error("ks_two_sample: no samples");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    const double v = (j >= b.size() || (i < a.size() && a[i] <= b[j])) ? a[i]
                                                                       : b[j];
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

// Right-continuous CDF of a density grid (piecewise-linear between cell
// edges, jumps at atoms), normalized by the grid's total mass.  Used for
// sample-vs-grid KS comparisons.
class GridCdf {
 public:
  explicit GridCdf(const DensityGrid& g)
      : dx_(g.dx()), x_first_(g.centers.empty() ? 0.0 : g.centers.front()) {
    if (g.centers.size() < 2) throw domain_error("GridCdf: need >= 2 cells");
    cum_.resize(g.values.size() + 1, 0.0);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      cum_[i + 1] = cum_[i] + g.values[i] * dx_;
    }
    atoms_ = g.atoms;
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    double total = cum_.back();
    for (const auto& a : atoms_) total += a.mass;
    norm_ = total > 0.0 ? 1.0 / total : 1.0;
  }

  double at(double x) const { return eval(x, /*strict=*/false); }
  double left(double x) const { return eval(x, /*strict=*/true); }

 private:
  double eval(double x, bool strict) const {
    const double lo_edge = x_first_ - 0.5 * dx_;
    double f = 0.0;
    const double s = (x - lo_edge) / dx_;
    if (s > 0.0) {
      const auto cells = static_cast<double>(cum_.size() - 1);
      const double sc = std::min(s, cells);
      const auto i = static_cast<std::size_t>(sc);
      const std::size_t ii = std::min(i, cum_.size() - 2);
      f = cum_[ii] + (sc - static_cast<double>(ii)) * (cum_[ii + 1] - cum_[ii]);
    }
    for (const auto& a : atoms_) {
      if (strict ? (a.position < x) : (a.position <= x)) f += a.mass;
      if (a.position >= x) break;
    }
    return f * norm_;
  }

  double dx_, x_first_, norm_ = 1.0;
  std::vector<double> cum_;
  std::vector<Atom> atoms_;
};

struct FitResult {
  double exponent = 0.0;   // fitted slope
  double intercept = 0.0;  // value at log t = 0 (natural logs)
  double r_squared = 0.0;
  double stderr_ = 0.0;    // standard error of the slope
};

namespace detail {

inline FitResult ols(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  const double dn = static_cast<double>(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= dn;
  my /= dn;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw domain_error("fit: degenerate abscissae");
  FitResult fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ssr += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ssr / syy) : 1.0;
  fit.stderr_ = n > 2 ? std::sqrt(ssr / (dn - 2.0) / sxx) : 0.0;
  return fit;
}

}  // namespace detail

// Ordinary least squares on (log t, log value): power-law exponent fit.
inline FitResult fit_exponent(
    std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw domain_error("fit_exponent: need >= 3 points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [t, v] : points) {
    if (!(t > 0.0) || !(v > 0.0)) {
      throw domain_error("fit_exponent: need t > 0 and value > 0");
    }
    xs.push_back(std::log(t));
    ys.push_back(std::log(v));
  }
  return detail::ols(xs, ys);
}

// Ordinary least squares on (log t, value): logarithmic-growth fit.
inline FitResult fit_semilog(
    std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw domain_error("fit_semilog: need >= 3 points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [t, v] : points) {
    if (!(t > 0.0)) throw domain_error("fit_semilog: need t > 0");
    xs.push_back(std::log(t));
    ys.push_back(v);
  }
  return detail::ols(xs, ys);
}

}  // namespace teleswim
