// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Small shared numerical kernels: adaptive quadrature, monotone inversion,
// pairwise summation.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>

#include "teleswim/errors.hpp"

namespace teleswim {

namespace detail {

template <class F>
double adaptive_simpson_impl(F& f, double a, double fa, double b, double fb,
                             double m, double fm, double whole, double tol,
                             int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_impl(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                               depth - 1) +
         adaptive_simpson_impl(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                               depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          int max_depth = 48) {
  if (!(b >= a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw domain_error("integrate_adaptive: invalid interval");
  }
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_impl(f, a, fa, b, fb, m, fm, whole, abs_tol,
                                       max_depth);
}

// Smallest t >= 0 with g(t) >= target, for nondecreasing g with g(0) = 0.
// Expands the bracket geometrically, then bisects; converges to the leftmost
// preimage when g has flat stretches.
template <class G>
double invert_nondecreasing(G&& g, double target, double seed_scale,
                            double rel_tol = 1e-12) {
  if (target <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = seed_scale > 0.0 ? seed_scale : 1.0;
  int expand = 0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++expand > 2000 || !std::isfinite(hi)) {
      throw capability_error("invert_nondecreasing: target not reached");
    }
  }
  for (int i = 0; i < 200 && (hi - lo) > rel_tol * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Pairwise (cascade) summation; result independent of any outer work split.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace teleswim
