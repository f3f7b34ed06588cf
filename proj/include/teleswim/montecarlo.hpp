// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact stochastic simulation.  Tumble epochs are drawn by thinning against
// interval rate bounds (no time-stepping bias), and displacements between
// direction changes use the closed-form time change:
//   x(t2) - x(t1) = sigma * c0 * (tau(t2) - tau(t1)) at fixed direction sigma.
//
// Seeding: path i uses splitmix64(base_seed, i) to key an mt19937_64, so
// ensembles are reproducible for any worker count and execution order.
// Uniform variates come from the top 53 bits of the generator output, not
// from std::uniform_real_distribution, to keep streams platform-stable.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "teleswim/analytic.hpp"
#include "teleswim/errors.hpp"
#include "teleswim/grid.hpp"
#include "teleswim/numerics.hpp"
#include "teleswim/parallel.hpp"
#include "teleswim/profiles.hpp"

namespace teleswim {

// SplitMix64 finalizer; maps (base_seed, index) to an independent stream key.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class PathRng {
 public:
  explicit PathRng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // standard exponential
  double exponential() { return -std::log1p(-uniform()); }

  int direction() { return (eng_() & 1u) != 0 ? 1 : -1; }

 private:
  std::mt19937_64 eng_;
};

struct Path {
  std::uint64_t seed = 0;
  int initial_direction = 1;
  std::vector<double> tumble_times;  // ascending, in (0, t_end]
  double final_position = 0.0;

  std::size_t n_tumbles() const { return tumble_times.size(); }
};

struct PathEnsemble {
  TelegraphParams params;
  std::string profile_id;
  std::string rate_id;
  double t_end = 0.0;
  double tau_end = 0.0;
  double front = 0.0;  // c0 * tau_end
  std::uint64_t base_seed = 0;
  std::vector<double> final_positions;      // indexed by path
  std::vector<std::uint32_t> tumble_counts;  // indexed by path

  std::size_t n_paths() const { return final_positions.size(); }
};

namespace detail {

// Thinning against piecewise interval bounds.  The dominating rate is the
// sup of lambda over a lookahead window; windows are shortened so a bounded
// number of proposals is expected per window, which keeps strongly
// increasing rates efficient.  Calls on(t) at each accepted tumble epoch.
template <class OnTumble>
void walk_tumbles(const TimeProfile& profile, const RateProfile& rate,
                  double t_end, PathRng& rng, OnTumble&& on) {
  double t = 0.0;
  while (t < t_end) {
    double win_end = t_end;
    double bound = rate_upper_bound(rate, profile, t, win_end);
    if (!std::isfinite(bound)) {
      throw capability_error("walk_tumbles: unbounded rate on interval");
    }
    if (bound <= 0.0) return;  // rate is zero on the rest of the horizon
    if (bound * (win_end - t) > 16.0) {
      win_end = t + 16.0 / bound;
      bound = rate_upper_bound(rate, profile, t, win_end);
    }
    const double proposal = t + rng.exponential() / bound;
    if (proposal > win_end) {
      t = win_end;
      continue;
    }
    t = proposal;
    const double lam = eval_lambda(rate, profile, t);
    if (lam > bound * (1.0 + 1e-9)) {
      throw capability_error("walk_tumbles: rate bound violated");
    }
    if (rng.uniform() * bound < lam) on(t);
  }
}

}  // namespace detail

// One trajectory, with the tumble epochs recorded.
inline Path simulate_path(const TelegraphParams& params,
                          const TimeProfile& profile, const RateProfile& rate,
                          double t_end, std::uint64_t seed) {
  params.validate();
  if (!(t_end > 0.0)) throw domain_error("simulate_path: t_end must be > 0");
  PathRng rng(seed);
  Path path;
  path.seed = seed;
  path.initial_direction = rng.direction();
  int dir = path.initial_direction;
  double pos = params.x0;
  double tau_prev = 0.0;
  detail::walk_tumbles(profile, rate, t_end, rng, [&](double tf) {
    const double tau_f = eval_tau(profile, tf);
    pos += dir * params.c0 * (tau_f - tau_prev);
    tau_prev = tau_f;
    dir = -dir;
    path.tumble_times.push_back(tf);
  });
  pos += dir * params.c0 * (eval_tau(profile, t_end) - tau_prev);
  path.final_position = pos;
  return path;
}

// Positions of one trajectory at several ascending times <= t_end, without
// storing the tumble epochs.  Returns the tumble count.
inline std::uint32_t simulate_positions_at(const TelegraphParams& params,
                                           const TimeProfile& profile,
                                           const RateProfile& rate,
                                           std::span<const double> times,
                                           std::uint64_t seed,
                                           std::span<double> out) {
  params.validate();
  if (times.empty()) return 0;
  const double t_end = times.back();
  if (!(t_end > 0.0) || !(times.front() >= 0.0)) {
    throw domain_error("simulate_positions_at: times must be >= 0, last > 0");
  }
  PathRng rng(seed);
  int dir = rng.direction();
  double pos = params.x0;
  double tau_prev = 0.0;
  std::size_t ti = 0;
  std::uint32_t tumbles = 0;
  detail::walk_tumbles(profile, rate, t_end, rng, [&](double tf) {
    while (ti < times.size() && times[ti] <= tf) {
      out[ti] = pos + dir * params.c0 * (eval_tau(profile, times[ti]) - tau_prev);
      ++ti;
    }
    const double tau_f = eval_tau(profile, tf);
    pos += dir * params.c0 * (tau_f - tau_prev);
    tau_prev = tau_f;
    dir = -dir;
    ++tumbles;
  });
  while (ti < times.size()) {
    out[ti] = pos + dir * params.c0 * (eval_tau(profile, times[ti]) - tau_prev);
    ++ti;
  }
  return tumbles;
}

// N independent paths; path i is keyed by derive_seed(base_seed, i), so the
// result is identical for any worker count.
inline PathEnsemble simulate_ensemble(const TelegraphParams& params,
                                      const TimeProfile& profile,
                                      const RateProfile& rate, double t_end,
                                      std::size_t n_paths,
                                      std::uint64_t base_seed,
                                      unsigned workers = 0) {
  params.validate();
  if (n_paths < 1) throw domain_error("simulate_ensemble: n_paths must be >= 1");
  if (!(t_end > 0.0)) throw domain_error("simulate_ensemble: t_end must be > 0");
  PathEnsemble ens;
  ens.params = params;
  ens.profile_id = profile.describe();
  ens.rate_id = rate.describe();
  ens.t_end = t_end;
  ens.tau_end = eval_tau(profile, t_end);
  ens.front = params.c0 * ens.tau_end;
  ens.base_seed = base_seed;
  ens.final_positions.resize(n_paths);
  ens.tumble_counts.resize(n_paths);
  const double times[1] = {t_end};
  parallel_for_index(n_paths, workers, [&](std::size_t i) {
    double pos = 0.0;
    ens.tumble_counts[i] =
        simulate_positions_at(params, profile, rate, times,
                              derive_seed(base_seed, i), {&pos, 1});
    ens.final_positions[i] = pos;
  });
  return ens;
}

// Histogram of final positions over [x0 - front, x0 + front].  With
// include_atoms, zero-tumble paths are tallied as point masses at the exact
// fronts instead of being binned.
inline DensityGrid empirical_histogram(const PathEnsemble& ens, int n_bins,
                                       bool include_atoms) {
  if (ens.n_paths() == 0) throw domain_error("empirical_histogram: empty ensemble");
  if (n_bins < 2) throw domain_error("empirical_histogram: need n_bins >= 2");
  if (!(ens.front > 0.0)) {
    throw domain_error("empirical_histogram: degenerate support");
  }
  const double lo = ens.params.x0 - ens.front;
  const double hi = ens.params.x0 + ens.front;
  const double width = (hi - lo) / n_bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
  std::size_t atom_lo = 0, atom_hi = 0;
  for (std::size_t i = 0; i < ens.n_paths(); ++i) {
    if (include_atoms && ens.tumble_counts[i] == 0) {
      (ens.final_positions[i] > ens.params.x0 ? atom_hi : atom_lo) += 1;
      continue;
    }
    auto j = static_cast<long>((ens.final_positions[i] - lo) / width);
    j = std::max(0l, std::min<long>(j, n_bins - 1));
    counts[static_cast<std::size_t>(j)] += 1;
  }
  DensityGrid g;
  g.time = ens.t_end;
  g.centers.resize(static_cast<std::size_t>(n_bins));
  g.values.resize(static_cast<std::size_t>(n_bins));
  const double norm = 1.0 / (static_cast<double>(ens.n_paths()) * width);
  for (int j = 0; j < n_bins; ++j) {
    g.centers[static_cast<std::size_t>(j)] = lo + (j + 0.5) * width;
    g.values[static_cast<std::size_t>(j)] =
        static_cast<double>(counts[static_cast<std::size_t>(j)]) * norm;
  }
  if (include_atoms) {
    const double n = static_cast<double>(ens.n_paths());
    g.atoms = {Atom{lo, static_cast<double>(atom_lo) / n},
               Atom{hi, static_cast<double>(atom_hi) / n}};
  }
  return g;
}

struct MsdPoint {
  double t = 0.0;
  double msd = 0.0;
  double stderr_ = 0.0;
};

// Sample second moment about x0 at each sample time, with its standard
// error.  Paths are simulated once to the largest time; moments are reduced
// by pairwise summation over the path index, so results do not depend on the
// worker count.
inline std::vector<MsdPoint> empirical_msd(const TelegraphParams& params,
                                           const TimeProfile& profile,
                                           const RateProfile& rate,
                                           std::span<const double> sample_times,
                                           std::size_t n_paths,
                                           std::uint64_t base_seed,
                                           unsigned workers = 0) {
  params.validate();
  if (sample_times.empty()) throw domain_error("empirical_msd: no sample times");
  if (n_paths < 2) throw domain_error("empirical_msd: need n_paths >= 2");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (!(sample_times[i] >= 0.0) ||
        (i > 0 && !(sample_times[i] > sample_times[i - 1]))) {
      throw domain_error("empirical_msd: times must ascend and be >= 0");
    }
  }
  const std::size_t n_times = sample_times.size();
  std::vector<double> positions(n_times * n_paths);  // path-major rows
  parallel_for_index(n_paths, workers, [&](std::size_t i) {
    simulate_positions_at(params, profile, rate, sample_times,
                          derive_seed(base_seed, i),
                          {&positions[i * n_times], n_times});
  });

  std::vector<MsdPoint> out(n_times);
  std::vector<double> scratch(n_paths);
  const double n = static_cast<double>(n_paths);
  for (std::size_t k = 0; k < n_times; ++k) {
    for (std::size_t i = 0; i < n_paths; ++i) {
      const double d = positions[i * n_times + k] - params.x0;
      scratch[i] = d * d;
    }
    const double m2 = pairwise_sum(scratch) / n;
    for (std::size_t i = 0; i < n_paths; ++i) {
      const double d = scratch[i] - m2;
      scratch[i] = d * d;
    }
    const double var = pairwise_sum(scratch) / (n - 1.0);
    out[k] = MsdPoint{sample_times[k], m2, std::sqrt(var / n)};
  }
  return out;
}

}  // namespace teleswim
