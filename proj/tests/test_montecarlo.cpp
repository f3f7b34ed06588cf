// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "teleswim/montecarlo.hpp"
#include "teleswim/stats.hpp"

using namespace teleswim;

namespace {

const TelegraphParams kUnit{1.0, 1.0, 0.0};

double binom_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

TEST_CASE("no tumbling is pure ballistic flight") {
  TelegraphParams p{2.0, 0.0, 0.5};
  const auto prof = TimeProfile::exponential_decay(1.0);
  const auto rate = RateProfile::proportional_to_speed(0.0);
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const Path path = simulate_path(p, prof, rate, 2.0, seed);
    CHECK(path.n_tumbles() == 0);
    const double tau = eval_tau(prof, 2.0);
    CHECK(path.final_position ==
          doctest::Approx(0.5 + path.initial_direction * 2.0 * tau)
              .epsilon(1e-14));
  }
}

TEST_CASE("ensemble determinism") {
  const auto prof = TimeProfile::exponential_decay(1.0);
  const auto rate = RateProfile::proportional_to_speed(1.0);
  const auto a = simulate_ensemble(kUnit, prof, rate, 2.0, 5000, 42, 1);
  const auto b = simulate_ensemble(kUnit, prof, rate, 2.0, 5000, 42, 2);
  const auto c = simulate_ensemble(kUnit, prof, rate, 2.0, 5000, 42, 4);
  CHECK(a.final_positions == b.final_positions);  // bitwise
  CHECK(a.final_positions == c.final_positions);
  CHECK(a.tumble_counts == b.tumble_counts);
  // and repeatable
  const auto again = simulate_ensemble(kUnit, prof, rate, 2.0, 5000, 42, 3);
  CHECK(a.final_positions == again.final_positions);
}

TEST_CASE("singleton ensemble equals simulate_path") {
  const auto prof = TimeProfile::constant();
  const auto rate = RateProfile::proportional_to_speed(1.0);
  const auto ens = simulate_ensemble(kUnit, prof, rate, 1.0, 1, 99);
  const Path path = simulate_path(kUnit, prof, rate, 1.0, derive_seed(99, 0));
  CHECK(ens.final_positions[0] == path.final_position);
  CHECK(ens.tumble_counts[0] == path.n_tumbles());
}

TEST_CASE("support bound holds for every path") {
  const auto prof = TimeProfile::power_law(0.5, 1.0);
  const auto rate = RateProfile::proportional_to_speed(1.0);
  const auto ens = simulate_ensemble(kUnit, prof, rate, 3.0, 20000, 7);
  const double front = ens.front;
  for (double x : ens.final_positions) {
    CHECK(std::abs(x) <= front + 1e-12);
  }
  // tumble times of a full path stay in (0, t_end]
  const Path path = simulate_path(kUnit, prof, rate, 3.0, 12345);
  for (std::size_t i = 0; i < path.n_tumbles(); ++i) {
    CHECK(path.tumble_times[i] > 0.0);
    CHECK(path.tumble_times[i] <= 3.0);
    if (i > 0) CHECK(path.tumble_times[i] > path.tumble_times[i - 1]);
  }
}

TEST_CASE("zero-tumble fraction matches the survival probability") {
  const auto rate = RateProfile::proportional_to_speed(1.0);
  const std::size_t n = 100000;
  SUBCASE("constant profile") {
    const auto ens =
        simulate_ensemble(kUnit, TimeProfile::constant(), rate, 1.0, n, 31415);
    std::size_t zero = 0;
    for (auto c : ens.tumble_counts) zero += (c == 0);
    const double expect = std::exp(-1.0);
    CHECK(std::abs(static_cast<double>(zero) / n - expect) <=
          3.0 * binom_sigma(expect, n));
  }
  SUBCASE("constant rate on exponential decay: Lambda = lambda0 t") {
    const auto ens = simulate_ensemble(
        kUnit, TimeProfile::exponential_decay(1.0),
        RateProfile::constant_rate(1.0), 2.0, n, 2718);
    std::size_t zero = 0;
    for (auto c : ens.tumble_counts) zero += (c == 0);
    const double expect = std::exp(-2.0);
    CHECK(std::abs(static_cast<double>(zero) / n - expect) <=
          3.0 * binom_sigma(expect, n));
  }
}

TEST_CASE("mean tumble count equals the integrated rate") {
  // constant rate 1 on a decaying speed profile to t = 10
  const auto ens = simulate_ensemble(kUnit, TimeProfile::exponential_decay(1.0),
                                     RateProfile::constant_rate(1.0), 10.0,
                                     100000, 161803);
  double mean = 0.0;
  for (auto c : ens.tumble_counts) mean += c;
  mean /= static_cast<double>(ens.n_paths());
  // Poisson: var = 10, so sigma of the mean is sqrt(10/n)
  CHECK(std::abs(mean - 10.0) <= 3.0 * std::sqrt(10.0 / 1e5));
}

TEST_CASE("symmetric law: sample mean near zero") {
  const auto ens = simulate_ensemble(kUnit, TimeProfile::constant(),
                                     RateProfile::proportional_to_speed(1.0),
                                     1.0, 100000, 577215);
  const double mean = pairwise_sum(ens.final_positions) / 1e5;
  const double sd = std::sqrt(msd_at_tau(kUnit, 1.0) / 1e5);
  CHECK(std::abs(mean) <= 3.0 * sd);
}

TEST_CASE("thinning reproduces exponential gaps for a constant rate") {
  // gather inter-event gaps across many paths and KS-test against Exp(2)
  const double lam = 2.0;
  const auto prof = TimeProfile::constant();
  const auto rate = RateProfile::constant_rate(lam);
  std::vector<double> gaps;
  gaps.reserve(120000);
  for (std::uint64_t s = 0; gaps.size() < 100000; ++s) {
    const Path path = simulate_path(kUnit, prof, rate, 50.0, derive_seed(40, s));
    double prev = 0.0;
    for (double t : path.tumble_times) {
      gaps.push_back(t - prev);
      prev = t;
    }
  }
  gaps.resize(100000);
  std::sort(gaps.begin(), gaps.end());
  const double d = ks_distance(std::span<const double>(gaps), [&](double x) {
    return x <= 0.0 ? 0.0 : 1.0 - std::exp(-lam * x);
  });
  // alpha = 0.001 critical value: 1.9495 / sqrt(n)
  CHECK(d < 1.9495 / std::sqrt(1e5));
}

TEST_CASE("time-change equivalence of the proportional case") {
  // thinning in t on a decaying profile vs constant-speed run to tau(t)
  const auto eprof = TimeProfile::exponential_decay(1.0);
  const auto rate = RateProfile::proportional_to_speed(1.0);
  const double t_end = 3.0;
  const double tau = eval_tau(eprof, t_end);
  auto a = simulate_ensemble(kUnit, eprof, rate, t_end, 100000, 101).final_positions;
  auto b = simulate_ensemble(kUnit, TimeProfile::constant(), rate, tau, 100000,
                             202).final_positions;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(ks_two_sample(a, b) < 0.01);
}

TEST_CASE("final positions match the analytic law") {
  const auto prof = TimeProfile::constant();
  const auto rate = RateProfile::proportional_to_speed(1.0);
  auto ens = simulate_ensemble(kUnit, prof, rate, 1.0, 100000, 999);

  SUBCASE("density at the origin, 0.01-wide bin") {
    std::size_t in_bin = 0;
    for (double x : ens.final_positions) in_bin += (std::abs(x) < 0.005);
    const double n = static_cast<double>(ens.n_paths());
    const double est = static_cast<double>(in_bin) / n / 0.01;
    const double exact = density_ac(kUnit, prof, 0.0, 1.0);
    const double sigma = std::sqrt(exact * 0.01 * (1.0 - exact * 0.01) / n) / 0.01;
    CHECK(std::abs(est - exact) <= 3.0 * sigma);
  }

  std::vector<double> sorted = ens.final_positions;
  std::sort(sorted.begin(), sorted.end());
  const AnalyticCdf law(kUnit, prof, 1.0);
  const double d = ks_distance(
      std::span<const double>(sorted),
      [&](double x) { return law.at(x); },
      [&](double x) { return law.left(x); });
  CHECK(d < 0.01);

  SUBCASE("histogram cdf stays close to the analytic cdf") {
    const auto h = empirical_histogram(ens, 200, /*include_atoms=*/true);
    const GridCdf hist(h);
    double sup = 0.0;
    for (int i = -120; i <= 120; ++i) {
      const double x = i / 100.0;
      sup = std::max(sup, std::abs(hist.at(x) - law.at(x)));
    }
    CHECK(sup < 0.01);
  }
}

TEST_CASE("TELESWIM_THREADS caps the worker count") {
  setenv("TELESWIM_THREADS", "1", 1);
  CHECK(resolve_worker_count(8) == 1);
  setenv("TELESWIM_THREADS", "3", 1);
  CHECK(resolve_worker_count(8) == 3);
  CHECK(resolve_worker_count(2) == 2);
  unsetenv("TELESWIM_THREADS");
  CHECK(resolve_worker_count(8) == 8);
}

TEST_CASE("empirical_histogram") {
  SUBCASE("crafted ballistic ensemble collapses to one atom") {
    PathEnsemble ens;
    ens.params = kUnit;
    ens.t_end = 1.0;
    ens.tau_end = 1.0;
    ens.front = 1.0;
    ens.final_positions.assign(100, 1.0);
    ens.tumble_counts.assign(100, 0);
    const auto h = empirical_histogram(ens, 10, /*include_atoms=*/true);
    CHECK(h.atoms[1].mass == doctest::Approx(1.0));
    CHECK(h.atoms[0].mass == 0.0);
    CHECK(pairwise_sum(h.values) == 0.0);
  }
  SUBCASE("without atoms all mass is binned") {
    const auto ens = simulate_ensemble(kUnit, TimeProfile::constant(),
                                       RateProfile::proportional_to_speed(1.0),
                                       1.0, 20000, 5);
    const auto h = empirical_histogram(ens, 40, /*include_atoms=*/false);
    CHECK(h.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.atoms.empty());
  }
  SUBCASE("errors") {
    PathEnsemble empty;
    CHECK_THROWS_AS(empirical_histogram(empty, 10, true), domain_error);
    const auto ens = simulate_ensemble(kUnit, TimeProfile::constant(),
                                       RateProfile::proportional_to_speed(1.0),
                                       1.0, 10, 5);
    CHECK_THROWS_AS(empirical_histogram(ens, 1, true), domain_error);
  }
}

TEST_CASE("empirical_msd") {
  const auto prof = TimeProfile::constant();
  const auto rate = RateProfile::proportional_to_speed(1.0);
  const double times[3] = {0.0, 0.5, 1.0};
  const auto pts = empirical_msd(kUnit, prof, rate, times, 100000, 4242);
  CHECK(pts[0].t == 0.0);
  CHECK(pts[0].msd == 0.0);
  CHECK(pts[0].stderr_ == 0.0);
  for (int i : {1, 2}) {
    const double exact = msd(kUnit, prof, times[i]);
    CHECK(std::abs(pts[i].msd - exact) <= 3.0 * pts[i].stderr_);
  }
  CHECK(msd(kUnit, prof, 1.0) == doctest::Approx(0.5676676416183063));
}

TEST_CASE("explicit rate tables simulate like their constant equivalent") {
  const auto prof = TimeProfile::constant();
  const auto tab =
      RateProfile::explicit_table({{0.0, 1.0}, {5.0, 1.0}});
  auto a = simulate_ensemble(kUnit, prof, tab, 2.0, 50000, 11).final_positions;
  auto b = simulate_ensemble(kUnit, prof, RateProfile::constant_rate(1.0), 2.0,
                             50000, 22).final_positions;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(ks_two_sample(a, b) < 0.015);
}

TEST_CASE("seed derivation is splitmix64") {
  // frozen values of the documented mixing function
  CHECK(derive_seed(0, 0) == 16294208416658607535ull);
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("argument validation") {
  const auto prof = TimeProfile::constant();
  const auto rate = RateProfile::proportional_to_speed(1.0);
  CHECK_THROWS_AS(simulate_path(kUnit, prof, rate, 0.0, 1), domain_error);
  CHECK_THROWS_AS(simulate_ensemble(kUnit, prof, rate, 1.0, 0, 1),
                  domain_error);
  const double bad_times[2] = {1.0, 0.5};
  CHECK_THROWS_AS(empirical_msd(kUnit, prof, rate, bad_times, 100, 1),
                  domain_error);
}
