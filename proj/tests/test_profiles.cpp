// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "teleswim/numerics.hpp"
#include "teleswim/profiles.hpp"

using namespace teleswim;

namespace {

// random profile zoo for property tests
TimeProfile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (rng() % 5) {
    case 0:
      return TimeProfile::constant();
    case 1:
      return TimeProfile::power_law(-1.0 + 3.0 * u(rng), 0.5 + u(rng));
    case 2:
      return TimeProfile::exponential_decay(0.2 + 2.0 * u(rng));
    case 3:
      return TimeProfile::piecewise_constant({0.0, 1.0 + u(rng), 3.0},
                                             {1.0, 0.2 + u(rng), 0.5});
    default:
      return TimeProfile::tabulated(
          {{0.0, 1.0}, {1.0, 0.5 + u(rng)}, {2.5, u(rng)}, {6.0, 0.3}});
  }
}

}  // namespace

TEST_CASE("eval_w closed forms") {
  CHECK(eval_w(TimeProfile::constant(), 5.0) == 1.0);
  CHECK(eval_w(TimeProfile::exponential_decay(1.0), 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(eval_w(TimeProfile::power_law(0.5, 1.0), 3.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("eval_w domain and extrapolation errors") {
  CHECK_THROWS_AS(eval_w(TimeProfile::constant(), -0.1), domain_error);
  CHECK_THROWS_AS(eval_w(TimeProfile::constant(), std::nan("")), domain_error);
  auto tab = TimeProfile::tabulated({{0.0, 1.0}, {2.0, 0.5}});
  CHECK_THROWS_AS(eval_w(tab, 2.5), extrapolation_error);
  CHECK(eval_w(tab, 1.0) == doctest::Approx(0.75));
  CHECK(eval_w(tab, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("eval_tau closed forms") {
  CHECK(eval_tau(TimeProfile::constant(), 2.0) == 2.0);
  CHECK(eval_tau(TimeProfile::exponential_decay(1.0), 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(eval_tau(TimeProfile::power_law(0.5, 1.0), 3.0) ==
        doctest::Approx(2.0).epsilon(1e-14));
  // beta = 1 logarithmic branch
  CHECK(eval_tau(TimeProfile::power_law(1.0, 2.0), 6.0) ==
        doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-14));
  // piecewise: 1*1 + 0.5*1 + 0*(rest)
  auto pw = TimeProfile::piecewise_constant({0.0, 1.0, 2.0}, {1.0, 0.5, 0.0});
  CHECK(eval_tau(pw, 10.0) == doctest::Approx(1.5));
  CHECK(eval_tau(pw, 1.5) == doctest::Approx(1.25));
}

TEST_CASE("eval_t_of_tau inverts the time change") {
  CHECK(eval_t_of_tau(TimeProfile::constant(), 2.0) == 2.0);
  CHECK(eval_t_of_tau(TimeProfile::exponential_decay(1.0),
                      1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-9));

  SUBCASE("saturation carries tau_infinity") {
    const auto prof = TimeProfile::exponential_decay(2.0);
    CHECK(tau_infinity(prof) == doctest::Approx(0.5));
    try {
      eval_t_of_tau(prof, 0.6);
      FAIL("expected saturation_error");
    } catch (const saturation_error& e) {
      CHECK(e.tau_infinity == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(eval_t_of_tau(prof, 0.5), saturation_error);
  }

  SUBCASE("power law saturation for beta > 1") {
    const auto prof = TimeProfile::power_law(2.0, 1.0);
    CHECK(tau_infinity(prof) == doctest::Approx(1.0));
    CHECK_THROWS_AS(eval_t_of_tau(prof, 1.0), saturation_error);
    CHECK(eval_t_of_tau(prof, eval_tau(prof, 7.0)) ==
          doctest::Approx(7.0).epsilon(1e-9));
  }

  SUBCASE("piecewise flat stretch returns the leftmost preimage") {
    auto pw = TimeProfile::piecewise_constant({0.0, 1.0, 2.0}, {1.0, 0.0, 2.0});
    CHECK(eval_t_of_tau(pw, 1.0) == doctest::Approx(1.0));  // not 2.0
    CHECK(eval_t_of_tau(pw, 1.5) == doctest::Approx(2.25));
  }

  SUBCASE("tabulated: bisection and range errors") {
    auto tab = TimeProfile::tabulated({{0.0, 1.0}, {1.0, 0.5}, {3.0, 0.5}});
    const double tau = eval_tau(tab, 2.2);
    CHECK(eval_t_of_tau(tab, tau) == doctest::Approx(2.2).epsilon(1e-9));
    CHECK_THROWS_AS(eval_t_of_tau(tab, eval_tau(tab, 3.0) + 0.1),
                    extrapolation_error);
  }
}

TEST_CASE("eval_lambda_eff") {
  const auto exp1 = TimeProfile::exponential_decay(1.0);
  CHECK(eval_lambda_eff(RateProfile::proportional_to_speed(1.0), exp1, 0.3) ==
        1.0);
  // constant rate + exponential relaxation: lambda0 / (1 - gamma tau)
  CHECK(eval_lambda_eff(RateProfile::constant_rate(1.0), exp1, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eval_lambda_eff(RateProfile::constant_rate(2.0),
                        TimeProfile::constant(), 7.0) == doctest::Approx(2.0));

  SUBCASE("w = 0 at the inverted point is a singularity") {
    auto pw = TimeProfile::piecewise_constant({0.0, 1.0}, {1.0, 0.0});
    CHECK_THROWS_AS(eval_lambda_eff(RateProfile::constant_rate(1.0), pw, 1.0),
                    singularity_error);
  }
}

TEST_CASE("tau properties on random profiles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 60; ++rep) {
    const auto prof = random_profile(rng);
    const double t_hi = prof.kind == ProfileKind::Tabulated ? 6.0 : 20.0;

    SUBCASE("nondecreasing with tau(0) = 0") {}
    CHECK(eval_tau(prof, 0.0) == 0.0);
    double prev = 0.0;
    for (int i = 1; i <= 16; ++i) {
      const double tau = eval_tau(prof, t_hi * i / 16.0);
      CHECK(tau >= prev - 1e-15);
      prev = tau;
    }

    // round trip t -> tau -> t (skip flat stretches, where the inverse is
    // the leftmost preimage by contract)
    const double t = t_hi * (0.05 + 0.9 * u(rng));
    if (eval_w(prof, t) > 1e-6) {
      const double back = eval_t_of_tau(prof, eval_tau(prof, t));
      CHECK(back == doctest::Approx(t).epsilon(1e-9));
    }

    // closed-form tau agrees with adaptive quadrature of w
    const double quad = integrate_adaptive(
        [&](double s) { return eval_w(prof, s); }, 0.0, t, 1e-11);
    CHECK(eval_tau(prof, t) == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("rate bounds and integrated rate") {
  const auto exp1 = TimeProfile::exponential_decay(1.0);
  const auto prop = RateProfile::proportional_to_speed(2.0);
  CHECK(rate_upper_bound(prop, exp1, 0.5, 3.0) ==
        doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(rate_upper_bound(RateProfile::constant_rate(3.0), exp1, 0.0, 1.0) ==
        3.0);
  // increasing speed: bound sits at the right endpoint
  const auto grow = TimeProfile::power_law(-1.0, 1.0);
  CHECK(rate_upper_bound(prop, grow, 1.0, 3.0) == doctest::Approx(8.0));

  CHECK(integrated_rate(prop, exp1, 0.0, 1.0) ==
        doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-14));
  CHECK(integrated_rate(RateProfile::constant_rate(3.0), exp1, 1.0, 2.0) ==
        doctest::Approx(3.0));

  SUBCASE("explicit table: trapezoid is exact for the interpolant") {
    auto tab = RateProfile::explicit_table({{0.0, 1.0}, {2.0, 3.0}, {4.0, 0.0}});
    const double quad = integrate_adaptive(
        [&](double s) { return eval_lambda(tab, exp1, s); }, 0.3, 3.7, 1e-12);
    CHECK(integrated_rate(tab, exp1, 0.3, 3.7) ==
          doctest::Approx(quad).epsilon(1e-10));
    CHECK(rate_upper_bound(tab, exp1, 0.5, 3.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(integrated_rate(tab, exp1, 0.0, 5.0), extrapolation_error);
  }
}

TEST_CASE("profile construction rejects bad inputs") {
  CHECK_THROWS_AS(TimeProfile::exponential_decay(0.0), domain_error);
  CHECK_THROWS_AS(TimeProfile::power_law(0.5, 0.0), domain_error);
  CHECK_THROWS_AS(TimeProfile::piecewise_constant({0.5, 1.0}, {1.0, 1.0}),
                  domain_error);
  CHECK_THROWS_AS(TimeProfile::piecewise_constant({0.0, 1.0}, {1.0, -1.0}),
                  domain_error);
  CHECK_THROWS_AS(TimeProfile::tabulated({{0.0, 1.0}}), domain_error);
  CHECK_THROWS_AS(TimeProfile::tabulated({{0.5, 1.0}, {1.0, 1.0}}),
                  domain_error);
  CHECK_THROWS_AS(RateProfile::proportional_to_speed(-1.0), domain_error);
  CHECK_THROWS_AS(RateProfile::explicit_table({{0.0, 1.0}}), domain_error);
}
