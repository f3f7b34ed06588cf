// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "teleswim/analytic.hpp"
#include "teleswim/numerics.hpp"

using namespace teleswim;

namespace {

const TelegraphParams kUnit{1.0, 1.0, 0.0};

double ac_mass_quadrature(const TelegraphParams& p, const TimeProfile& prof,
                          double t, double abs_tol = 1e-9) {
  const LawAtTime law = law_at(p, prof, t);
  return integrate_adaptive(
      [&](double x) { return density_ac(p, prof, x, t); },
      p.x0 - law.front, p.x0 + law.front, abs_tol);
}

}  // namespace

TEST_CASE("boundary atoms") {
  SUBCASE("classical, t = 1") {
    const auto [l, r] = boundary_atoms(kUnit, TimeProfile::constant(), 1.0);
    CHECK(l.position == doctest::Approx(-1.0));
    CHECK(r.position == doctest::Approx(1.0));
    CHECK(l.mass == doctest::Approx(0.18393972058572117).epsilon(1e-14));
    CHECK(r.mass == l.mass);
  }
  SUBCASE("no tumbling: half mass on each front") {
    TelegraphParams p{1.0, 0.0, 0.0};
    const auto [l, r] = boundary_atoms(p, TimeProfile::constant(), 3.0);
    CHECK(l.position == doctest::Approx(-3.0));
    CHECK(r.mass == doctest::Approx(0.5));
  }
  SUBCASE("composed closed forms") {
    TelegraphParams p{2.0, 1.0, 0.0};
    const double tau = 1.0 - std::exp(-10.0);
    const auto [l, r] =
        boundary_atoms(p, TimeProfile::exponential_decay(1.0), 10.0);
    CHECK(r.position == doctest::Approx(2.0 * tau).epsilon(1e-14));
    CHECK(r.mass == doctest::Approx(0.5 * std::exp(-tau)).epsilon(1e-14));
  }
}

TEST_CASE("density values and errors") {
  const auto cprof = TimeProfile::constant();
  CHECK(density_ac(kUnit, cprof, 2.0, 1.0) == 0.0);   // outside support
  CHECK(density_ac(kUnit, cprof, 1.0, 1.0) == 0.0);   // on the front
  // oracle value (e^{-1}/2)(I0(1) + I1(1)) for the center of the classical
  // law; cross-checked against the finite-difference solver in the pde suite
  // and against Monte Carlo in the montecarlo suite
  CHECK(density_ac(kUnit, cprof, 0.0, 1.0) ==
        doctest::Approx(0.3368350114716744).epsilon(1e-12));
  CHECK_THROWS_AS(density_ac(kUnit, cprof, 0.0, 0.0), domain_error);
  CHECK_THROWS_AS(density_ac(kUnit, cprof, 0.0, -1.0), domain_error);
  TelegraphParams ballistic{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(density_ac(ballistic, cprof, 0.0, 1.0),
                  degenerate_law_error);
}

TEST_CASE("law depends on t only through tau") {
  const auto eprof = TimeProfile::exponential_decay(1.0);
  const auto cprof = TimeProfile::constant();
  // same tau under two different profiles gives the same density pointwise
  const double t_exp = 2.5;
  const double tau = eval_tau(eprof, t_exp);
  for (double x : {-0.6, -0.21, 0.0, 0.37, 0.8}) {
    if (std::abs(x) >= tau) continue;
    CHECK(density_ac(kUnit, eprof, x, t_exp) ==
          doctest::Approx(density_ac(kUnit, cprof, x, tau)).epsilon(1e-12));
  }
  // stationary limit: for large t the exponential-decay law freezes at tau = 1
  CHECK(density_ac(kUnit, eprof, 0.3, 40.0) ==
        doctest::Approx(density_ac(kUnit, eprof, 0.3, 80.0)).epsilon(1e-12));
  CHECK(density_ac(kUnit, eprof, 0.3, 40.0) ==
        doctest::Approx(density_ac(kUnit, cprof, 0.3, 1.0)).epsilon(1e-10));
}

TEST_CASE("symmetry about x0") {
  TelegraphParams p{1.3, 0.7, 0.4};
  const auto prof = TimeProfile::power_law(0.5, 1.0);
  for (double y : {0.1, 0.33, 0.71, 1.0}) {
    CHECK(density_ac(p, prof, p.x0 + y, 2.0) ==
          density_ac(p, prof, p.x0 - y, 2.0));
  }
}

TEST_CASE("normalization on randomized parameters") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    TelegraphParams p;
    p.c0 = std::exp(std::log(0.1) + u(rng) * std::log(100.0));
    p.lambda0 = std::exp(std::log(0.1) + u(rng) * std::log(100.0));
    p.x0 = -1.0 + 2.0 * u(rng);
    TimeProfile prof;
    switch (rep % 3) {
      case 0: prof = TimeProfile::constant(); break;
      case 1: prof = TimeProfile::exponential_decay(0.2 + 1.8 * u(rng)); break;
      default: prof = TimeProfile::power_law(-1.0 + 3.0 * u(rng)); break;
    }
    const double t = 0.1 + 19.9 * u(rng);
    const LawAtTime law = law_at(p, prof, t);
    const double total = 2.0 * law.atom_mass + ac_mass_quadrature(p, prof, t);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(2.0 * law.atom_mass + law.ac_mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("second moment consistency") {
  const auto prof = TimeProfile::exponential_decay(0.5);
  TelegraphParams p{1.5, 2.0, -0.3};
  const double t = 1.7;
  const LawAtTime law = law_at(p, prof, t);
  const double quad = integrate_adaptive(
      [&](double x) {
        const double d = x - p.x0;
        return d * d * density_ac(p, prof, x, t);
      },
      p.x0 - law.front, p.x0 + law.front, 1e-10);
  const double total = quad + 2.0 * law.atom_mass * law.front * law.front;
  CHECK(total == doctest::Approx(msd(p, prof, t)).epsilon(1e-6));
}

TEST_CASE("cdf") {
  const auto cprof = TimeProfile::constant();
  CHECK(cdf(kUnit, cprof, -1.5, 1.0) == 0.0);
  CHECK(cdf(kUnit, cprof, 1.0, 1.0) == 1.0);
  CHECK(cdf(kUnit, cprof, 5.0, 1.0) == 1.0);
  CHECK(cdf(kUnit, cprof, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  // right-continuity at the left atom
  CHECK(cdf(kUnit, cprof, -1.0, 1.0) ==
        doctest::Approx(0.18393972058572117).epsilon(1e-9));
  CHECK_THROWS_AS(cdf(TelegraphParams{1.0, 0.0, 0.0}, cprof, 0.0, 1.0),
                  degenerate_law_error);
}

TEST_CASE("AnalyticCdf matches direct quadrature") {
  const auto prof = TimeProfile::exponential_decay(1.0);
  const AnalyticCdf law(kUnit, prof, 2.0);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.1, 1.1);
  for (int i = 0; i < 25; ++i) {
    const double x = u(rng);
    CHECK(law.at(x) == doctest::Approx(cdf(kUnit, prof, x, 2.0)).epsilon(1e-7));
  }
  const double front = law.law().front;
  const double am = law.law().atom_mass;
  CHECK(law.left(-front) == 0.0);
  CHECK(law.at(-front) == doctest::Approx(am).epsilon(1e-9));
  CHECK(law.left(front) == doctest::Approx(1.0 - am).epsilon(1e-7));
  CHECK(law.at(front) == 1.0);
}

TEST_CASE("msd closed form") {
  const auto cprof = TimeProfile::constant();
  CHECK(msd(kUnit, cprof, 1.0) ==
        doctest::Approx(0.5676676416183063).epsilon(1e-14));
  CHECK(msd(kUnit, cprof, 0.0) == 0.0);
  // ballistic short-time behavior
  const double t = 1e-6;
  CHECK(msd(kUnit, cprof, t) == doctest::Approx(t * t).epsilon(1e-5));
  // continuity across the Taylor switch at u = 1e-4
  const double below = msd_at_tau(kUnit, 1e-4 * (1.0 - 1e-9));
  const double above = msd_at_tau(kUnit, 1e-4 * (1.0 + 1e-9));
  CHECK(below == doctest::Approx(above).epsilon(1e-10));
  // lambda0 = 0 degenerates to the ballistic square
  TelegraphParams p{2.0, 0.0, 0.0};
  CHECK(msd(p, cprof, 3.0) == doctest::Approx(36.0));
}

TEST_CASE("confined msd limit for exponential decay, proportional rate") {
  const auto prof = TimeProfile::exponential_decay(1.0);
  const double limit = msd_at_tau(kUnit, 1.0);
  CHECK(limit ==
        doctest::Approx(0.5 * (2.0 - 1.0 + std::exp(-2.0))).epsilon(1e-14));
  double prev = 0.0;
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
    const double m = msd(kUnit, prof, t);
    CHECK(m > prev);       // monotone from below
    CHECK(m <= limit * (1.0 + 1e-12));
    prev = m;
  }
  CHECK(msd(kUnit, prof, 40.0) == doctest::Approx(limit).epsilon(1e-10));
}

TEST_CASE("stationary msd of the constant-rate light-switch scenario") {
  // cross-check the closed form against direct integration of the second
  // moment equation m'' + 2 lambda_eff m' = 2 c0^2 in the tau clock
  const double c0 = 1.3, l0 = 0.8, gamma = 0.6;
  const double q = 2.0 * l0 / gamma;
  // m_inf = int_0^{1/gamma} v(tau) dtau with
  // v(tau) = 2 c0^2 (1-g tau)^q * (1 - (1-g tau)^{1-q}) / (g (1-q))
  const double quad = integrate_adaptive(
      [&](double tau) {
        const double r = 1.0 - gamma * tau;
        return 2.0 * c0 * c0 * std::pow(r, q) *
               (1.0 - std::pow(r, 1.0 - q)) / (gamma * (1.0 - q));
      },
      0.0, (1.0 - 1e-12) / gamma, 1e-11);
  CHECK(stationary_msd_constant_rate(c0, l0, gamma) ==
        doctest::Approx(quad).epsilon(1e-7));
  CHECK(stationary_msd_constant_rate(1.0, 1.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(2.0).regime == Regime::Confined);
  CHECK_FALSE(classify_regime(2.0).msd_exponent.has_value());
  CHECK(classify_regime(1.0).regime == Regime::Logarithmic);
  const auto sub = classify_regime(0.5);
  CHECK(sub.regime == Regime::Subdiffusive);
  CHECK(*sub.msd_exponent == doctest::Approx(0.5));
  const auto norm = classify_regime(0.0);
  CHECK(norm.regime == Regime::Normal);
  CHECK(*norm.msd_exponent == doctest::Approx(1.0));
  const auto super = classify_regime(-0.5);
  CHECK(super.regime == Regime::Superdiffusive);
  CHECK(*super.msd_exponent == doctest::Approx(1.5));
  CHECK_THROWS_AS(classify_regime(std::nan("")), domain_error);
}

TEST_CASE("analytic_density_grid matches the plain density away from fronts") {
  GridSpec gs{-2.0, 2.0, 400, 0.9};
  const auto centers = gs.centers();
  const auto g =
      analytic_density_grid(kUnit, TimeProfile::constant(), 1.0, centers, 5);
  CHECK(g.atoms.size() == 2);
  CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-3));
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (std::abs(std::abs(centers[i]) - 1.0) > 6 * gs.dx()) {
      if (std::abs(centers[i]) < 1.0) {
        CHECK(g.values[i] ==
              doctest::Approx(density_ac(kUnit, TimeProfile::constant(),
                                         centers[i], 1.0)));
      } else {
        CHECK(g.values[i] == 0.0);
      }
    }
  }
}
