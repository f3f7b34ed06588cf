// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// teleswim command-line tool: analytic densities, Monte Carlo ensembles,
// mean-square displacement, finite-difference solves, characteristic
// functions, and regime classification, driven by a JSON configuration.
//
// Exit codes: 0 ok, 1 runtime error, 2 configuration error, 3 quality error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teleswim/teleswim.hpp"

namespace ts = teleswim;
using ts::json;

namespace {

struct RunConfig {
  ts::TelegraphParams params;
  ts::TimeProfile profile = ts::TimeProfile::constant();
  json rate_json = {{"mode", "proportional"}};
  double alpha = 1.0;
  double t_end = 1.0;
  std::vector<double> times = {1.0};
  ts::GridSpec grid{-2.0, 2.0, 2000, 0.9};
  long n_paths = 100000;
  std::uint64_t base_seed = 20260808;
  int n_points = 4001;
  int n_bins = 200;
  double k_max = 4096.0;
  int n_k = 16384;
  double mollify_cells = 2.0;
  bool invert = false;
  std::vector<double> fit_window;
  std::string out_dir = "out";

  ts::RateProfile rate() const {
    return ts::rate_from_json(rate_json, params.lambda0);
  }

  json to_json() const {
    json j;
    j["params"] = ts::params_to_json(params);
    j["profile"] = ts::profile_to_json(profile);
    j["rate"] = rate_json;
    j["alpha"] = alpha;
    j["t_end"] = t_end;
    j["times"] = times;
    j["grid"] = ts::gridspec_to_json(grid);
    j["n_paths"] = n_paths;
    j["base_seed"] = base_seed;
    j["n_points"] = n_points;
    j["n_bins"] = n_bins;
    j["k_max"] = k_max;
    j["n_k"] = n_k;
    j["mollify_cells"] = mollify_cells;
    j["invert"] = invert;
    if (!fit_window.empty()) j["fit_window"] = fit_window;
    j["out_dir"] = out_dir;
    return j;
  }
};

json preset_json(const std::string& name) {
  if (name == "paper-classical") {
    return json::parse(R"({
      "params": {"c0": 1.0, "lambda0": 1.0, "x0": 0.0},
      "profile": {"kind": "constant"},
      "rate": {"mode": "proportional"},
      "t_end": 1.0, "times": [1.0],
      "n_paths": 100000,
      "grid": {"x_min": -2.0, "x_max": 2.0, "n_cells": 2000, "cfl": 0.9}
    })");
  }
  if (name == "light-switch") {
    return json::parse(R"({
      "params": {"c0": 1.0, "lambda0": 1.0, "x0": 0.0},
      "profile": {"kind": "exponential_decay", "gamma": 1.0},
      "rate": {"mode": "constant"},
      "t_end": 5.0, "times": [0.5, 1.0, 2.0, 5.0],
      "n_paths": 100000,
      "grid": {"x_min": -1.5, "x_max": 1.5, "n_cells": 2000, "cfl": 0.9}
    })");
  }
  if (name == "power-law-beta") {
    return json::parse(R"({
      "params": {"c0": 1.0, "lambda0": 1.0, "x0": 0.0},
      "profile": {"kind": "power_law", "beta": 0.5, "t_ref": 1.0},
      "rate": {"mode": "proportional"},
      "t_end": 10000.0,
      "times": [100, 158.5, 251.2, 398.1, 631.0, 1000, 1585, 2512, 3981, 6310, 10000],
      "fit_window": [100.0, 10000.0],
      "n_paths": 30000,
      "grid": {"x_min": -250.0, "x_max": 250.0, "n_cells": 4000, "cfl": 0.9}
    })");
  }
  throw ts::config_error("unknown preset '" + name +
                         "' (available: paper-classical, light-switch, "
                         "power-law-beta)");
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ts::config_error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "params") {
      cfg.params = ts::params_from_json(value);
    } else if (key == "profile") {
      cfg.profile = ts::profile_from_json(value);
    } else if (key == "rate") {
      cfg.rate_json = value;
    } else if (key == "alpha") {
      cfg.alpha = value.get<double>();
    } else if (key == "t_end") {
      cfg.t_end = value.get<double>();
    } else if (key == "times") {
      cfg.times = value.get<std::vector<double>>();
    } else if (key == "grid") {
      cfg.grid = ts::gridspec_from_json(value);
    } else if (key == "n_paths") {
      cfg.n_paths = value.get<long>();
    } else if (key == "base_seed") {
      cfg.base_seed = value.get<std::uint64_t>();
    } else if (key == "n_points") {
      cfg.n_points = value.get<int>();
    } else if (key == "n_bins") {
      cfg.n_bins = value.get<int>();
    } else if (key == "k_max") {
      cfg.k_max = value.get<double>();
    } else if (key == "n_k") {
      cfg.n_k = value.get<int>();
    } else if (key == "mollify_cells") {
      cfg.mollify_cells = value.get<double>();
    } else if (key == "invert") {
      cfg.invert = value.get<bool>();
    } else if (key == "fit_window") {
      cfg.fit_window = value.get<std::vector<double>>();
    } else if (key == "out_dir") {
      cfg.out_dir = value.get<std::string>();
    } else {
      throw ts::config_error("unknown config field '" + key + "'");
    }
  }
  cfg.rate();  // validate the rate block against lambda0 now
}

// Shared CLI options; values land in the config after presets and files.
struct CommonFlags {
  std::string config_file;
  std::string preset;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<long> paths;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON configuration file");
    cmd->add_option("--preset", preset,
                    "named preset (paper-classical | light-switch | "
                    "power-law-beta)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "base seed for Monte Carlo");
    cmd->add_option("--paths", paths, "number of Monte Carlo paths");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!preset.empty()) apply_json(cfg, preset_json(preset));
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ts::config_error("cannot read config file: " + config_file);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw ts::config_error(std::string("bad JSON: ") + e.what());
      }
      apply_json(cfg, j);
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.base_seed = *seed;
    if (paths) cfg.n_paths = *paths;
    return cfg;
  }
};

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

json sidecar(const RunConfig& cfg, const std::string& command) {
  json j = ts::tool_metadata();
  j["command"] = command;
  j["config"] = cfg.to_json();
  return j;
}

double trapezoid_mass(const ts::DensityGrid& g) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < g.centers.size(); ++i) {
    m += 0.5 * (g.values[i] + g.values[i + 1]) *
         (g.centers[i + 1] - g.centers[i]);
  }
  return m;
}

int cmd_density(const RunConfig& cfg) {
  const auto rate = cfg.rate();
  if (rate.mode != ts::RateMode::ProportionalToSpeed) {
    throw ts::config_error(
        "the analytic density holds only for the proportional rate mode; "
        "use the pde command for other rates");
  }
  if (!(cfg.params.lambda0 > 0.0)) {
    throw ts::config_error(
        "lambda0 = 0 gives a purely atomic law; use simulate or pde");
  }
  if (cfg.times.empty()) throw ts::config_error("times must not be empty");
  for (double t : cfg.times) {
    if (!(t > 0.0)) throw ts::config_error("density times must be > 0");
  }
  if (cfg.n_points < 3) throw ts::config_error("n_points must be >= 3");

  json meta = sidecar(cfg, "density");
  meta["outputs"] = json::array();
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    const double t = cfg.times[i];
    const ts::LawAtTime law = ts::law_at(cfg.params, cfg.profile, t);
    ts::DensityGrid g;
    g.time = t;
    // endpoints sit just inside the open support so the trapezoid mass of
    // the CSV is meaningful; the boundary atoms are listed in the sidecar
    const double span = law.front * (1.0 - 1e-9);
    g.centers.resize(static_cast<std::size_t>(cfg.n_points));
    g.values.resize(static_cast<std::size_t>(cfg.n_points));
    for (int m = 0; m < cfg.n_points; ++m) {
      const double x =
          cfg.params.x0 - span + 2.0 * span * m / (cfg.n_points - 1);
      g.centers[static_cast<std::size_t>(m)] = x;
      g.values[static_cast<std::size_t>(m)] =
          ts::density_ac(cfg.params, cfg.profile, x, t);
    }
    const std::string file = "density_" + std::to_string(i) + ".csv";
    ts::write_density_csv(out_path(cfg, file), g);
    const double mass_check = trapezoid_mass(g) + 2.0 * law.atom_mass;
    meta["outputs"].push_back(
        {{"file", file},
         {"time", t},
         {"tau", law.tau},
         {"front", law.front},
         {"atom_mass", law.atom_mass},
         {"ac_mass", law.ac_mass},
         {"normalization_check", mass_check}});
  }
  ts::write_json_file(out_path(cfg, "density.json"), meta);
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.n_paths < 1) throw ts::config_error("n_paths must be >= 1");
  if (!(cfg.t_end > 0.0)) throw ts::config_error("t_end must be > 0");
  const auto rate = cfg.rate();
  const auto ens = ts::simulate_ensemble(
      cfg.params, cfg.profile, rate, cfg.t_end,
      static_cast<std::size_t>(cfg.n_paths), cfg.base_seed);
  ts::write_ensemble_csv(out_path(cfg, "positions.csv"), ens);

  std::vector<double> centered(ens.n_paths());
  for (std::size_t i = 0; i < ens.n_paths(); ++i) {
    centered[i] = ens.final_positions[i] - cfg.params.x0;
  }
  const double n = static_cast<double>(ens.n_paths());
  const double mean = ts::pairwise_sum(centered) / n;
  for (double& v : centered) v *= v;
  const double m2 = ts::pairwise_sum(centered) / n;

  std::size_t zero_tumble = 0;
  for (auto c : ens.tumble_counts) zero_tumble += (c == 0);
  const double lam_total =
      ts::integrated_rate(rate, cfg.profile, 0.0, cfg.t_end);

  json meta = sidecar(cfg, "simulate");
  json summary;
  summary["n_paths"] = ens.n_paths();
  summary["t_end"] = cfg.t_end;
  summary["tau_end"] = ens.tau_end;
  summary["front"] = ens.front;
  summary["mean"] = mean + cfg.params.x0;
  summary["msd"] = m2;
  summary["atom_fraction"] = static_cast<double>(zero_tumble) / n;
  summary["expected_atom_fraction"] = std::exp(-lam_total);

  if (rate.mode == ts::RateMode::ProportionalToSpeed &&
      cfg.params.lambda0 > 0.0) {
    summary["msd_closed_form"] = ts::msd(cfg.params, cfg.profile, cfg.t_end);
    std::vector<double> sorted = ens.final_positions;
    std::sort(sorted.begin(), sorted.end());
    const ts::AnalyticCdf law(cfg.params, cfg.profile, cfg.t_end);
    summary["ks_vs_analytic"] = ts::ks_distance(
        std::span<const double>(sorted),
        [&](double x) { return law.at(x); },
        [&](double x) { return law.left(x); });
  }
  // confinement report: when the time change saturates, the walk freezes
  const double tau_inf = ts::tau_infinity(cfg.profile);
  if (std::isfinite(tau_inf)) {
    summary["confined"] = true;
    if (rate.mode == ts::RateMode::ConstantRate &&
        cfg.profile.kind == ts::ProfileKind::ExponentialDecay) {
      const double limit = ts::stationary_msd_constant_rate(
          cfg.params.c0, cfg.params.lambda0, cfg.profile.gamma);
      summary["msd_stationary_limit"] = limit;
      summary["msd_over_limit"] = m2 / limit;
    } else if (rate.mode == ts::RateMode::ProportionalToSpeed) {
      const double limit = ts::msd_at_tau(cfg.params, tau_inf);
      summary["msd_stationary_limit"] = limit;
      summary["msd_over_limit"] = m2 / limit;
    }
  } else {
    summary["confined"] = false;
  }
  meta["summary"] = summary;
  ts::write_json_file(out_path(cfg, "summary.json"), meta);
  return 0;
}

int cmd_msd(const RunConfig& cfg, bool with_mc, double beta_override) {
  RunConfig conf = cfg;
  if (!std::isnan(beta_override)) {
    if (conf.profile.kind != ts::ProfileKind::PowerLaw) {
      throw ts::config_error("--beta requires a power_law profile");
    }
    conf.profile = ts::TimeProfile::power_law(beta_override, conf.profile.t_ref);
  }
  if (conf.times.empty()) throw ts::config_error("times must not be empty");
  for (std::size_t i = 0; i < conf.times.size(); ++i) {
    if (!(conf.times[i] >= 0.0) ||
        (i > 0 && !(conf.times[i] > conf.times[i - 1]))) {
      throw ts::config_error("times must ascend and be >= 0");
    }
  }
  const auto rate = conf.rate();
  const bool closed_form =
      rate.mode == ts::RateMode::ProportionalToSpeed;

  json meta = sidecar(conf, "msd");
  std::vector<std::pair<double, double>> fit_points;

  if (closed_form) {
    std::vector<ts::MsdPoint> pts;
    for (double t : conf.times) {
      pts.push_back({t, ts::msd(conf.params, conf.profile, t), 0.0});
    }
    ts::write_msd_csv(out_path(conf, "msd.csv"), pts);
    for (const auto& p : pts) fit_points.emplace_back(p.t, p.msd);
  } else {
    meta["note"] =
        "closed-form msd requires the proportional rate mode; only the "
        "Monte Carlo estimate is produced";
  }

  if (with_mc || !closed_form) {
    if (conf.n_paths < 2) throw ts::config_error("n_paths must be >= 2");
    auto mc = ts::empirical_msd(conf.params, conf.profile, rate, conf.times,
                                static_cast<std::size_t>(conf.n_paths),
                                conf.base_seed);
    ts::write_msd_csv(out_path(conf, "msd_mc.csv"), mc);
    if (!closed_form) {
      for (const auto& p : mc) fit_points.emplace_back(p.t, p.msd);
    }
  }

  // exponent fit over the fit window (defaults to all positive points)
  std::vector<std::pair<double, double>> window_pts;
  const double lo = conf.fit_window.size() == 2 ? conf.fit_window[0] : 0.0;
  const double hi = conf.fit_window.size() == 2
                        ? conf.fit_window[1]
                        : std::numeric_limits<double>::infinity();
  for (const auto& p : fit_points) {
    if (p.first >= lo && p.first <= hi && p.first > 0.0 && p.second > 0.0) {
      window_pts.push_back(p);
    }
  }
  if (window_pts.size() >= 3) {
    const auto fit = ts::fit_exponent(window_pts);
    meta["fit"] = {{"exponent", fit.exponent},
                   {"intercept", fit.intercept},
                   {"r_squared", fit.r_squared},
                   {"stderr", fit.stderr_},
                   {"window", {lo, hi}},
                   {"n_points", window_pts.size()}};
  }
  if (conf.profile.kind == ts::ProfileKind::PowerLaw) {
    const auto rep = ts::classify_regime(conf.profile.beta);
    json r = {{"beta", rep.beta}, {"regime", ts::regime_name(rep.regime)}};
    if (rep.msd_exponent) r["msd_exponent"] = *rep.msd_exponent;
    meta["regime_prediction"] = r;
  }
  ts::write_json_file(out_path(conf, "msd.json"), meta);
  return 0;
}

int cmd_pde(const RunConfig& cfg) {
  if (!(cfg.t_end > 0.0)) throw ts::config_error("t_end must be > 0");
  const auto rate = cfg.rate();
  ts::PdeResult sol;
  try {
    sol = ts::solve_ab_system(cfg.params, cfg.profile, rate, cfg.grid,
                              cfg.t_end, /*front_window_cells=*/0);
  } catch (const ts::domain_error& e) {
    throw ts::config_error(e.what());
  }
  ts::write_density_csv(out_path(cfg, "pde.csv"), sol.density);

  json meta = sidecar(cfg, "pde");
  meta["scheme"] = "upwind transport in the tau clock, Strang-split exact "
                   "exchange";
  meta["n_steps"] = sol.n_steps;
  meta["mass_defect_per_step"] = sol.mass_defect_per_step;
  meta["mass_defect_total"] = sol.mass_defect_total;
  meta["front_sigma"] = sol.front_sigma;

  // front masses and, when the exact law applies, the L1 distance to it
  const double tau_end = ts::eval_tau(cfg.profile, cfg.t_end);
  const double front = cfg.params.c0 * tau_end;
  const int window = std::max(
      3, static_cast<int>(std::ceil(4.0 * sol.front_sigma / cfg.grid.dx())) + 1);
  ts::DensityGrid extracted = sol.density;
  ts::extract_front_atoms(extracted, cfg.params.x0 - front,
                          cfg.params.x0 + front, window);
  meta["front_window_cells"] = window;
  meta["front_masses"] = {extracted.atoms[0].mass, extracted.atoms[1].mass};
  if (rate.mode == ts::RateMode::ProportionalToSpeed &&
      cfg.params.lambda0 > 0.0) {
    const auto ref = ts::analytic_density_grid(
        cfg.params, cfg.profile, cfg.t_end, extracted.centers, window);
    const auto d = ts::l1_distance(extracted, ref);
    meta["l1_vs_analytic"] = {{"density", d.density}, {"atoms", d.atoms}};
  }
  ts::write_json_file(out_path(cfg, "pde.json"), meta);
  return 0;
}

int cmd_charfun(const RunConfig& cfg, bool invert_flag) {
  ts::FractionalParams fp;
  fp.alpha = cfg.alpha;
  fp.base = cfg.params;
  try {
    fp.validate();
  } catch (const ts::domain_error& e) {
    throw ts::config_error(e.what());
  }
  if (cfg.n_k < 64 || cfg.n_k % 2 != 0) {
    throw ts::config_error("n_k must be even and >= 64");
  }
  if (!(cfg.k_max > 0.0)) throw ts::config_error("k_max must be > 0");

  const auto grid =
      ts::charfun_grid(fp, cfg.profile, cfg.t_end, cfg.k_max, cfg.n_k);
  ts::write_charfun_csv(out_path(cfg, "charfun.csv"), grid);

  json meta = sidecar(cfg, "charfun");
  meta["tau"] = grid.tau;
  if (cfg.invert || invert_flag) {
    const auto inv = ts::invert_charfun(grid, cfg.mollify_cells);
    ts::write_density_csv(out_path(cfg, "charfun_density.csv"), inv.density);
    meta["inversion"] = {{"mass_defect", inv.mass_defect},
                         {"negativity_defect", inv.negativity_defect},
                         {"mollifier_width", inv.mollifier_width}};
    if (cfg.alpha < 1.0) {
      const auto probe = ts::second_moment_refinement(
          fp, cfg.profile, cfg.t_end, cfg.k_max,
          {cfg.n_k / 4, cfg.n_k / 2, cfg.n_k}, cfg.mollify_cells);
      meta["inversion"]["second_moments"] = probe.second_moments;
      meta["inversion"]["second_moment_converged"] = probe.converged;
    }
  }
  ts::write_json_file(out_path(cfg, "charfun.json"), meta);
  return 0;
}

int cmd_classify(double beta) {
  const auto rep = ts::classify_regime(beta);
  if (rep.msd_exponent) {
    std::printf("%s, exponent %g\n", ts::regime_name(rep.regime),
                *rep.msd_exponent);
  } else {
    std::printf("%s\n", ts::regime_name(rep.regime));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"run-and-tumble telegraph process toolkit"};
  app.require_subcommand(1);

  CommonFlags density_flags, simulate_flags, msd_flags, pde_flags,
      charfun_flags;

  auto* density = app.add_subcommand(
      "density", "closed-form density and boundary atoms (proportional rate)");
  density_flags.attach(density);
  std::vector<double> density_times;
  density->add_option("--times", density_times, "evaluation times");
  int density_points = 0;
  density->add_option("--points", density_points, "CSV sample count");

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo ensemble of paths");
  simulate_flags.attach(simulate);
  double simulate_t_end = std::nan("");
  simulate->add_option("--t-end", simulate_t_end, "simulation horizon");

  auto* msd = app.add_subcommand("msd", "mean square displacement curve");
  msd_flags.attach(msd);
  bool msd_mc = false;
  msd->add_flag("--mc", msd_mc, "add a Monte Carlo estimate");
  double msd_beta = std::nan("");
  msd->add_option("--beta", msd_beta, "override the power-law exponent");
  std::vector<double> msd_times;
  msd->add_option("--times", msd_times, "evaluation times");
  std::vector<double> msd_window;
  msd->add_option("--fit-window", msd_window, "fit window [lo hi]")
      ->expected(2);

  auto* pde = app.add_subcommand(
      "pde", "finite-difference solve of the two-direction system");
  pde_flags.attach(pde);
  double pde_t_end = std::nan("");
  pde->add_option("--t-end", pde_t_end, "solve horizon");
  std::vector<double> pde_domain;
  pde->add_option("--domain", pde_domain, "grid bounds [x_min x_max]")
      ->expected(2);
  int pde_cells = 0;
  pde->add_option("--cells", pde_cells, "grid cells");
  double pde_cfl = 0.0;
  pde->add_option("--cfl", pde_cfl, "Courant number in (0, 1]");

  auto* charfun = app.add_subcommand(
      "charfun", "characteristic function of the space-fractional process");
  charfun_flags.attach(charfun);
  double cf_alpha = std::nan("");
  charfun->add_option("--alpha", cf_alpha, "Riesz half-order in (0, 1]");
  double cf_kmax = 0.0;
  charfun->add_option("--k-max", cf_kmax, "wavenumber cutoff");
  int cf_nk = 0;
  charfun->add_option("--n-k", cf_nk, "wavenumber grid size (even, >= 64)");
  bool cf_invert = false;
  charfun->add_flag("--invert", cf_invert, "also invert to a density");
  double cf_mollify = std::nan("");
  charfun->add_option("--mollify", cf_mollify,
                      "mollifier width in grid cells (0 = raw)");
  double cf_t_end = std::nan("");
  charfun->add_option("--t-end", cf_t_end, "evaluation time");

  auto* classify =
      app.add_subcommand("classify", "diffusion regime for a power-law beta");
  double classify_beta = 0.0;
  classify->add_option("beta", classify_beta, "power-law exponent")
      ->required();

  try {
    app.parse(argc, argv);

    if (classify->parsed()) return cmd_classify(classify_beta);

    if (density->parsed()) {
      RunConfig cfg = density_flags.resolve();
      if (!density_times.empty()) cfg.times = density_times;
      if (density_points > 0) cfg.n_points = density_points;
      return cmd_density(cfg);
    }
    if (simulate->parsed()) {
      RunConfig cfg = simulate_flags.resolve();
      if (!std::isnan(simulate_t_end)) cfg.t_end = simulate_t_end;
      return cmd_simulate(cfg);
    }
    if (msd->parsed()) {
      RunConfig cfg = msd_flags.resolve();
      if (!msd_times.empty()) cfg.times = msd_times;
      if (msd_window.size() == 2) cfg.fit_window = msd_window;
      return cmd_msd(cfg, msd_mc, msd_beta);
    }
    if (pde->parsed()) {
      RunConfig cfg = pde_flags.resolve();
      if (!std::isnan(pde_t_end)) cfg.t_end = pde_t_end;
      if (pde_domain.size() == 2) {
        cfg.grid.x_min = pde_domain[0];
        cfg.grid.x_max = pde_domain[1];
      }
      if (pde_cells > 0) cfg.grid.n_cells = pde_cells;
      if (pde_cfl > 0.0) cfg.grid.cfl = pde_cfl;
      try {
        cfg.grid.validate();
      } catch (const ts::domain_error& e) {
        throw ts::config_error(e.what());
      }
      return cmd_pde(cfg);
    }
    if (charfun->parsed()) {
      RunConfig cfg = charfun_flags.resolve();
      if (!std::isnan(cf_alpha)) cfg.alpha = cf_alpha;
      if (cf_kmax > 0.0) cfg.k_max = cf_kmax;
      if (cf_nk > 0) cfg.n_k = cf_nk;
      if (!std::isnan(cf_mollify)) cfg.mollify_cells = cf_mollify;
      if (!std::isnan(cf_t_end)) cfg.t_end = cf_t_end;
      return cmd_charfun(cfg, cf_invert);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ts::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ts::quality_error& e) {
    std::cerr << "quality error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
