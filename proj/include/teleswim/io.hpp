// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON (de)serialization of configuration objects and the fixed CSV schemas:
//   density:  x,density
//   msd:      t,msd,stderr
//   charfun:  k,re,im
//   ensemble: seed,n_tumbles,final_position
#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "teleswim/analytic.hpp"
#include "teleswim/errors.hpp"
#include "teleswim/fractional.hpp"
#include "teleswim/grid.hpp"
#include "teleswim/montecarlo.hpp"
#include "teleswim/profiles.hpp"
#include "teleswim/version.hpp"

namespace teleswim {

using json = nlohmann::json;

namespace detail {

inline double get_number(const json& j, const char* key, double fallback,
                         bool required = false) {
  if (!j.contains(key)) {
    if (required) {
      throw config_error(std::string("missing required field '") + key + "'");
    }
    return fallback;
  }
  if (!j.at(key).is_number()) {
    throw config_error(std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

inline std::vector<std::pair<double, double>> get_pairs(const json& j,
                                                        const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw config_error(std::string("field '") + key +
                       "' must be an array of [t, value] pairs");
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2) {
      throw config_error(std::string("field '") + key +
                         "' must contain [t, value] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace detail

inline json profile_to_json(const TimeProfile& p) {
  json j;
  switch (p.kind) {
    case ProfileKind::Constant:
      j["kind"] = "constant";
      break;
    case ProfileKind::PowerLaw:
      j["kind"] = "power_law";
      j["beta"] = p.beta;
      j["t_ref"] = p.t_ref;
      break;
    case ProfileKind::ExponentialDecay:
      j["kind"] = "exponential_decay";
      j["gamma"] = p.gamma;
      break;
    case ProfileKind::PiecewiseConstant:
      j["kind"] = "piecewise_constant";
      j["breakpoints"] = p.breakpoints;
      j["values"] = p.values;
      break;
    case ProfileKind::Tabulated: {
      j["kind"] = "tabulated";
      json s = json::array();
      for (const auto& [t, w] : p.samples) s.push_back({t, w});
      j["samples"] = s;
      break;
    }
  }
  return j;
}

inline TimeProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw config_error("profile: expected an object with a 'kind' string");
  }
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") return TimeProfile::constant();
    if (kind == "power_law") {
      return TimeProfile::power_law(
          detail::get_number(j, "beta", 0.0, /*required=*/true),
          detail::get_number(j, "t_ref", 1.0));
    }
    if (kind == "exponential_decay") {
      return TimeProfile::exponential_decay(
          detail::get_number(j, "gamma", 1.0, /*required=*/true));
    }
    if (kind == "piecewise_constant") {
      if (!j.contains("breakpoints") || !j.contains("values")) {
        throw config_error(
            "piecewise_constant profile needs 'breakpoints' and 'values'");
      }
      return TimeProfile::piecewise_constant(
          j.at("breakpoints").get<std::vector<double>>(),
          j.at("values").get<std::vector<double>>());
    }
    if (kind == "tabulated") {
      return TimeProfile::tabulated(detail::get_pairs(j, "samples"));
    }
  } catch (const domain_error& e) {
    throw config_error(std::string("profile: ") + e.what());
  }
  throw config_error(
      "profile: unknown kind '" + kind +
      "' (expected constant | power_law | exponential_decay | "
      "piecewise_constant | tabulated)");
}

inline json rate_to_json(const RateProfile& r) {
  json j;
  switch (r.mode) {
    case RateMode::ProportionalToSpeed:
      j["mode"] = "proportional";
      break;
    case RateMode::ConstantRate:
      j["mode"] = "constant";
      break;
    case RateMode::Explicit: {
      j["mode"] = "explicit";
      json s = json::array();
      for (const auto& [t, v] : r.samples) s.push_back({t, v});
      j["samples"] = s;
      break;
    }
  }
  return j;
}

// lambda0 comes from the telegraph parameters; the rate object only selects
// the coupling mode (plus samples for the explicit mode).
inline RateProfile rate_from_json(const json& j, double lambda0) {
  if (!j.is_object() || !j.contains("mode") || !j.at("mode").is_string()) {
    throw config_error("rate: expected an object with a 'mode' string");
  }
  const std::string mode = j.at("mode").get<std::string>();
  try {
    if (mode == "proportional") return RateProfile::proportional_to_speed(lambda0);
    if (mode == "constant") return RateProfile::constant_rate(lambda0);
    if (mode == "explicit") {
      return RateProfile::explicit_table(detail::get_pairs(j, "samples"));
    }
  } catch (const domain_error& e) {
    throw config_error(std::string("rate: ") + e.what());
  }
  throw config_error("rate: unknown mode '" + mode +
                     "' (expected proportional | constant | explicit)");
}

inline json params_to_json(const TelegraphParams& p) {
  return json{{"c0", p.c0}, {"lambda0", p.lambda0}, {"x0", p.x0}};
}

inline TelegraphParams params_from_json(const json& j) {
  TelegraphParams p;
  p.c0 = detail::get_number(j, "c0", 1.0);
  p.lambda0 = detail::get_number(j, "lambda0", 1.0);
  p.x0 = detail::get_number(j, "x0", 0.0);
  try {
    p.validate();
  } catch (const domain_error& e) {
    throw config_error(std::string("params: ") + e.what());
  }
  return p;
}

inline json gridspec_to_json(const GridSpec& g) {
  return json{{"x_min", g.x_min},
              {"x_max", g.x_max},
              {"n_cells", g.n_cells},
              {"cfl", g.cfl}};
}

inline GridSpec gridspec_from_json(const json& j) {
  GridSpec g;
  g.x_min = detail::get_number(j, "x_min", g.x_min);
  g.x_max = detail::get_number(j, "x_max", g.x_max);
  g.n_cells = static_cast<int>(detail::get_number(j, "n_cells", g.n_cells));
  g.cfl = detail::get_number(j, "cfl", g.cfl);
  try {
    g.validate();
  } catch (const domain_error& e) {
    throw config_error(std::string("grid: ") + e.what());
  }
  return g;
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open output file: " + path);
  return out;
}

}  // namespace detail

inline void write_density_csv(const std::string& path, const DensityGrid& g) {
  auto out = detail::open_out(path);
  out << "x,density\n";
  for (std::size_t i = 0; i < g.centers.size(); ++i) {
    out << detail::fmt_double(g.centers[i]) << ','
        << detail::fmt_double(g.values[i]) << '\n';
  }
}

inline void write_msd_csv(const std::string& path,
                          std::span<const MsdPoint> points) {
  auto out = detail::open_out(path);
  out << "t,msd,stderr\n";
  for (const auto& p : points) {
    out << detail::fmt_double(p.t) << ',' << detail::fmt_double(p.msd) << ','
        << detail::fmt_double(p.stderr_) << '\n';
  }
}

inline void write_charfun_csv(const std::string& path, const CharFunGrid& g) {
  auto out = detail::open_out(path);
  out << "k,re,im\n";
  for (std::size_t i = 0; i < g.wavenumbers.size(); ++i) {
    out << detail::fmt_double(g.wavenumbers[i]) << ','
        << detail::fmt_double(g.values[i].real()) << ','
        << detail::fmt_double(g.values[i].imag()) << '\n';
  }
}

inline void write_ensemble_csv(const std::string& path,
                               const PathEnsemble& ens) {
  auto out = detail::open_out(path);
  out << "seed,n_tumbles,final_position\n";
  for (std::size_t i = 0; i < ens.n_paths(); ++i) {
    out << derive_seed(ens.base_seed, i) << ',' << ens.tumble_counts[i] << ','
        << detail::fmt_double(ens.final_positions[i]) << '\n';
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  auto out = detail::open_out(path);
  out << j.dump(2) << '\n';
}

// Common metadata block embedded in every JSON sidecar.
inline json tool_metadata() {
  return json{{"tool", "teleswim"},
              {"version", version_string},
              {"rng", rng_version}};
}

}  // namespace teleswim
