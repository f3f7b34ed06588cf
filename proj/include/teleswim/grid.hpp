// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared density containers: cell-centered density values plus optional point
// masses (atoms), and the spatial grid specification of the PDE solver.
#pragma once

#include <cmath>
#include <vector>

#include "teleswim/errors.hpp"
#include "teleswim/numerics.hpp"

namespace teleswim {

struct Atom {
  double position = 0.0;
  double mass = 0.0;
};

struct DensityGrid {
  std::vector<double> centers;  // ascending, uniform spacing
  std::vector<double> values;   // density per unit length
  std::vector<Atom> atoms;
  double time = 0.0;

  double dx() const {
    return centers.size() > 1 ? centers[1] - centers[0] : 0.0;
  }

  double mass() const {
    double m = pairwise_sum(values) * dx();
    for (const auto& a : atoms) m += a.mass;
    return m;
  }
};

struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  int n_cells = 100;
  double cfl = 0.9;

  void validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
      throw domain_error("GridSpec: need x_min < x_max");
    }
    if (n_cells <= 1) {
      throw domain_error("GridSpec: need n_cells > 1");
    }
    if (!(cfl > 0.0) || !(cfl <= 1.0)) {
      throw domain_error("GridSpec: need cfl in (0, 1]");
    }
  }

  double dx() const { return (x_max - x_min) / n_cells; }

  std::vector<double> centers() const {
    std::vector<double> c(static_cast<std::size_t>(n_cells));
    const double h = dx();
    for (int i = 0; i < n_cells; ++i) c[static_cast<std::size_t>(i)] = x_min + (i + 0.5) * h;
    return c;
  }
};

// Gaussian mollification: convolves cell values and atoms with a kernel of
// standard deviation `width` and returns a pure cell-value grid (atoms
// folded in).  The kernel mass assigned to each cell is integrated exactly
// via the normal CDF, so total mass is preserved up to boundary truncation.
inline DensityGrid mollify_grid(const DensityGrid& g, double width) {
  if (!(width > 0.0)) {
    throw domain_error("mollify_grid: width must be > 0");
  }
  const double h = g.dx();
  if (!(h > 0.0)) {
    throw domain_error("mollify_grid: need at least two cells");
  }
  const std::size_t n = g.centers.size();
  DensityGrid out;
  out.centers = g.centers;
  out.values.assign(n, 0.0);
  out.time = g.time;

  const double inv = 1.0 / (width * std::sqrt(2.0));
  auto cell_weight = [&](double d) {
    // mass fraction of a unit point mass at distance d landing in a cell
    return 0.5 * (std::erf((d + 0.5 * h) * inv) - std::erf((d - 0.5 * h) * inv));
  };
  const long reach = static_cast<long>(std::ceil(8.0 * width / h)) + 1;

  auto deposit = [&](double pos, double mass) {
    if (mass == 0.0) return;
    const long j0 = static_cast<long>(std::floor((pos - g.centers.front()) / h));
    for (long j = j0 - reach; j <= j0 + reach; ++j) {
      if (j < 0 || j >= static_cast<long>(n)) continue;
      const double d = g.centers[static_cast<std::size_t>(j)] - pos;
      out.values[static_cast<std::size_t>(j)] += mass * cell_weight(d) / h;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    deposit(g.centers[i], g.values[i] * h);
  }
  for (const auto& a : g.atoms) deposit(a.position, a.mass);
  return out;
}

}  // namespace teleswim
