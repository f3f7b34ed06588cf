// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace teleswim {

// Base class of every error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct domain_error : error {
  using error::error;
};

// Tabulated profile or rate table queried beyond its last sample.
struct extrapolation_error : error {
  using error::error;
};

// Requested tau at or beyond the finite limit of the time change.
struct saturation_error : error {
  saturation_error(const std::string& what, double tau_limit)
      : error(what), tau_infinity(tau_limit) {}
  double tau_infinity;
};

// Effective rate undefined because w(t(tau)) = 0.
struct singularity_error : error {
  using error::error;
};

// Law has no absolutely continuous component (lambda0 = 0).
struct degenerate_law_error : error {
  using error::error;
};

// Operation cannot be carried out for the given inputs.
struct capability_error : error {
  using error::error;
};

// Numerical output failed a quality gate (aliasing, tolerance).
struct quality_error : error {
  using error::error;
};

// Invalid run configuration (CLI / JSON).
struct config_error : error {
  using error::error;
};

}  // namespace teleswim
