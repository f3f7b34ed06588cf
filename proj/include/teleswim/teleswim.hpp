// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "teleswim/analytic.hpp"
#include "teleswim/errors.hpp"
#include "teleswim/fractional.hpp"
#include "teleswim/grid.hpp"
#include "teleswim/io.hpp"
#include "teleswim/montecarlo.hpp"
#include "teleswim/numerics.hpp"
#include "teleswim/parallel.hpp"
#include "teleswim/pde.hpp"
#include "teleswim/profiles.hpp"
#include "teleswim/special.hpp"
#include "teleswim/stats.hpp"
#include "teleswim/version.hpp"
