// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace teleswim {

inline constexpr const char* version_string = "0.1.0";

// Identifier of the random-number stream (generator + seed derivation).
// Bumped whenever either changes, so output metadata pins the stream.
inline constexpr const char* rng_version = "splitmix64+mt19937_64/1";

}  // namespace teleswim
