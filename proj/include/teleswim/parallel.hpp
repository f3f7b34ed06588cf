// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace teleswim {

// Worker count: explicit request wins, else hardware concurrency, both capped
// by the TELESWIM_THREADS environment variable when set.
inline unsigned resolve_worker_count(unsigned requested = 0) {
  unsigned n = requested != 0
                   ? requested
                   : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("TELESWIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) {
      n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
  }
  return std::max(1u, n);
}

// Static block partition of [0, n).  Callers must write results into
// per-index slots so the partition never influences the output.
template <class Fn>
void parallel_for_index(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  workers = std::min<std::size_t>(resolve_worker_count(workers), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace teleswim
