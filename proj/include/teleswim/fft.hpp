// Copyright 2026 the teleswim authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal in-place radix-2 DFT (forward sign e^{-2 pi i jk/n}) with a direct
// O(n^2) fallback for even non-power-of-two sizes.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace teleswim::detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline std::vector<std::complex<double>> dft(
    const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> out(in.size());
  const std::size_t n = in.size();
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(j * m % n) /
                         static_cast<double>(n);
      acc += in[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace teleswim::detail
