#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "emwave/grid.hpp"

namespace emwave {
namespace fft {

inline bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

/// In-place iterative radix-2 Cooley-Tukey; inverse carries the 1/n.
inline void transform_pow2(std::vector<cplx> &a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const cplx wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cplx w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto &x : a) x /= static_cast<double>(n);
}

/// O(n^2) DFT fallback for grids that are not powers of two.
inline void transform_naive(std::vector<cplx> &a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<cplx> out(n, cplx{});
  const double s = (inverse ? 2.0 : -2.0) * std::numbers::pi /
                   static_cast<double>(n);
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t j = 0; j < n; ++j)
      out[f] += a[j] * std::polar(1.0, s * static_cast<double>(f * j % n));
  if (inverse)
    for (auto &x : out) x /= static_cast<double>(n);
  a = std::move(out);
}

inline void transform(std::vector<cplx> &a, bool inverse) {
  if (a.size() < 2) return;
  if (is_power_of_two(a.size()))
    transform_pow2(a, inverse);
  else
    transform_naive(a, inverse);
}

/// 3D transform of a flat n0 x n1 x n2 array (C order), one axis at a time.
inline void transform3(std::vector<cplx> &data,
                       const std::array<std::size_t, 3> &n, bool inverse) {
  if (data.size() != n[0] * n[1] * n[2])
    throw std::invalid_argument("fft::transform3: size mismatch");
  std::vector<cplx> line;
  // axis 2: contiguous rows
  line.resize(n[2]);
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j) {
      cplx *row = data.data() + (i * n[1] + j) * n[2];
      line.assign(row, row + n[2]);
      transform(line, inverse);
      std::copy(line.begin(), line.end(), row);
    }
  // axis 1
  line.resize(n[1]);
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t k = 0; k < n[2]; ++k) {
      for (std::size_t j = 0; j < n[1]; ++j)
        line[j] = data[(i * n[1] + j) * n[2] + k];
      transform(line, inverse);
      for (std::size_t j = 0; j < n[1]; ++j)
        data[(i * n[1] + j) * n[2] + k] = line[j];
    }
  // axis 0
  line.resize(n[0]);
  for (std::size_t j = 0; j < n[1]; ++j)
    for (std::size_t k = 0; k < n[2]; ++k) {
      for (std::size_t i = 0; i < n[0]; ++i)
        line[i] = data[(i * n[1] + j) * n[2] + k];
      transform(line, inverse);
      for (std::size_t i = 0; i < n[0]; ++i)
        data[(i * n[1] + j) * n[2] + k] = line[i];
    }
}

/// Signed frequency index f in [-n/2, n/2) for DFT bin i.
inline double signed_frequency(std::size_t i, std::size_t n) {
  return i <= (n - 1) / 2 ? static_cast<double>(i)
                          : static_cast<double>(i) - static_cast<double>(n);
}

} // namespace fft
} // namespace emwave
