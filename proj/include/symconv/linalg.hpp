// Copyright 2026 The symconv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense algebra on the small C x C complex matrices that appear per
// frequency. Matrices are row-major.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "symconv/error.hpp"

namespace symconv::linalg {

/// Inverse by Gauss-Jordan elimination with partial pivoting. Returns false
/// (leaving `a` unspecified) if an exactly zero pivot is met.
template <typename T>
bool invert_in_place(std::span<std::complex<T>> a, std::size_t n) {
  if (a.size() != n * n) throw ShapeError("matrix is not square");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    T best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == T{0}) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[col * n + j], a[pivot * n + j]);
      }
      std::swap(perm[col], perm[pivot]);
    }
    const std::complex<T> inv = T{1} / a[col * n + col];
    a[col * n + col] = T{1};
    for (std::size_t j = 0; j < n; ++j) a[col * n + j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::complex<T> f = a[r * n + col];
      if (f == std::complex<T>{}) continue;
      a[r * n + col] = T{0};
      for (std::size_t j = 0; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  // Row swaps of A become column swaps of A^-1.
  std::vector<std::complex<T>> tmp(a.begin(), a.end());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) a[r * n + perm[j]] = tmp[r * n + j];
  }
  return true;
}

/// Singular values (descending) by one-sided Jacobi rotations, evaluated in
/// double precision. Accurate to about eps * sigma_max, so ratios well
/// below sqrt(eps) are still resolved.
template <typename T>
std::vector<double> singular_values(std::span<const std::complex<T>> a,
                                    std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols) throw ShapeError("matrix size mismatch");
  using C = std::complex<double>;
  // Column-major working copy.
  std::vector<C> w(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      w[c * rows + r] = C(static_cast<double>(a[r * cols + c].real()),
                          static_cast<double>(a[r * cols + c].imag()));
    }
  }
  auto column = [&](std::size_t c) { return w.data() + c * rows; };
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        C* ci = column(i);
        C* cj = column(j);
        double alpha = 0.0;
        double beta = 0.0;
        C gamma{};
        for (std::size_t r = 0; r < rows; ++r) {
          alpha += std::norm(ci[r]);
          beta += std::norm(cj[r]);
          gamma += std::conj(ci[r]) * cj[r];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Align the phase of column j, then apply a real rotation.
        const C phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const C xi = ci[r];
          const C xj = cj[r] * phase;
          ci[r] = c * xi - s * xj;
          cj[r] = s * xi + c * xj;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double norm2 = 0.0;
    for (std::size_t r = 0; r < rows; ++r) norm2 += std::norm(column(c)[r]);
    sv[c] = std::sqrt(norm2);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  // A wide matrix has rows < cols nonzero singular values.
  sv.resize(std::min(rows, cols));
  return sv;
}

/// sigma_min / sigma_max; 0 for the zero matrix.
template <typename T>
double condition_ratio(std::span<const std::complex<T>> a, std::size_t n) {
  const auto sv = singular_values(a, n, n);
  if (sv.empty() || sv.front() == 0.0) return 0.0;
  return sv.back() / sv.front();
}

}  // namespace symconv::linalg
