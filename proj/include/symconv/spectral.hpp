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

// Multi-channel spectra and the per-frequency channel algebra that turns
// circular convolution into matrix-vector products.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/fft.hpp"
#include "symconv/frequency_set.hpp"
#include "symconv/linalg.hpp"
#include "symconv/tensor.hpp"

namespace symconv {

/// Complex coefficients on a 1D or 2D frequency grid. Each frequency holds a
/// rows x cols channel block: a channel vector (cols == 1) for signals, a
/// C_out x C_in matrix for kernels. Layout: [row][col][frequency...].
template <typename T>
class Spectrum {
 public:
  using Complex = std::complex<T>;

  Spectrum() = default;

  Spectrum(std::size_t rows, std::size_t cols, Dims period)
      : rows_(rows), cols_(cols), period_(std::move(period)) {
    if (rows_ == 0 || cols_ == 0) throw ShapeError("empty channel block");
    if (period_.empty() || period_.size() > 2) {
      throw ShapeError("spectra have 1 or 2 frequency axes");
    }
    coeffs_.assign(rows_ * cols_ * product(period_), Complex{});
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Dims& period() const { return period_; }
  std::size_t ndim() const { return period_.size(); }
  std::size_t frequency_count() const { return product(period_); }

  Complex& at(std::size_t r, std::size_t c, std::size_t k) {
    return coeffs_[(r * cols_ + c) * frequency_count() + k];
  }
  const Complex& at(std::size_t r, std::size_t c, std::size_t k) const {
    return coeffs_[(r * cols_ + c) * frequency_count() + k];
  }

  /// Coefficients of one channel (pair) over the whole frequency grid.
  std::span<Complex> block(std::size_t r, std::size_t c) {
    return std::span<Complex>(coeffs_).subspan(
        (r * cols_ + c) * frequency_count(), frequency_count());
  }
  std::span<const Complex> block(std::size_t r, std::size_t c) const {
    return std::span<const Complex>(coeffs_).subspan(
        (r * cols_ + c) * frequency_count(), frequency_count());
  }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Multi-index of the flattened frequency k (row-major).
  std::vector<std::size_t> frequency_index(std::size_t k) const {
    if (period_.size() == 1) return {k};
    return {k / period_[1], k % period_[1]};
  }

  /// Channel block at frequency k, row-major rows x cols.
  std::vector<Complex> matrix_at(std::size_t k) const {
    std::vector<Complex> m(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) m[r * cols_ + c] = at(r, c, k);
    }
    return m;
  }

  /// Sets every coefficient on the given frequency lines to exactly zero.
  void zero_lines(const FrequencyLines& lines) {
    if (lines.axes.size() != ndim()) throw ShapeError("line set rank mismatch");
    for (std::size_t k = 0; k < frequency_count(); ++k) {
      if (!lines.contains(frequency_index(k))) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) at(r, c, k) = Complex{};
      }
    }
  }

  T max_abs() const {
    T m{0};
    for (const auto& v : coeffs_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Dims period_;
  std::vector<Complex> coeffs_;
};

namespace detail {

/// In-place transform of every block along each axis in the given order.
template <typename T>
void transform_axes(Spectrum<T>& s, bool inverse, bool reverse_axis_order) {
  const Dims& period = s.period();
  for (std::size_t i = 0; i < period.size(); ++i) {
    const std::size_t axis =
        reverse_axis_order ? period.size() - 1 - i : i;
    const AxisLines lines = axis_lines(period, axis);
    const FftPlan<T> plan(lines.length);
    std::vector<std::complex<T>> buf(lines.length);
    std::vector<std::complex<T>> out(lines.length);
    for (std::size_t r = 0; r < s.rows(); ++r) {
      for (std::size_t c = 0; c < s.cols(); ++c) {
        auto blk = s.block(r, c);
        for (std::size_t l = 0; l < lines.count; ++l) {
          const std::size_t base = lines.offset(l);
          for (std::size_t n = 0; n < lines.length; ++n) {
            buf[n] = blk[base + n * lines.stride];
          }
          if (inverse) {
            plan.backward(buf, out);
          } else {
            plan.forward(buf, out);
          }
          for (std::size_t n = 0; n < lines.length; ++n) {
            blk[base + n * lines.stride] = out[n];
          }
        }
      }
    }
  }
}

template <typename T>
Spectrum<T> forward_of(std::span<const T> samples, std::size_t rows,
                       std::size_t cols, const Dims& dims,
                       bool reverse_axis_order) {
  Spectrum<T> s(rows, cols, dims);
  auto dst = s.coeffs();
  for (std::size_t i = 0; i < samples.size(); ++i) dst[i] = samples[i];
  transform_axes(s, false, reverse_axis_order);
  return s;
}

}  // namespace detail

/// Default bound on the imaginary residue of an inverse transform, relative
/// to the largest real magnitude.
template <typename T>
constexpr double default_real_tolerance() {
  return precision_of<T>() == Precision::kDouble ? 1e-9 : 1e-3;
}

/// Forward DFT of each channel over all axes. The spectrum has one column.
template <typename T>
Spectrum<T> dft_forward(const ChannelSignal<T>& x,
                        bool reverse_axis_order = false) {
  return detail::forward_of<T>(x.data(), x.channels(), 1, x.dims(),
                               reverse_axis_order);
}

/// Forward DFT of every channel pair; rows = C_out, cols = C_in.
template <typename T>
Spectrum<T> dft_forward(const KernelField<T>& w) {
  return detail::forward_of<T>(w.data(), w.c_out(), w.c_in(), w.dims(), false);
}

/// Inverse DFT with 1/M normalization. Throws NotRealError when the result
/// carries an imaginary part above `tol` relative to its real magnitude.
template <typename T>
ChannelSignal<T> dft_inverse(const Spectrum<T>& s,
                             double tol = default_real_tolerance<T>(),
                             bool reverse_axis_order = false) {
  Spectrum<T> work = s;
  detail::transform_axes(work, true, reverse_axis_order);
  const T scale = T{1} / static_cast<T>(s.frequency_count());
  ChannelSignal<T> out(s.rows() * s.cols(), s.period());
  auto dst = out.data();
  auto src = work.coeffs();
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::complex<T> v = src[i] * scale;
    dst[i] = v.real();
    max_re = std::max(max_re, static_cast<double>(std::abs(v.real())));
    max_im = std::max(max_im, static_cast<double>(std::abs(v.imag())));
  }
  if (max_im > tol * std::max(1.0, max_re)) {
    throw NotRealError("inverse transform has imaginary residue " +
                       std::to_string(max_im));
  }
  return out;
}

template <typename T>
Spectrum<T> dft2_forward(const ChannelSignal<T>& x,
                         bool reverse_axis_order = false) {
  if (x.ndim() != 2) throw ShapeError("dft2_forward needs a 2D signal");
  return dft_forward(x, reverse_axis_order);
}

template <typename T>
ChannelSignal<T> dft2_inverse(const Spectrum<T>& s,
                              double tol = default_real_tolerance<T>(),
                              bool reverse_axis_order = false) {
  if (s.ndim() != 2) throw ShapeError("dft2_inverse needs a 2D spectrum");
  return dft_inverse(s, tol, reverse_axis_order);
}

/// Y(k) = W(k) X(k) at every frequency.
template <typename T>
Spectrum<T> spectrum_multiply(const Spectrum<T>& w, const Spectrum<T>& x) {
  if (w.period() != x.period()) {
    throw ShapeError("spectrum periods differ: " + dims_string(w.period()) +
                     " vs " + dims_string(x.period()));
  }
  if (x.cols() != 1) throw ShapeError("right operand must be a signal spectrum");
  if (w.cols() != x.rows()) {
    throw ShapeError("kernel expects " + std::to_string(w.cols()) +
                     " input channels, signal has " + std::to_string(x.rows()));
  }
  Spectrum<T> y(w.rows(), 1, w.period());
  const std::size_t nf = w.frequency_count();
  for (std::size_t o = 0; o < w.rows(); ++o) {
    auto dst = y.block(o, 0);
    for (std::size_t i = 0; i < w.cols(); ++i) {
      auto wb = w.block(o, i);
      auto xb = x.block(i, 0);
      for (std::size_t k = 0; k < nf; ++k) dst[k] += wb[k] * xb[k];
    }
  }
  return y;
}

/// Default singular-value ratio below which a frequency counts as singular.
inline constexpr double kDefaultSingularTolerance = 1e-10;

/// Per-frequency inverse of a square kernel spectrum. Frequencies in `skip`
/// get zero matrices; any other frequency whose channel matrix has
/// sigma_min / sigma_max < tol_sing raises SingularFrequencyError.
template <typename T>
Spectrum<T> spectrum_matrix_inverse(
    const Spectrum<T>& w, const FrequencyLines& skip,
    double tol_sing = kDefaultSingularTolerance) {
  if (w.rows() != w.cols()) {
    throw ShapeError("element-wise inversion needs C_out == C_in, got " +
                     std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  if (skip.axes.size() != w.ndim()) throw ShapeError("skip set rank mismatch");
  const std::size_t n = w.rows();
  Spectrum<T> inv(n, n, w.period());
  for (std::size_t k = 0; k < w.frequency_count(); ++k) {
    const auto idx = w.frequency_index(k);
    if (skip.contains(idx)) continue;
    auto m = w.matrix_at(k);
    const double ratio =
        linalg::condition_ratio(std::span<const std::complex<T>>(m), n);
    if (!(ratio >= tol_sing) ||
        !linalg::invert_in_place(std::span<std::complex<T>>(m), n)) {
      throw SingularFrequencyError(idx, ratio);
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) inv.at(r, c, k) = m[r * n + c];
    }
  }
  return inv;
}

}  // namespace symconv
