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

// Brute-force references. Nothing here touches the FFT or the spectral
// algebra: the transforms are direct O(M^2) sums in long double and the
// convolution is a direct spatial sum.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/mode_algebra.hpp"
#include "symconv/padding.hpp"
#include "symconv/tensor.hpp"

namespace symconv::oracle {

/// X[k] = sum_n x[n] exp(-2 pi i k n / M), summed term by term.
template <typename T>
std::vector<std::complex<double>> naive_dft(std::span<const T> x) {
  const std::size_t m = x.size();
  std::vector<std::complex<double>> out(m);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t k = 0; k < m; ++k) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t n = 0; n < m; ++n) {
      const long double angle =
          -two_pi * static_cast<long double>((k * n) % m) /
          static_cast<long double>(m);
      re += static_cast<long double>(x[n]) * std::cos(angle);
      im += static_cast<long double>(x[n]) * std::sin(angle);
    }
    out[k] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

template <typename T>
std::vector<std::complex<double>> naive_dft(const std::vector<T>& x) {
  return naive_dft(std::span<const T>(x));
}

/// 2D DFT of one row-major grid, summed over both indices directly.
template <typename T>
std::vector<std::complex<double>> naive_dft_2d(std::span<const T> x,
                                               std::size_t rows,
                                               std::size_t cols) {
  if (x.size() != rows * cols) throw ShapeError("grid size mismatch");
  std::vector<std::complex<double>> out(rows * cols);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t k1 = 0; k1 < rows; ++k1) {
    for (std::size_t k2 = 0; k2 < cols; ++k2) {
      long double re = 0.0L;
      long double im = 0.0L;
      for (std::size_t n1 = 0; n1 < rows; ++n1) {
        for (std::size_t n2 = 0; n2 < cols; ++n2) {
          const long double angle =
              -two_pi * (static_cast<long double>((k1 * n1) % rows) / rows +
                         static_cast<long double>((k2 * n2) % cols) / cols);
          const long double v = x[n1 * cols + n2];
          re += v * std::cos(angle);
          im += v * std::sin(angle);
        }
      }
      out[k1 * cols + k2] = {static_cast<double>(re), static_cast<double>(im)};
    }
  }
  return out;
}

/// y[o, n] = sum_i sum_m w[o, i, m] x[i, (n - m) mod M], in 1D or 2D.
template <typename T>
ChannelSignal<T> naive_circular_conv(const ChannelSignal<T>& xp,
                                     const KernelField<T>& w) {
  if (xp.dims() != w.dims()) {
    throw ShapeError("convolution operands need equal periods");
  }
  if (w.c_in() != xp.channels()) {
    throw ShapeError("kernel input channels do not match the signal");
  }
  ChannelSignal<T> y(w.c_out(), xp.dims());
  const std::size_t rows = xp.ndim() == 2 ? xp.dims()[0] : 1;
  const std::size_t cols = xp.ndim() == 2 ? xp.dims()[1] : xp.dims()[0];
  for (std::size_t o = 0; o < w.c_out(); ++o) {
    for (std::size_t n1 = 0; n1 < rows; ++n1) {
      for (std::size_t n2 = 0; n2 < cols; ++n2) {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < w.c_in(); ++i) {
          const auto wk = w.pair(o, i);
          const auto xc = xp.channel(i);
          for (std::size_t m1 = 0; m1 < rows; ++m1) {
            const std::size_t s1 = (n1 + rows - m1) % rows;
            for (std::size_t m2 = 0; m2 < cols; ++m2) {
              const std::size_t s2 = (n2 + cols - m2) % cols;
              acc += static_cast<long double>(wk[m1 * cols + m2]) *
                     static_cast<long double>(xc[s1 * cols + s2]);
            }
          }
        }
        y.channel(o)[n1 * cols + n2] = static_cast<T>(acc);
      }
    }
  }
  return y;
}

/// Result of checking one transition-table row empirically.
struct ZeroCheck {
  bool claimed = false;
  bool confirmed = true;
  double residual = 0.0;  // max |coefficient| / L1 norm of the period
};

struct RowReport {
  int row_id = 0;
  PadMode x_mode = PadMode::kWS;
  PadMode w_mode = PadMode::kWS;
  PadMode y_mode = PadMode::kWS;
  std::size_t period = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool mode_confirmed = false;
  /// Circular shift s with q[n] = y[(n + s) mod M] in canonical phase; empty
  /// when no shift works.
  std::optional<std::size_t> detected_shift;
  ZeroCheck y_dc;
  ZeroCheck y_nyquist;
  bool input_zeros_confirmed = true;
  /// Largest relative mode residual at the detected shift.
  double max_residual = 0.0;
  double tolerance = 0.0;

  bool zero_freq_confirmed() const {
    return y_dc.confirmed && y_nyquist.confirmed;
  }
  bool passed() const {
    return mode_confirmed && zero_freq_confirmed() && input_zeros_confirmed;
  }
};

namespace detail {

inline double l1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Relative deviation of rotate(y, s) from the canonical extension of its
/// base window.
inline double mode_residual(const std::vector<double>& y, std::size_t shift,
                            PadMode mode, std::size_t base) {
  const std::size_t m = y.size();
  std::vector<double> q(m);
  for (std::size_t n = 0; n < m; ++n) q[n] = y[(n + shift) % m];
  const auto rebuilt =
      pad_1d(std::span<const double>(q.data(), base), mode).data;
  double dev = 0.0;
  for (std::size_t n = 0; n < m; ++n) {
    dev = std::max(dev, std::abs(rebuilt[n] - q[n]));
  }
  return dev / std::max(max_abs(y), 1e-300);
}

inline bool zeros_hold(const std::vector<double>& v, ZeroFlags flags,
                       double tol, ZeroCheck* dc, ZeroCheck* nyq) {
  const auto spec = naive_dft(v);
  const double scale = std::max(l1(v), 1e-300);
  bool ok = true;
  auto check = [&](bool claimed, std::size_t k, ZeroCheck* out) {
    const double r = std::abs(spec[k]) / scale;
    const bool good = !claimed || r <= tol;
    ok = ok && good;
    if (out) {
      out->claimed = claimed;
      out->residual = std::max(out->residual, claimed ? r : 0.0);
      out->confirmed = out->confirmed && good;
    }
  };
  check(flags.dc, 0, dc);
  check(flags.nyquist, v.size() / 2, nyq);
  return ok;
}

}  // namespace detail

/// Draws random base signals for the row's input and kernel modes at the
/// given period, pads both, convolves them directly, and checks that the
/// output is of the claimed mode (at some circular shift) with the claimed
/// zero coefficients. Tolerances are relative to the signal magnitude.
inline RowReport verify_table_row(int row_id, std::size_t period,
                                  std::size_t trials, std::uint64_t seed,
                                  double rel_tol = 1e-9) {
  const TransitionRow& row = table_row(row_id);
  const std::size_t nx = base_length(row.x_mode, period);
  const std::size_t nw = base_length(row.w_mode, period);
  const std::size_t ny = base_length(row.y_mode, period);
  RowReport rep;
  rep.row_id = row_id;
  rep.x_mode = row.x_mode;
  rep.w_mode = row.w_mode;
  rep.y_mode = row.y_mode;
  rep.period = period;
  rep.trials = trials;
  rep.seed = seed;
  rep.tolerance = rel_tol;
  rep.mode_confirmed = trials > 0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto draw = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& s : v) s = dist(rng);
    return v;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const auto xp = pad_1d(draw(nx), row.x_mode).data;
    auto wp = pad_1d(draw(nw), row.w_mode).data;
    // Whole-sample kernels sit with their axis on index 0.
    if (row.w_mode == PadMode::kWS || row.w_mode == PadMode::kWA) {
      const int axis = symmetry_axis_half_samples(row.w_mode) / 2;
      std::rotate(wp.begin(),
                  wp.begin() + static_cast<long>((period + axis) % period),
                  wp.end());
    }
    const ChannelSignal<double> ys = naive_circular_conv(
        ChannelSignal<double>(1, {period}, xp),
        KernelField<double>(1, 1, {period}, wp));
    const std::vector<double> y(ys.data().begin(), ys.data().end());

    if (!rep.detected_shift) {
      for (std::size_t s = 0; s < period; ++s) {
        if (detail::mode_residual(y, s, row.y_mode, ny) <= rel_tol) {
          rep.detected_shift = s;
          break;
        }
      }
      if (!rep.detected_shift) rep.mode_confirmed = false;
    }
    if (rep.detected_shift) {
      const double r =
          detail::mode_residual(y, *rep.detected_shift, row.y_mode, ny);
      rep.max_residual = std::max(rep.max_residual, r);
      if (r > rel_tol) rep.mode_confirmed = false;
    }
    detail::zeros_hold(y, row.y_zeros, rel_tol, &rep.y_dc, &rep.y_nyquist);
    const bool inputs_ok =
        detail::zeros_hold(xp, row.x_zeros, rel_tol, nullptr, nullptr) &&
        detail::zeros_hold(wp, row.w_zeros, rel_tol, nullptr, nullptr);
    rep.input_zeros_confirmed = rep.input_zeros_confirmed && inputs_ok;
  }
  return rep;
}

/// verify_table_row that raises RowViolation instead of reporting.
inline RowReport require_table_row(int row_id, std::size_t period,
                                   std::size_t trials, std::uint64_t seed,
                                   double rel_tol = 1e-9) {
  RowReport rep = verify_table_row(row_id, period, trials, seed, rel_tol);
  if (!rep.passed()) {
    throw RowViolation(row_id, "transition table row " +
                                   std::to_string(row_id) +
                                   " not reproduced at period " +
                                   std::to_string(period));
  }
  return rep;
}

/// Smallest usable period >= `period` for a row: rows touching ZS need
/// an even zero-summed base length, i.e. period = 2 (mod 4).
inline std::size_t table_period_for_row(int row_id, std::size_t period) {
  const TransitionRow& row = table_row(row_id);
  const bool zs = row.x_mode == PadMode::kZS || row.y_mode == PadMode::kZS;
  if (zs && period % 4 == 0) return period + 2;
  return period;
}

}  // namespace symconv::oracle
