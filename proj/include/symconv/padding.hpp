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

// Symmetric and anti-symmetric periodic extensions of finite signals.
//
// Every extension produces one full period of length M with the base
// samples at indices 0..N-1 (canonical phase):
//
//   HS  [x0..x{N-1}, x{N-1}..x0]                  M = 2N
//   WS  [x0..x{N-1}, x{N-2}..x1]                  M = 2N - 2
//   HA  [x0..x{N-1}, -x{N-1}..-x0]                M = 2N
//   WA  [x0..x{N-1}, 0, -x{N-1}..-x0, 0]          M = 2N + 2
//   ZS  [x0..x{N-1}, e0, x{N-1}..x0, e1]          M = 2N + 2, N even
//
// with e0 = -2 * sum(x{2n}) and e1 = -2 * sum(x{2n+1}), the unique pair
// that zeroes both the DC and the Nyquist coefficient of the period.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/frequency_set.hpp"
#include "symconv/tensor.hpp"

namespace symconv {

enum class PadMode { kHS, kWS, kHA, kWA, kZS };

inline constexpr PadMode kAllPadModes[] = {PadMode::kHS, PadMode::kWS,
                                           PadMode::kHA, PadMode::kWA,
                                           PadMode::kZS};

/// Padding mode per spatial axis (one entry in 1D, {h, w} in 2D).
using AxisModes = std::vector<PadMode>;

inline std::string_view to_token(PadMode mode) {
  switch (mode) {
    case PadMode::kHS: return "hs";
    case PadMode::kWS: return "ws";
    case PadMode::kHA: return "ha";
    case PadMode::kWA: return "wa";
    case PadMode::kZS: return "zs";
  }
  return "?";
}

inline std::string to_token(const AxisModes& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ",";
    out += to_token(modes[i]);
  }
  return out;
}

/// Upper-case name as used in tables ("HS", "WA", ...).
inline std::string mode_name(PadMode mode) {
  std::string s(to_token(mode));
  for (char& c : s) c = static_cast<char>(c - 'a' + 'A');
  return s;
}

inline PadMode parse_mode(std::string_view token) {
  for (PadMode m : kAllPadModes) {
    if (token == to_token(m)) return m;
  }
  throw std::invalid_argument("unknown padding mode '" + std::string(token) +
                              "' (expected hs, ws, ha, wa or zs)");
}

/// Parses "wa" or "wa,ws".
inline AxisModes parse_axis_modes(std::string_view tokens) {
  AxisModes out;
  std::size_t start = 0;
  while (true) {
    const auto comma = tokens.find(',', start);
    out.push_back(parse_mode(tokens.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() > 2) {
    throw std::invalid_argument("at most two axis modes are supported");
  }
  return out;
}

inline bool is_antisymmetric(PadMode mode) {
  return mode == PadMode::kHA || mode == PadMode::kWA;
}

/// Position of the symmetry axis near index 0 in canonical phase, in units
/// of half samples. The second axis sits half a period further.
inline int symmetry_axis_half_samples(PadMode mode) {
  switch (mode) {
    case PadMode::kWS: return 0;
    case PadMode::kHS:
    case PadMode::kHA: return -1;
    case PadMode::kWA:
    case PadMode::kZS: return -2;
  }
  return 0;
}

inline std::size_t padded_length(PadMode mode, std::size_t n) {
  if (n < 2) {
    throw ShapeError("base length must be at least 2, got " +
                     std::to_string(n));
  }
  switch (mode) {
    case PadMode::kHS:
    case PadMode::kHA: return 2 * n;
    case PadMode::kWS: return 2 * n - 2;
    case PadMode::kWA: return 2 * n + 2;
    case PadMode::kZS:
      if (n % 2 != 0) {
        throw OddLengthError("zero-summed extension needs an even base "
                             "length, got " + std::to_string(n));
      }
      return 2 * n + 2;
  }
  return 0;
}

/// Base length N with padded_length(mode, N) == period.
inline std::size_t base_length(PadMode mode, std::size_t period) {
  if (period % 2 != 0) {
    throw ShapeError("padded periods are even, got " + std::to_string(period));
  }
  std::size_t n = 0;
  switch (mode) {
    case PadMode::kHS:
    case PadMode::kHA: n = period / 2; break;
    case PadMode::kWS: n = period / 2 + 1; break;
    case PadMode::kWA:
    case PadMode::kZS: n = period >= 2 ? period / 2 - 1 : 0; break;
  }
  if (n < 2) {
    throw ShapeError("period " + std::to_string(period) + " too short for " +
                     mode_name(mode));
  }
  if (mode == PadMode::kZS && n % 2 != 0) {
    throw OddLengthError("period " + std::to_string(period) +
                         " gives an odd zero-summed base length");
  }
  return n;
}

/// Frequencies at which every signal extended in `mode` vanishes.
inline FrequencySet prior_zero_frequencies(PadMode mode, std::size_t period) {
  switch (mode) {
    case PadMode::kWS: return {period, false, false};
    case PadMode::kHS: return {period, false, true};
    case PadMode::kHA: return {period, true, false};
    case PadMode::kWA:
    case PadMode::kZS: return {period, true, true};
  }
  return FrequencySet::none(period);
}

namespace detail {

/// Writes the full period of the extension of n strided input samples.
template <typename T>
void extend(const T* in, std::size_t in_stride, std::size_t n, PadMode mode,
            T* out, std::size_t out_stride) {
  const std::size_t m = padded_length(mode, n);
  auto src = [&](std::size_t i) { return in[i * in_stride]; };
  auto dst = [&](std::size_t i) -> T& { return out[i * out_stride]; };
  // Read everything first so in and out may alias along the base window.
  std::vector<T> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = src(i);
  for (std::size_t i = 0; i < n; ++i) dst(i) = base[i];
  switch (mode) {
    case PadMode::kHS:
      for (std::size_t j = 0; j < n; ++j) dst(n + j) = base[n - 1 - j];
      break;
    case PadMode::kWS:
      for (std::size_t j = 0; j + 2 < n; ++j) dst(n + j) = base[n - 2 - j];
      break;
    case PadMode::kHA:
      for (std::size_t j = 0; j < n; ++j) dst(n + j) = -base[n - 1 - j];
      break;
    case PadMode::kWA:
      dst(n) = T{0};
      for (std::size_t j = 0; j < n; ++j) dst(n + 1 + j) = -base[n - 1 - j];
      dst(m - 1) = T{0};
      break;
    case PadMode::kZS: {
      T even{0};
      T odd{0};
      for (std::size_t i = 0; i < n; i += 2) even += base[i];
      for (std::size_t i = 1; i < n; i += 2) odd += base[i];
      dst(n) = T{-2} * even;
      for (std::size_t j = 0; j < n; ++j) dst(n + 1 + j) = base[n - 1 - j];
      dst(m - 1) = T{-2} * odd;
      break;
    }
  }
}

}  // namespace detail

/// One full period of an extended 1D signal.
template <typename T>
struct PaddedSignal {
  std::vector<T> data;
  std::size_t base_len = 0;
  PadMode mode = PadMode::kWS;
};

template <typename T>
PaddedSignal<T> pad_1d(std::span<const T> x, PadMode mode) {
  PaddedSignal<T> out;
  out.base_len = x.size();
  out.mode = mode;
  out.data.resize(padded_length(mode, x.size()));
  detail::extend(x.data(), 1, x.size(), mode, out.data.data(), 1);
  return out;
}

template <typename T>
PaddedSignal<T> pad_1d(const std::vector<T>& x, PadMode mode) {
  return pad_1d(std::span<const T>(x), mode);
}

template <typename T>
std::vector<T> unpad_1d(const PaddedSignal<T>& xp) {
  if (xp.data.size() < xp.base_len) throw ShapeError("malformed padded signal");
  return std::vector<T>(xp.data.begin(), xp.data.begin() + xp.base_len);
}

/// True iff `period` equals the extension of its own first N samples to
/// within `tol` (max absolute deviation).
template <typename T>
bool verify_mode(std::span<const T> period, PadMode mode, std::size_t n,
                 double tol) {
  if (period.size() != padded_length(mode, n)) {
    throw ShapeError("period length " + std::to_string(period.size()) +
                     " does not match " + mode_name(mode) + " of base " +
                     std::to_string(n));
  }
  std::vector<T> rebuilt(period.size());
  detail::extend(period.data(), 1, n, mode, rebuilt.data(), 1);
  for (std::size_t i = 0; i < period.size(); ++i) {
    if (!(std::abs(static_cast<double>(rebuilt[i]) -
                   static_cast<double>(period[i])) <= tol)) {
      return false;
    }
  }
  return true;
}

/// Default verification tolerance for the pipeline precision.
template <typename T>
constexpr double default_mode_tolerance() {
  return precision_of<T>() == Precision::kDouble ? 1e-10 : 1e-4;
}

// ---------------------------------------------------------------------------
// Multi-channel 1D / 2D grids

/// Extends every line along `axis` of every channel.
template <typename T>
ChannelSignal<T> pad_axis(const ChannelSignal<T>& x, std::size_t axis,
                          PadMode mode) {
  if (axis >= x.ndim()) throw ShapeError("axis out of range");
  Dims dims = x.dims();
  dims[axis] = padded_length(mode, x.dims()[axis]);
  ChannelSignal<T> out(x.channels(), dims);
  const AxisLines in_lines = axis_lines(x.dims(), axis);
  const AxisLines out_lines = axis_lines(dims, axis);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    const T* src = x.channel(c).data();
    T* dst = out.channel(c).data();
    for (std::size_t l = 0; l < in_lines.count; ++l) {
      detail::extend(src + in_lines.offset(l), in_lines.stride,
                     in_lines.length, mode, dst + out_lines.offset(l),
                     out_lines.stride);
    }
  }
  return out;
}

/// Extends every axis of `x` by its mode. Axes are processed 0, 1, ... or
/// in reverse when `reverse_axis_order` is set; both orders agree.
namespace detail {

/// The four ZS x ZS corner extras are 4 * (sum over one parity class of the
/// base grid). Summing them in a fixed order keeps pad() independent of the
/// axis order bit for bit.
template <typename T>
void fix_zs_corners(const ChannelSignal<T>& x, ChannelSignal<T>& out) {
  const std::size_t n0 = x.dims()[0];
  const std::size_t n1 = x.dims()[1];
  const std::size_t m0 = out.dims()[0];
  const std::size_t m1 = out.dims()[1];
  const std::size_t rows[2] = {n0, m0 - 1};
  const std::size_t cols[2] = {n1, m1 - 1};
  for (std::size_t c = 0; c < x.channels(); ++c) {
    for (std::size_t pr = 0; pr < 2; ++pr) {
      for (std::size_t pc = 0; pc < 2; ++pc) {
        T sum{0};
        for (std::size_t i = pr; i < n0; i += 2) {
          for (std::size_t j = pc; j < n1; j += 2) sum += x.at(c, i, j);
        }
        out.at(c, rows[pr], cols[pc]) = T{4} * sum;
      }
    }
  }
}

}  // namespace detail

template <typename T>
ChannelSignal<T> pad(const ChannelSignal<T>& x, const AxisModes& modes,
                     bool reverse_axis_order = false) {
  if (modes.size() != x.ndim()) {
    throw ShapeError("need one padding mode per axis: got " +
                     std::to_string(modes.size()) + " for " +
                     std::to_string(x.ndim()) + " axes");
  }
  ChannelSignal<T> out = x;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::size_t axis = reverse_axis_order ? modes.size() - 1 - i : i;
    out = pad_axis(out, axis, modes[axis]);
  }
  if (modes.size() == 2 && modes[0] == PadMode::kZS &&
      modes[1] == PadMode::kZS) {
    detail::fix_zs_corners(x, out);
  }
  return out;
}

template <typename T>
ChannelSignal<T> pad_2d(const ChannelSignal<T>& x, PadMode mode_h,
                        PadMode mode_w) {
  if (x.ndim() != 2) throw ShapeError("pad_2d needs a 2D signal");
  return pad(x, {mode_h, mode_w});
}

/// Copies the window [offset, offset + extent) with circular wrap.
template <typename T>
ChannelSignal<T> crop_circular(const ChannelSignal<T>& p, const Dims& offset,
                               const Dims& extent) {
  if (offset.size() != p.ndim() || extent.size() != p.ndim()) {
    throw ShapeError("crop window rank mismatch");
  }
  for (std::size_t a = 0; a < p.ndim(); ++a) {
    if (extent[a] > p.dims()[a]) throw ShapeError("crop window exceeds grid");
  }
  ChannelSignal<T> out(p.channels(), extent);
  for (std::size_t c = 0; c < p.channels(); ++c) {
    if (p.ndim() == 1) {
      for (std::size_t i = 0; i < extent[0]; ++i) {
        out.at(c, i) = p.at(c, (offset[0] + i) % p.dims()[0]);
      }
    } else {
      for (std::size_t i = 0; i < extent[0]; ++i) {
        for (std::size_t j = 0; j < extent[1]; ++j) {
          out.at(c, i, j) = p.at(c, (offset[0] + i) % p.dims()[0],
                                 (offset[1] + j) % p.dims()[1]);
        }
      }
    }
  }
  return out;
}

/// Extracts the canonical base window of a padded grid.
template <typename T>
ChannelSignal<T> unpad(const ChannelSignal<T>& p, const Dims& base_dims) {
  return crop_circular(p, Dims(p.ndim(), 0), base_dims);
}

template <typename T>
ChannelSignal<T> unpad_2d(const ChannelSignal<T>& p, const Dims& base_dims) {
  if (p.ndim() != 2) throw ShapeError("unpad_2d needs a 2D signal");
  return unpad(p, base_dims);
}

/// Base dims of a grid of periods under per-axis modes.
inline Dims base_dims_for(const AxisModes& modes, const Dims& periods) {
  Dims out;
  for (std::size_t a = 0; a < modes.size(); ++a) {
    out.push_back(base_length(modes[a], periods[a]));
  }
  return out;
}

inline Dims padded_dims_for(const AxisModes& modes, const Dims& base) {
  if (modes.size() != base.size()) throw ShapeError("mode/axis count mismatch");
  Dims out;
  for (std::size_t a = 0; a < modes.size(); ++a) {
    out.push_back(padded_length(modes[a], base[a]));
  }
  return out;
}

/// Grid analogue of verify_mode: the period must equal the extension of its
/// base window along every axis.
template <typename T>
bool verify_modes(const ChannelSignal<T>& period, const AxisModes& modes,
                  double tol) {
  const Dims base = base_dims_for(modes, period.dims());
  const ChannelSignal<T> rebuilt = pad(unpad(period, base), modes);
  return max_abs_diff(rebuilt, period) <= tol;
}

/// Prior-zero lines of a grid padded in `modes` with the given periods.
inline FrequencyLines prior_zero_lines(const AxisModes& modes,
                                       const Dims& periods) {
  FrequencyLines out;
  for (std::size_t a = 0; a < modes.size(); ++a) {
    out.axes.push_back(prior_zero_frequencies(modes[a], periods[a]));
  }
  return out;
}

}  // namespace symconv
