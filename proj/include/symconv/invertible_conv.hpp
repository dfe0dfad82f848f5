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

// Convolution layers over symmetrically extended signals, with an exact
// inverse computed by per-frequency channel-matrix inversion.
//
// Forward: extend x in its mode, circularly convolve with the embedded
// kernel (a product of spectra), and keep the base window of the output,
// whose mode follows the transition table. Inverse: re-extend y in the
// output mode, divide by the kernel spectrum (matrix inverse per
// frequency), impose the frequencies the input mode forces to zero, and
// keep the base window.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/frequency_set.hpp"
#include "symconv/linalg.hpp"
#include "symconv/mode_algebra.hpp"
#include "symconv/padding.hpp"
#include "symconv/spectral.hpp"
#include "symconv/tensor.hpp"

namespace symconv {

/// Small tap patch plus the symmetry imposed on each axis when embedded.
/// Tap extents are odd (2r+1); the center tap sits at offset r.
template <typename T>
struct KernelSpec {
  KernelField<T> taps;
  AxisModes w_modes;

  std::size_t ndim() const { return taps.ndim(); }
  std::size_t c_out() const { return taps.c_out(); }
  std::size_t c_in() const { return taps.c_in(); }

  Dims radius() const {
    Dims r;
    for (std::size_t e : taps.dims()) r.push_back(e / 2);
    return r;
  }

  void validate() const {
    if (w_modes.size() != taps.ndim()) {
      throw ShapeError("kernel needs one mode per spatial axis");
    }
    for (std::size_t e : taps.dims()) {
      if (e % 2 == 0) {
        throw ShapeError("kernel extents must be odd, got " +
                         dims_string(taps.dims()));
      }
    }
  }

  template <typename U>
  KernelSpec<U> cast() const {
    return {taps.template cast<U>(), w_modes};
  }
};

/// Kernel whose embedding is the identity at every frequency. Only defined
/// for all-WS axes: the embedding doubles the center tap once per axis.
template <typename T>
KernelSpec<T> identity_kernel(std::size_t channels, const Dims& radius) {
  Dims extents;
  for (std::size_t r : radius) extents.push_back(2 * r + 1);
  KernelSpec<T> spec{KernelField<T>(channels, channels, extents),
                     AxisModes(radius.size(), PadMode::kWS)};
  const T center = static_cast<T>(1.0 / static_cast<double>(1u << radius.size()));
  for (std::size_t c = 0; c < channels; ++c) {
    auto p = spec.taps.pair(c, c);
    std::size_t idx = 0;
    for (std::size_t a = 0; a < extents.size(); ++a) {
      idx = idx * extents[a] + radius[a];
    }
    p[idx] = center;
  }
  return spec;
}

namespace detail {

/// w <- w + sign * flip(w) along `axis`, flip[n] = w[(M - n) mod M].
template <typename T>
void symmetrize_axis(ChannelSignal<T>& field, std::size_t axis, T sign) {
  const AxisLines lines = axis_lines(field.dims(), axis);
  const std::size_t m = lines.length;
  std::vector<T> line(m);
  for (std::size_t c = 0; c < field.channels(); ++c) {
    T* base = field.channel(c).data();
    for (std::size_t l = 0; l < lines.count; ++l) {
      T* p = base + lines.offset(l);
      for (std::size_t n = 0; n < m; ++n) line[n] = p[n * lines.stride];
      for (std::size_t n = 0; n < m; ++n) {
        p[n * lines.stride] = line[n] + sign * line[(m - n) % m];
      }
    }
  }
}

}  // namespace detail

/// Places the taps circularly around index 0 of a zero grid of the given
/// periods, then symmetrizes (WS) or anti-symmetrizes (WA) each axis.
template <typename T>
KernelField<T> embed_kernel(const KernelSpec<T>& spec, const Dims& periods) {
  spec.validate();
  if (periods.size() != spec.ndim()) {
    throw ShapeError("period rank does not match kernel rank");
  }
  for (std::size_t a = 0; a < periods.size(); ++a) {
    if (spec.w_modes[a] != PadMode::kWS && spec.w_modes[a] != PadMode::kWA) {
      throw UnsupportedKernelMode("layer kernels are WS or WA per axis, got " +
                                  mode_name(spec.w_modes[a]));
    }
    if (spec.taps.dims()[a] > periods[a]) {
      throw ShapeError("kernel extent " + std::to_string(spec.taps.dims()[a]) +
                       " exceeds period " + std::to_string(periods[a]));
    }
  }
  const Dims radius = spec.radius();
  const Dims& ext = spec.taps.dims();
  const std::size_t pairs = spec.c_out() * spec.c_in();
  ChannelSignal<T> field(pairs, periods);
  for (std::size_t pr = 0; pr < pairs; ++pr) {
    const auto src = spec.taps.pair(pr / spec.c_in(), pr % spec.c_in());
    auto dst = field.channel(pr);
    if (ext.size() == 1) {
      for (std::size_t t = 0; t < ext[0]; ++t) {
        dst[(t + periods[0] - radius[0]) % periods[0]] = src[t];
      }
    } else {
      for (std::size_t i = 0; i < ext[0]; ++i) {
        const std::size_t pi = (i + periods[0] - radius[0]) % periods[0];
        for (std::size_t j = 0; j < ext[1]; ++j) {
          const std::size_t pj = (j + periods[1] - radius[1]) % periods[1];
          dst[pi * periods[1] + pj] = src[i * ext[1] + j];
        }
      }
    }
  }
  for (std::size_t a = 0; a < periods.size(); ++a) {
    detail::symmetrize_axis(field, a,
                            spec.w_modes[a] == PadMode::kWA ? T{-1} : T{1});
  }
  return KernelField<T>(spec.c_out(), spec.c_in(), periods,
                        std::vector<T>(field.data().begin(),
                                       field.data().end()));
}

/// Spectrum of the embedded kernel. Lines on which the embedding vanishes
/// identically (DC and Nyquist of WA axes) are stored as exact zeros.
template <typename T>
Spectrum<T> kernel_spectrum(const KernelSpec<T>& spec, const Dims& periods) {
  Spectrum<T> w = dft_forward(embed_kernel(spec, periods));
  w.zero_lines(kernel_zero_lines(spec.w_modes, periods));
  return w;
}

template <typename T>
struct ForwardResult {
  ChannelSignal<T> y;
  AxisModes y_modes;
};

struct InverseOptions {
  double tol_sing = kDefaultSingularTolerance;
};

namespace detail {

template <typename T>
std::vector<TransitionRow> check_layer(const ChannelSignal<T>& x,
                                       const KernelSpec<T>& spec,
                                       const AxisModes& x_modes,
                                       std::size_t channels_expected) {
  spec.validate();
  if (x_modes.size() != x.ndim() || spec.ndim() != x.ndim()) {
    throw ShapeError("signal, kernel and modes disagree on the number of "
                     "axes");
  }
  if (x.channels() != channels_expected) {
    throw ShapeError("kernel expects " + std::to_string(channels_expected) +
                     " channels, signal has " + std::to_string(x.channels()));
  }
  return transition_axes(x_modes, spec.w_modes);
}

}  // namespace detail

/// Full period of the circular convolution of the extended input with the
/// embedded kernel.
template <typename T>
ChannelSignal<T> forward_period(const ChannelSignal<T>& x,
                                const KernelSpec<T>& spec,
                                const AxisModes& x_modes) {
  detail::check_layer(x, spec, x_modes, spec.c_in());
  const ChannelSignal<T> xp = pad(x, x_modes);
  const Spectrum<T> w = kernel_spectrum(spec, xp.dims());
  return dft_inverse(spectrum_multiply(w, dft_forward(xp)));
}

/// One layer forward. The output keeps the input's base dims for every
/// invertible row; rows whose output mode has another base length (row 14)
/// return that mode's base window in canonical phase.
template <typename T>
ForwardResult<T> forward(const ChannelSignal<T>& x, const KernelSpec<T>& spec,
                         const AxisModes& x_modes) {
  const auto rows = detail::check_layer(x, spec, x_modes, spec.c_in());
  const ChannelSignal<T> yp = forward_period(x, spec, x_modes);
  ForwardResult<T> out;
  Dims offset;
  Dims extent;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const std::size_t m = yp.dims()[a];
    out.y_modes.push_back(rows[a].y_mode);
    offset.push_back(output_phase_shift(rows[a], m));
    extent.push_back(base_length(rows[a].y_mode, m));
  }
  out.y = crop_circular(yp, offset, extent);
  return out;
}

/// Inverts the kernel on a full output period, treating `skip` frequencies
/// as known zeros of the input, and returns the input's base window.
template <typename T>
ChannelSignal<T> inverse_from_period(const ChannelSignal<T>& y_period,
                                     const KernelSpec<T>& spec,
                                     const AxisModes& x_modes,
                                     const FrequencyLines& skip,
                                     const InverseOptions& opts = {}) {
  if (spec.c_out() != spec.c_in()) {
    throw ShapeError("inversion needs equal input and output channels");
  }
  detail::check_layer(y_period, spec, x_modes, spec.c_out());
  const Dims& periods = y_period.dims();
  const Spectrum<T> w = kernel_spectrum(spec, periods);
  const Spectrum<T> w_inv = spectrum_matrix_inverse(w, skip, opts.tol_sing);
  Spectrum<T> x_spec = spectrum_multiply(w_inv, dft_forward(y_period));
  x_spec.zero_lines(skip);
  const ChannelSignal<T> xp = dft_inverse(x_spec);
  return unpad(xp, base_dims_for(x_modes, periods));
}

/// One layer inverse for an invertible configuration.
template <typename T>
ChannelSignal<T> inverse(const ChannelSignal<T>& y, const KernelSpec<T>& spec,
                         const AxisModes& x_modes,
                         const InverseOptions& opts = {}) {
  if (x_modes.size() != spec.w_modes.size()) {
    throw ShapeError("input and kernel mode counts differ");
  }
  const auto rows = transition_axes(x_modes, spec.w_modes);
  for (const auto& row : rows) {
    if (!row.invertible) {
      throw NonInvertibleModePair(
          row.id, "not invertible: transition table " + describe_row(row));
    }
  }
  if (spec.c_out() != spec.c_in()) {
    throw ShapeError("inversion needs equal input and output channels");
  }
  AxisModes y_modes;
  for (const auto& row : rows) y_modes.push_back(row.y_mode);
  const ChannelSignal<T> yp = pad(y, y_modes);
  return inverse_from_period(yp, spec, x_modes,
                             prior_zero_lines(x_modes, yp.dims()), opts);
}

/// Attempts inversion for any WS/WA configuration by also skipping the
/// kernel's structural zeros. Coefficients there are lost, so this only
/// reproduces x when the input mode already forces them to zero.
template <typename T>
ChannelSignal<T> forced_inverse(const ChannelSignal<T>& y_period,
                                const KernelSpec<T>& spec,
                                const AxisModes& x_modes,
                                const InverseOptions& opts = {}) {
  const FrequencyLines skip =
      prior_zero_lines(x_modes, y_period.dims())
          .united(kernel_zero_lines(spec.w_modes, y_period.dims()));
  return inverse_from_period(y_period, spec, x_modes, skip, opts);
}

// ---------------------------------------------------------------------------
// 2D kernel parity decomposition

template <typename T>
struct KernelDecomposition {
  KernelField<T> sym_sym;    // symmetric along h and w
  KernelField<T> sym_anti;   // symmetric along h, anti-symmetric along w
  KernelField<T> anti_sym;
  KernelField<T> anti_anti;
};

/// Splits a 2D patch into its four per-axis parity components about the
/// patch center. The components sum back to the patch.
template <typename T>
KernelDecomposition<T> decompose_kernel_2d(const KernelField<T>& taps) {
  if (taps.ndim() != 2) throw ShapeError("decomposition needs a 2D patch");
  const std::size_t eh = taps.dims()[0];
  const std::size_t ew = taps.dims()[1];
  if (eh % 2 == 0 || ew % 2 == 0) {
    throw ShapeError("decomposition needs odd extents, got " +
                     dims_string(taps.dims()));
  }
  KernelDecomposition<T> out{taps, taps, taps, taps};
  for (std::size_t o = 0; o < taps.c_out(); ++o) {
    for (std::size_t i = 0; i < taps.c_in(); ++i) {
      const auto w = taps.pair(o, i);
      auto ss = out.sym_sym.pair(o, i);
      auto sa = out.sym_anti.pair(o, i);
      auto as = out.anti_sym.pair(o, i);
      auto aa = out.anti_anti.pair(o, i);
      for (std::size_t r = 0; r < eh; ++r) {
        const std::size_t fr = eh - 1 - r;
        for (std::size_t c = 0; c < ew; ++c) {
          const std::size_t fc = ew - 1 - c;
          // Pair sums are symmetric under the mirror maps, which keeps each
          // component's parity exact in floating point.
          const T w00 = w[r * ew + c];
          const T w10 = w[fr * ew + c];
          const T w01 = w[r * ew + fc];
          const T w11 = w[fr * ew + fc];
          const T sh0 = w00 + w10;  // h-symmetric part of column c
          const T sh1 = w01 + w11;  // ... of column fc
          const T ah0 = w00 - w10;
          const T ah1 = w01 - w11;
          ss[r * ew + c] = (sh0 + sh1) / T{4};
          sa[r * ew + c] = (sh0 - sh1) / T{4};
          as[r * ew + c] = (ah0 + ah1) / T{4};
          aa[r * ew + c] = (ah0 - ah1) / T{4};
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layer stacks

template <typename T>
struct Layer {
  KernelSpec<T> kernel;
  AxisModes x_modes;
};

/// Ordered invertible layers; layer i+1 consumes the output mode of layer i.
template <typename T>
class LayerStack {
 public:
  LayerStack() = default;

  explicit LayerStack(std::vector<Layer<T>> layers)
      : layers_(std::move(layers)) {
    validate();
  }

  /// Builds a stack from kernels, deriving each layer's input mode from its
  /// predecessor's output.
  static LayerStack chain(AxisModes x_modes,
                          const std::vector<KernelSpec<T>>& kernels) {
    std::vector<Layer<T>> layers;
    for (const auto& k : kernels) {
      layers.push_back({k, x_modes});
      x_modes = output_modes(x_modes, k.w_modes);
    }
    return LayerStack(std::move(layers));
  }

  const std::vector<Layer<T>>& layers() const { return layers_; }
  std::size_t size() const { return layers_.size(); }

  AxisModes output_modes_of_stack() const {
    if (layers_.empty()) return {};
    return output_modes(layers_.back().x_modes, layers_.back().kernel.w_modes);
  }

  void validate() const {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const auto& layer = layers_[i];
      layer.kernel.validate();
      for (const auto& row :
           transition_axes(layer.x_modes, layer.kernel.w_modes)) {
        if (!row.invertible) {
          throw NonInvertibleModePair(row.id, "layer " + std::to_string(i) +
                                                  ": " + describe_row(row) +
                                                  " is not invertible");
        }
      }
      if (layer.kernel.c_out() != layer.kernel.c_in() ||
          layer.kernel.c_in() != layers_.front().kernel.c_in()) {
        throw ChainError("layer " + std::to_string(i) +
                         " breaks the constant channel count");
      }
      if (i + 1 < layers_.size()) {
        const AxisModes produced =
            output_modes(layer.x_modes, layer.kernel.w_modes);
        if (produced != layers_[i + 1].x_modes) {
          throw ChainError("layer " + std::to_string(i) + " produces " +
                           to_token(produced) + " but layer " +
                           std::to_string(i + 1) + " expects " +
                           to_token(layers_[i + 1].x_modes));
        }
      }
    }
  }

  template <typename U>
  LayerStack<U> cast() const {
    std::vector<Layer<U>> out;
    for (const auto& l : layers_) out.push_back({l.kernel.template cast<U>(), l.x_modes});
    return LayerStack<U>(std::move(out));
  }

 private:
  std::vector<Layer<T>> layers_;
};

template <typename T>
ForwardResult<T> stack_forward(const ChannelSignal<T>& x,
                               const LayerStack<T>& stack) {
  ForwardResult<T> cur{x, stack.layers().empty() ? AxisModes{}
                                                 : stack.layers()[0].x_modes};
  for (const auto& layer : stack.layers()) {
    cur = forward(cur.y, layer.kernel, layer.x_modes);
  }
  return cur;
}

template <typename T>
ChannelSignal<T> stack_inverse(const ChannelSignal<T>& y,
                               const LayerStack<T>& stack,
                               const InverseOptions& opts = {}) {
  ChannelSignal<T> cur = y;
  for (std::size_t i = stack.size(); i-- > 0;) {
    const auto& layer = stack.layers()[i];
    try {
      cur = inverse(cur, layer.kernel, layer.x_modes, opts);
    } catch (const SingularFrequencyError& e) {
      throw e.WithLayer(i);
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Conditioning diagnostics

struct FrequencyCondition {
  std::vector<std::size_t> frequency;
  double ratio = 0.0;       // sigma_min / sigma_max of the channel matrix
  bool in_skip = false;     // known zero of the input mode
  bool structural = false;  // kernel vanishes here by symmetry
};

struct ConditionReport {
  Dims periods;
  std::vector<FrequencyCondition> entries;
  /// Minimum ratio over frequencies outside the skip set (1 if none).
  double min_ratio = 1.0;
  std::vector<std::size_t> argmin;
};

template <typename T>
ConditionReport condition_report(const KernelSpec<T>& spec,
                                 const AxisModes& x_modes,
                                 const Dims& periods) {
  if (x_modes.size() != spec.ndim()) {
    throw ShapeError("input modes do not match kernel rank");
  }
  const Spectrum<T> w = kernel_spectrum(spec, periods);
  const FrequencyLines skip = prior_zero_lines(x_modes, periods);
  const FrequencyLines structural = kernel_zero_lines(spec.w_modes, periods);
  ConditionReport rep;
  rep.periods = periods;
  for (std::size_t k = 0; k < w.frequency_count(); ++k) {
    const auto m = w.matrix_at(k);
    const auto sv = linalg::singular_values(
        std::span<const std::complex<T>>(m), w.rows(), w.cols());
    FrequencyCondition fc;
    fc.frequency = w.frequency_index(k);
    fc.ratio = sv.front() == 0.0 ? 0.0 : sv.back() / sv.front();
    fc.in_skip = skip.contains(fc.frequency);
    fc.structural = structural.contains(fc.frequency);
    if (!fc.in_skip && (rep.argmin.empty() || fc.ratio < rep.min_ratio)) {
      rep.min_ratio = fc.ratio;
      rep.argmin = fc.frequency;
    }
    rep.entries.push_back(std::move(fc));
  }
  return rep;
}

}  // namespace symconv
