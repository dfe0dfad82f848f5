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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "symconv/error.hpp"

namespace symconv {

enum class Precision { kSingle, kDouble };

inline std::string_view to_string(Precision p) {
  return p == Precision::kSingle ? "single" : "double";
}

inline Precision parse_precision(std::string_view token) {
  if (token == "single" || token == "f32") return Precision::kSingle;
  if (token == "double" || token == "f64") return Precision::kDouble;
  throw std::invalid_argument("unknown precision '" + std::string(token) +
                              "'");
}

template <typename T>
constexpr Precision precision_of() {
  static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>,
                "only float and double pipelines are supported");
  return std::is_same_v<T, float> ? Precision::kSingle : Precision::kDouble;
}

using Dims = std::vector<std::size_t>;

inline std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

inline std::string dims_string(const Dims& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(dims[i]);
  }
  return out + "]";
}

/// One axis of a row-major 1D or 2D grid, viewed as a family of strided
/// lines. Line `l` starts at `offset(l)` and visits `length` samples spaced
/// `stride` apart.
struct AxisLines {
  std::size_t length = 0;
  std::size_t stride = 1;
  std::size_t count = 0;
  std::size_t line_step = 0;

  std::size_t offset(std::size_t line) const { return line * line_step; }
};

inline AxisLines axis_lines(const Dims& dims, std::size_t axis) {
  if (dims.size() == 1) return {dims[0], 1, 1, 0};
  if (dims.size() != 2 || axis > 1) {
    throw ShapeError("only 1D and 2D grids are supported");
  }
  if (axis == 0) return {dims[0], dims[1], dims[1], 1};
  return {dims[1], 1, dims[0], dims[1]};
}

/// Multi-channel real samples on a 1D or 2D grid. Row-major per channel,
/// channels are the slowest axis.
template <typename T>
class ChannelSignal {
 public:
  using value_type = T;

  ChannelSignal() = default;

  ChannelSignal(std::size_t channels, Dims dims)
      : channels_(channels), dims_(std::move(dims)) {
    Validate();
    data_.assign(channels_ * product(dims_), T{0});
  }

  ChannelSignal(std::size_t channels, Dims dims, std::vector<T> data)
      : channels_(channels), dims_(std::move(dims)), data_(std::move(data)) {
    Validate();
    if (data_.size() != channels_ * product(dims_)) {
      throw ShapeError("signal data length " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(channels_) +
                       " channels of " + dims_string(dims_));
    }
  }

  std::size_t channels() const { return channels_; }
  const Dims& dims() const { return dims_; }
  std::size_t ndim() const { return dims_.size(); }
  std::size_t samples_per_channel() const { return product(dims_); }
  bool empty() const { return data_.empty(); }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  std::vector<T>& storage() { return data_; }

  std::span<T> channel(std::size_t c) {
    return std::span<T>(data_).subspan(c * samples_per_channel(),
                                       samples_per_channel());
  }
  std::span<const T> channel(std::size_t c) const {
    return std::span<const T>(data_).subspan(c * samples_per_channel(),
                                             samples_per_channel());
  }

  T& at(std::size_t c, std::size_t i) {
    return data_[c * samples_per_channel() + i];
  }
  T at(std::size_t c, std::size_t i) const {
    return data_[c * samples_per_channel() + i];
  }
  T& at(std::size_t c, std::size_t i, std::size_t j) {
    return data_[c * samples_per_channel() + i * dims_[1] + j];
  }
  T at(std::size_t c, std::size_t i, std::size_t j) const {
    return data_[c * samples_per_channel() + i * dims_[1] + j];
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](T v) { return std::isfinite(v); });
  }

  template <typename U>
  ChannelSignal<U> cast() const {
    std::vector<U> out(data_.begin(), data_.end());
    return ChannelSignal<U>(channels_, dims_, std::move(out));
  }

  friend bool operator==(const ChannelSignal&, const ChannelSignal&) = default;

 private:
  void Validate() const {
    if (channels_ == 0) throw ShapeError("signal needs at least one channel");
    if (dims_.empty() || dims_.size() > 2) {
      throw ShapeError("signal must have 1 or 2 spatial axes, got " +
                       std::to_string(dims_.size()));
    }
    for (std::size_t d : dims_) {
      if (d == 0) throw ShapeError("zero-length axis in " + dims_string(dims_));
    }
  }

  std::size_t channels_ = 0;
  Dims dims_;
  std::vector<T> data_;
};

/// Real C_out x C_in field of per-channel-pair grids. Used both for small
/// tap patches and for kernels embedded at a full period.
/// Layout: [out][in][spatial...], spatial row-major.
template <typename T>
class KernelField {
 public:
  KernelField() = default;

  KernelField(std::size_t c_out, std::size_t c_in, Dims dims)
      : c_out_(c_out), c_in_(c_in), dims_(std::move(dims)) {
    Validate();
    data_.assign(c_out_ * c_in_ * product(dims_), T{0});
  }

  KernelField(std::size_t c_out, std::size_t c_in, Dims dims,
              std::vector<T> data)
      : c_out_(c_out), c_in_(c_in), dims_(std::move(dims)),
        data_(std::move(data)) {
    Validate();
    if (data_.size() != c_out_ * c_in_ * product(dims_)) {
      throw ShapeError("kernel data length does not match its shape");
    }
  }

  std::size_t c_out() const { return c_out_; }
  std::size_t c_in() const { return c_in_; }
  const Dims& dims() const { return dims_; }
  std::size_t ndim() const { return dims_.size(); }
  std::size_t samples_per_pair() const { return product(dims_); }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  std::span<T> pair(std::size_t o, std::size_t i) {
    return std::span<T>(data_).subspan((o * c_in_ + i) * samples_per_pair(),
                                       samples_per_pair());
  }
  std::span<const T> pair(std::size_t o, std::size_t i) const {
    return std::span<const T>(data_).subspan(
        (o * c_in_ + i) * samples_per_pair(), samples_per_pair());
  }

  /// The same samples viewed as a signal with C_out*C_in channels.
  ChannelSignal<T> as_signal() const {
    return ChannelSignal<T>(c_out_ * c_in_, dims_, data_);
  }

  template <typename U>
  KernelField<U> cast() const {
    return KernelField<U>(c_out_, c_in_, dims_,
                          std::vector<U>(data_.begin(), data_.end()));
  }

  friend bool operator==(const KernelField&, const KernelField&) = default;

 private:
  void Validate() const {
    if (c_out_ == 0 || c_in_ == 0) {
      throw ShapeError("kernel needs at least one input and output channel");
    }
    if (dims_.empty() || dims_.size() > 2) {
      throw ShapeError("kernel must have 1 or 2 spatial axes");
    }
    for (std::size_t d : dims_) {
      if (d == 0) throw ShapeError("zero-length kernel axis");
    }
  }

  std::size_t c_out_ = 0;
  std::size_t c_in_ = 0;
  Dims dims_;
  std::vector<T> data_;
};

template <typename T>
T max_abs(std::span<const T> v) {
  T m{0};
  for (T x : v) m = std::max(m, std::abs(x));
  return m;
}

/// max |a - b| over matching samples; shapes must agree.
template <typename T>
double max_abs_diff(const ChannelSignal<T>& a, const ChannelSignal<T>& b) {
  if (a.channels() != b.channels() || a.dims() != b.dims()) {
    throw ShapeError("cannot compare signals of different shapes");
  }
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    m = std::max(m, std::abs(static_cast<double>(da[i]) -
                             static_cast<double>(db[i])));
  }
  return m;
}

}  // namespace symconv
