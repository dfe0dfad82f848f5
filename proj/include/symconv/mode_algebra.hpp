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

// How padding modes combine under circular convolution of two extended
// signals, and which combinations can be undone from the output alone.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/frequency_set.hpp"
#include "symconv/padding.hpp"

namespace symconv {

/// Whether the DC and Nyquist coefficients are forced to zero.
struct ZeroFlags {
  bool dc = false;
  bool nyquist = false;

  friend constexpr bool operator==(ZeroFlags, ZeroFlags) = default;
};

struct TransitionRow {
  int id = 0;
  PadMode x_mode = PadMode::kWS;
  PadMode w_mode = PadMode::kWS;
  PadMode y_mode = PadMode::kWS;
  ZeroFlags x_zeros;
  ZeroFlags w_zeros;
  ZeroFlags y_zeros;
  bool invertible = false;
};

namespace detail {
inline constexpr ZeroFlags kFree{false, false};
inline constexpr ZeroFlags kDc{true, false};
inline constexpr ZeroFlags kNyq{false, true};
inline constexpr ZeroFlags kBoth{true, true};
}  // namespace detail

/// The normative transition table: inputs in the order HA, WA, HS, WS, ZS
/// for each kernel mode WS, HS, WA, HA.
inline constexpr std::array<TransitionRow, 20> kTransitionTable = [] {
  using enum PadMode;
  using namespace detail;
  return std::array<TransitionRow, 20>{{
      {1, kHA, kWS, kHA, kDc, kFree, kDc, true},
      {2, kWA, kWS, kWA, kBoth, kFree, kBoth, true},
      {3, kHS, kWS, kHS, kNyq, kFree, kNyq, true},
      {4, kWS, kWS, kWS, kFree, kFree, kFree, true},
      {5, kZS, kWS, kZS, kBoth, kFree, kBoth, true},
      {6, kHA, kHS, kWA, kDc, kNyq, kBoth, false},
      {7, kWA, kHS, kHA, kBoth, kNyq, kBoth, false},
      {8, kHS, kHS, kWS, kNyq, kNyq, kNyq, false},
      {9, kWS, kHS, kHS, kFree, kNyq, kNyq, false},
      {10, kZS, kHS, kHS, kBoth, kNyq, kBoth, false},
      {11, kHA, kWA, kHS, kDc, kBoth, kBoth, false},
      {12, kWA, kWA, kZS, kBoth, kBoth, kBoth, true},
      {13, kHS, kWA, kHA, kNyq, kBoth, kBoth, false},
      {14, kWS, kWA, kWA, kFree, kBoth, kBoth, false},
      {15, kZS, kWA, kWA, kBoth, kBoth, kBoth, true},
      {16, kHA, kHA, kWS, kDc, kDc, kDc, false},
      {17, kWA, kHA, kHS, kBoth, kDc, kBoth, false},
      {18, kHS, kHA, kWA, kNyq, kDc, kBoth, false},
      {19, kWS, kHA, kHA, kFree, kDc, kDc, false},
      {20, kZS, kHA, kHA, kBoth, kDc, kBoth, false},
  }};
}();

inline const TransitionRow& table_row(int id) {
  if (id < 1 || id > static_cast<int>(kTransitionTable.size())) {
    throw std::out_of_range("transition table rows are numbered 1-20, got " +
                            std::to_string(id));
  }
  return kTransitionTable[static_cast<std::size_t>(id - 1)];
}

inline const TransitionRow& transition(PadMode x_mode, PadMode w_mode) {
  if (w_mode == PadMode::kZS) {
    throw UnsupportedKernelMode("ZS is not a kernel padding mode");
  }
  for (const auto& row : kTransitionTable) {
    if (row.x_mode == x_mode && row.w_mode == w_mode) return row;
  }
  throw UnsupportedKernelMode("no transition for " + mode_name(x_mode) + "/" +
                              mode_name(w_mode));
}

/// Frequencies at which every kernel extended in `w_mode` vanishes.
inline FrequencySet kernel_zero_frequencies(PadMode w_mode,
                                            std::size_t period) {
  if (w_mode == PadMode::kZS) {
    throw UnsupportedKernelMode("ZS is not a kernel padding mode");
  }
  return prior_zero_frequencies(w_mode, period);
}

/// Closed-form invertibility: the kernel must be whole-sample (its axis sits
/// on a sample, so the output keeps the input's base length and phase) and
/// every frequency it annihilates must already be known to vanish in the
/// input.
inline bool is_invertible(PadMode x_mode, PadMode w_mode) {
  if (w_mode == PadMode::kZS) {
    throw UnsupportedKernelMode("ZS is not a kernel padding mode");
  }
  if (w_mode != PadMode::kWS && w_mode != PadMode::kWA) return false;
  // Any even period works; the subset relation does not depend on it.
  constexpr std::size_t kProbe = 8;
  return kernel_zero_frequencies(w_mode, kProbe)
      .is_subset_of(prior_zero_frequencies(x_mode, kProbe));
}

/// Circular shift s such that q[n] = y[(n + s) mod M] puts the convolution
/// output of `row` into the canonical phase of its output mode. Kernels are
/// taken in canonical phase too (axis at 0 for WS/WA, at -1/2 for HS/HA).
inline std::size_t output_phase_shift(const TransitionRow& row,
                                      std::size_t period) {
  int axis2 = symmetry_axis_half_samples(row.x_mode);
  if (row.w_mode == PadMode::kHS || row.w_mode == PadMode::kHA) {
    axis2 += symmetry_axis_half_samples(row.w_mode);
  }
  const int delta = (axis2 - symmetry_axis_half_samples(row.y_mode)) / 2;
  const long half = static_cast<long>(period / 2);
  return static_cast<std::size_t>(((delta % half) + half) % half);
}

/// Per-axis transition of a 1D or 2D configuration.
inline std::vector<TransitionRow> transition_axes(const AxisModes& x_modes,
                                                  const AxisModes& w_modes) {
  if (x_modes.size() != w_modes.size()) {
    throw ShapeError("input and kernel mode counts differ");
  }
  std::vector<TransitionRow> rows;
  for (std::size_t a = 0; a < x_modes.size(); ++a) {
    rows.push_back(transition(x_modes[a], w_modes[a]));
  }
  return rows;
}

inline std::pair<TransitionRow, TransitionRow> transition_2d(
    std::pair<PadMode, PadMode> x_modes, std::pair<PadMode, PadMode> w_modes) {
  return {transition(x_modes.first, w_modes.first),
          transition(x_modes.second, w_modes.second)};
}

inline bool is_invertible_2d(std::pair<PadMode, PadMode> x_modes,
                             std::pair<PadMode, PadMode> w_modes) {
  const auto [h, w] = transition_2d(x_modes, w_modes);
  return h.invertible && w.invertible;
}

inline AxisModes output_modes(const AxisModes& x_modes,
                              const AxisModes& w_modes) {
  AxisModes out;
  for (const auto& row : transition_axes(x_modes, w_modes)) {
    out.push_back(row.y_mode);
  }
  return out;
}

inline FrequencyLines kernel_zero_lines(const AxisModes& w_modes,
                                        const Dims& periods) {
  FrequencyLines out;
  for (std::size_t a = 0; a < w_modes.size(); ++a) {
    out.axes.push_back(kernel_zero_frequencies(w_modes[a], periods[a]));
  }
  return out;
}

inline std::string describe_row(const TransitionRow& row) {
  return "row " + std::to_string(row.id) + " (" + mode_name(row.x_mode) +
         " input, " + mode_name(row.w_mode) + " kernel -> " +
         mode_name(row.y_mode) + ")";
}

}  // namespace symconv
