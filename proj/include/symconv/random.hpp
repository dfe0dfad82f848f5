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

// Seeded draws of signals and kernels for verification runs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/invertible_conv.hpp"
#include "symconv/padding.hpp"
#include "symconv/tensor.hpp"

namespace symconv {

using Rng = std::mt19937_64;
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Standard normal samples, drawn in double precision.
inline std::vector<double> normal_samples(Rng& rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

template <typename T>
ChannelSignal<T> random_signal(Rng& rng, std::size_t channels,
                               const Dims& dims) {
  const auto v = normal_samples(rng, channels * product(dims));
  return ChannelSignal<T>(channels, dims, std::vector<T>(v.begin(), v.end()));
}

/// Taps with an identity block on the dominant tap plus N(0, noise^2)
/// perturbations everywhere. The dominant tap is the center on WS axes and
/// one step right of center on WA axes, where the center is annihilated.
template <typename T>
KernelSpec<T> random_kernel(Rng& rng, std::size_t c_out, std::size_t c_in,
                            const Dims& radius, const AxisModes& w_modes,
                            double noise = 0.3) {
  if (radius.size() != w_modes.size()) {
    throw ShapeError("need one radius per kernel axis");
  }
  Dims extents;
  std::size_t dominant = 0;
  for (std::size_t a = 0; a < radius.size(); ++a) {
    if (w_modes[a] == PadMode::kWA && radius[a] == 0) {
      throw ShapeError("an anti-symmetric axis needs radius >= 1");
    }
    extents.push_back(2 * radius[a] + 1);
    dominant = dominant * extents[a] + radius[a] +
               (w_modes[a] == PadMode::kWA ? 1 : 0);
  }
  const auto v = normal_samples(rng, c_out * c_in * product(extents));
  KernelField<T> taps(c_out, c_in, extents);
  auto dst = taps.data();
  for (std::size_t i = 0; i < v.size(); ++i) dst[i] = static_cast<T>(noise * v[i]);
  for (std::size_t c = 0; c < std::min(c_out, c_in); ++c) {
    taps.pair(c, c)[dominant] += T{1};
  }
  return {std::move(taps), w_modes};
}

/// Draws kernels until every frequency outside the input's prior zeros and
/// the kernel's structural zeros has sigma_min / sigma_max >= min_ratio.
template <typename T>
KernelSpec<T> well_conditioned_kernel(Rng& rng, std::size_t channels,
                                      const Dims& radius,
                                      const AxisModes& w_modes,
                                      const AxisModes& x_modes,
                                      const Dims& periods,
                                      double min_ratio = 1e-6,
                                      double noise = 0.3,
                                      int max_attempts = 1000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    KernelSpec<T> spec =
        random_kernel<T>(rng, channels, channels, radius, w_modes, noise);
    const ConditionReport rep = condition_report(spec, x_modes, periods);
    double worst = 1.0;
    for (const auto& e : rep.entries) {
      if (!e.in_skip && !e.structural) worst = std::min(worst, e.ratio);
    }
    if (worst >= min_ratio) return spec;
  }
  throw SingularFrequencyError({}, 0.0);
}

}  // namespace symconv
