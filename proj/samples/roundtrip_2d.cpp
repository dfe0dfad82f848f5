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

// Pushes a random 2-channel image through a WA/WS layer and back.

#include <iostream>

#include "symconv/symconv.hpp"

int main() {
  using namespace symconv;
  Rng rng(42);
  const AxisModes x_modes = {PadMode::kWA, PadMode::kWS};
  const AxisModes w_modes = {PadMode::kWA, PadMode::kWS};
  const Dims dims = {12, 16};

  const auto kernel = well_conditioned_kernel<double>(
      rng, 2, {1, 1}, w_modes, x_modes, padded_dims_for(x_modes, dims));
  const auto x = random_signal<double>(rng, 2, dims);

  const auto y = forward(x, kernel, x_modes);
  const auto x_back = inverse(y.y, kernel, x_modes);

  std::cout << "output modes " << to_token(y.y_modes) << ", dims "
            << dims_string(y.y.dims()) << '\n'
            << "max |x - inverse(forward(x))| = " << max_abs_diff(x, x_back)
            << '\n';
  return 0;
}
