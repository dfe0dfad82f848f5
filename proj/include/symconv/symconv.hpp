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


// Umbrella header.

#pragma once

#include "symconv/error.hpp"
#include "symconv/fft.hpp"
#include "symconv/frequency_set.hpp"
#include "symconv/invertible_conv.hpp"
#include "symconv/linalg.hpp"
#include "symconv/mode_algebra.hpp"
#include "symconv/oracle.hpp"
#include "symconv/padding.hpp"
#include "symconv/random.hpp"
#include "symconv/spectral.hpp"
#include "symconv/tensor.hpp"
#include "symconv/tensor_io.hpp"
