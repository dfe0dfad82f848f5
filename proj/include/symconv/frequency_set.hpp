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
#include <cstddef>
#include <vector>

#include "symconv/error.hpp"

namespace symconv {

/// Subset of {0, M/2} for a single axis of period M.
class FrequencySet {
 public:
  FrequencySet() = default;

  FrequencySet(std::size_t period, bool dc, bool nyquist)
      : period_(period), dc_(dc), nyquist_(nyquist) {
    if (period == 0 || (nyquist && period % 2 != 0)) {
      throw ShapeError("Nyquist frequency requires an even period");
    }
  }

  static FrequencySet none(std::size_t period) { return {period, false, false}; }

  std::size_t period() const { return period_; }
  bool has_dc() const { return dc_; }
  bool has_nyquist() const { return nyquist_; }
  bool empty() const { return !dc_ && !nyquist_; }

  bool contains(std::size_t k) const {
    return (dc_ && k == 0) || (nyquist_ && k == period_ / 2);
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    if (dc_) out.push_back(0);
    if (nyquist_) out.push_back(period_ / 2);
    return out;
  }

  bool is_subset_of(const FrequencySet& other) const {
    return (!dc_ || other.dc_) && (!nyquist_ || other.nyquist_);
  }

  FrequencySet united(const FrequencySet& other) const {
    return {period_, dc_ || other.dc_, nyquist_ || other.nyquist_};
  }

  friend bool operator==(const FrequencySet&, const FrequencySet&) = default;

 private:
  std::size_t period_ = 0;
  bool dc_ = false;
  bool nyquist_ = false;
};

/// Frequencies lying on any of the per-axis lines: (k_0, ..., k_{d-1}) is a
/// member iff some axis a has k_a in axes[a]. In 1D this is the set itself.
struct FrequencyLines {
  std::vector<FrequencySet> axes;

  bool contains(const std::vector<std::size_t>& k) const {
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].contains(k[a])) return true;
    }
    return false;
  }

  bool empty() const {
    return std::all_of(axes.begin(), axes.end(),
                       [](const FrequencySet& s) { return s.empty(); });
  }

  FrequencyLines united(const FrequencyLines& other) const {
    if (other.axes.size() != axes.size()) {
      throw ShapeError("frequency line sets of different rank");
    }
    FrequencyLines out;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      out.axes.push_back(axes[a].united(other.axes[a]));
    }
    return out;
  }
};

}  // namespace symconv
