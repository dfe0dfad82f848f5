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

#include <gtest/gtest.h>

#include <set>

#include "symconv/mode_algebra.hpp"
#include "symconv/oracle.hpp"

namespace symconv {
namespace {

using enum PadMode;

TEST(TransitionTable, RowsAreNumberedInOrder) {
  for (std::size_t i = 0; i < kTransitionTable.size(); ++i) {
    EXPECT_EQ(kTransitionTable[i].id, static_cast<int>(i + 1));
  }
  EXPECT_THROW(table_row(0), std::out_of_range);
  EXPECT_THROW(table_row(21), std::out_of_range);
}

TEST(TransitionTable, CoversEveryInputKernelPairOnce) {
  std::set<std::pair<PadMode, PadMode>> seen;
  for (const auto& r : kTransitionTable) seen.insert({r.x_mode, r.w_mode});
  EXPECT_EQ(seen.size(), 20u);
  for (PadMode x : kAllPadModes) {
    for (PadMode w : {kWS, kHS, kWA, kHA}) {
      EXPECT_EQ(transition(x, w).x_mode, x);
      EXPECT_EQ(transition(x, w).w_mode, w);
    }
  }
}

TEST(Transition, SelectedRows) {
  const auto& r1 = transition(kHA, kWS);
  EXPECT_EQ(r1.id, 1);
  EXPECT_EQ(r1.y_mode, kHA);
  EXPECT_TRUE(r1.y_zeros.dc);
  EXPECT_TRUE(r1.invertible);

  const auto& r12 = transition(kWA, kWA);
  EXPECT_EQ(r12.id, 12);
  EXPECT_EQ(r12.y_mode, kZS);
  EXPECT_EQ(r12.y_zeros, (ZeroFlags{true, true}));
  EXPECT_TRUE(r12.invertible);

  const auto& r18 = transition(kHS, kHA);
  EXPECT_EQ(r18.id, 18);
  EXPECT_EQ(r18.y_mode, kWA);
  EXPECT_EQ(r18.y_zeros, (ZeroFlags{true, true}));
  EXPECT_FALSE(r18.invertible);
}

TEST(Transition, ZeroSummedKernelIsUnsupported) {
  EXPECT_THROW(transition(kWS, kZS), UnsupportedKernelMode);
  EXPECT_THROW(is_invertible(kWS, kZS), UnsupportedKernelMode);
  EXPECT_THROW(kernel_zero_frequencies(kZS, 8), UnsupportedKernelMode);
}

TEST(Invertibility, ClosedFormMatchesTableOnAllRows) {
  const std::set<int> invertible_rows = {1, 2, 3, 4, 5, 12, 15};
  for (const auto& r : kTransitionTable) {
    EXPECT_EQ(is_invertible(r.x_mode, r.w_mode), r.invertible) << r.id;
    EXPECT_EQ(r.invertible, invertible_rows.count(r.id) == 1) << r.id;
  }
  EXPECT_TRUE(is_invertible(kWS, kWS));
  EXPECT_FALSE(is_invertible(kWS, kWA));
  EXPECT_TRUE(is_invertible(kZS, kWA));
}

TEST(KernelZeros, PerMode) {
  EXPECT_EQ(kernel_zero_frequencies(kWA, 12).members(),
            std::vector<std::size_t>({0, 6}));
  EXPECT_TRUE(kernel_zero_frequencies(kWS, 12).empty());
  EXPECT_EQ(kernel_zero_frequencies(kHS, 8).members(),
            std::vector<std::size_t>({4}));
}

TEST(Transition2d, ComposesPerAxis) {
  const auto [h, w] = transition_2d({kWA, kWS}, {kWA, kWS});
  EXPECT_EQ(h.y_mode, kZS);
  EXPECT_EQ(w.y_mode, kWS);
  EXPECT_TRUE(is_invertible_2d({kWA, kWS}, {kWA, kWS}));

  EXPECT_FALSE(is_invertible_2d({kWS, kWS}, {kWS, kHA}));
  EXPECT_EQ(transition_2d({kWS, kWS}, {kWS, kHA}).second.id, 19);

  EXPECT_TRUE(is_invertible_2d({kHS, kHS}, {kWS, kWS}));
  EXPECT_EQ(output_modes({kHS, kHS}, {kWS, kWS}), AxisModes({kHS, kHS}));
}

TEST(OutputPhase, FrozenShifts) {
  // Half-sample kernels and whole-sample kernels on whole-sample inputs move
  // the symmetry axis off the canonical position.
  for (int id = 1; id <= 20; ++id) {
    const std::size_t m = oracle::table_period_for_row(id, 8);
    std::size_t want = 0;
    if (id == 7 || id == 8 || id == 16 || id == 17) want = 3;
    if (id == 10 || id == 20) want = 4;
    if (id == 14) want = 1;
    EXPECT_EQ(output_phase_shift(table_row(id), m), want) << "row " << id;
  }
  EXPECT_EQ(output_phase_shift(table_row(8), 16), 7u);
  EXPECT_EQ(output_phase_shift(table_row(14), 16), 1u);
}

TEST(Describe, CitesRowNumber) {
  EXPECT_EQ(describe_row(table_row(14)), "row 14 (WS input, WA kernel -> WA)");
}

}  // namespace
}  // namespace symconv
