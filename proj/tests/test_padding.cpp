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

#include <random>

#include "symconv/oracle.hpp"
#include "symconv/padding.hpp"

namespace symconv {
namespace {

std::vector<double> normal(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

/// The two ZS extras solve X_0 = 0 and X_{M/2} = 0 for the layout
/// [x, e_a, reversed x, e_b]; both equations are linear in (e_a, e_b).
std::pair<double, double> zs_extras_oracle(const std::vector<double>& x) {
  double sum = 0.0;
  double alt = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    sum += x[n];
    alt += (n % 2 == 0 ? 1.0 : -1.0) * x[n];
  }
  // X_0:      2 sum + e_a + e_b = 0
  // X_{M/2}:  2 alt + e_a - e_b = 0   (e_a at index N, e_b at index 2N+1)
  return {-(sum + alt), -(sum - alt)};
}

TEST(PaddedLength, MatchesModeArithmetic) {
  EXPECT_EQ(padded_length(PadMode::kHS, 4), 8u);
  EXPECT_EQ(padded_length(PadMode::kWS, 4), 6u);
  EXPECT_EQ(padded_length(PadMode::kWA, 4), 10u);
  EXPECT_EQ(padded_length(PadMode::kHA, 4), 8u);
  EXPECT_EQ(padded_length(PadMode::kZS, 4), 10u);
  EXPECT_THROW(padded_length(PadMode::kZS, 5), OddLengthError);
  EXPECT_THROW(padded_length(PadMode::kWS, 1), ShapeError);
}

TEST(PaddedLength, BaseLengthInvertsIt) {
  for (PadMode m : kAllPadModes) {
    for (std::size_t n = 2; n < 20; n += 2) {
      EXPECT_EQ(base_length(m, padded_length(m, n)), n) << to_token(m);
    }
  }
}

TEST(Pad1d, HalfSampleSymmetric) {
  EXPECT_EQ(pad_1d(std::vector<double>{1, 2, 3, 4}, PadMode::kHS).data,
            std::vector<double>({1, 2, 3, 4, 4, 3, 2, 1}));
}

TEST(Pad1d, WholeSampleSymmetric) {
  EXPECT_EQ(pad_1d(std::vector<double>{1, 2, 3, 4}, PadMode::kWS).data,
            std::vector<double>({1, 2, 3, 4, 3, 2}));
}

TEST(Pad1d, HalfSampleAntisymmetric) {
  EXPECT_EQ(pad_1d(std::vector<double>{1, 2, 3, 4}, PadMode::kHA).data,
            std::vector<double>({1, 2, 3, 4, -4, -3, -2, -1}));
}

TEST(Pad1d, WholeSampleAntisymmetric) {
  EXPECT_EQ(pad_1d(std::vector<double>{1, 2, 3, 4}, PadMode::kWA).data,
            std::vector<double>({1, 2, 3, 4, 0, -4, -3, -2, -1, 0}));
}

TEST(Pad1d, ZeroSummedExtras) {
  const std::vector<double> x = {1, 2, 3, 4};
  const auto [ea, eb] = zs_extras_oracle(x);
  EXPECT_EQ(ea, -8.0);
  EXPECT_EQ(eb, -12.0);
  const auto p = pad_1d(x, PadMode::kZS).data;
  EXPECT_EQ(p, std::vector<double>({1, 2, 3, 4, -8, 4, 3, 2, 1, -12}));
  const auto spec = oracle::naive_dft(p);
  EXPECT_LE(std::abs(spec[0]), 1e-12);
  EXPECT_LE(std::abs(spec[5]), 1e-12);
}

TEST(Pad1d, ZeroSummedExtrasMatchOracleOnRandomInput) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 12; n += 2) {
    const auto x = normal(rng, n);
    const auto [ea, eb] = zs_extras_oracle(x);
    const auto p = pad_1d(x, PadMode::kZS).data;
    EXPECT_NEAR(p[n], ea, 1e-12);
    EXPECT_NEAR(p[2 * n + 1], eb, 1e-12);
  }
}

TEST(Unpad1d, RecoversBase) {
  const std::vector<double> x = {1, 2, 3, 4};
  EXPECT_EQ(unpad_1d(pad_1d(x, PadMode::kWS)), x);
  PaddedSignal<double> hs{{5, 6, 6, 5}, 2, PadMode::kHS};
  EXPECT_EQ(unpad_1d(hs), std::vector<double>({5, 6}));
}

TEST(Unpad1d, RepadReproducesZeroSumExtras) {
  const auto p = pad_1d(std::vector<double>{1, 2, 3, 4}, PadMode::kZS);
  const auto again = pad_1d(unpad_1d(p), PadMode::kZS).data;
  EXPECT_EQ(again[4], -8.0);
  EXPECT_EQ(again[9], -12.0);
}

TEST(VerifyMode, AcceptsConstructedPeriods) {
  std::mt19937_64 rng(11);
  const auto x = normal(rng, 6);
  for (PadMode m : kAllPadModes) {
    const auto p = pad_1d(x, m).data;
    EXPECT_TRUE(verify_mode(std::span<const double>(p), m, 6, 0.0)) << to_token(m);
  }
}

TEST(VerifyMode, RejectsBrokenMirror) {
  const std::vector<double> p = {1, 2, 3, 4, 4, 3, 2, 9};
  EXPECT_FALSE(verify_mode(std::span<const double>(p), PadMode::kHS, 4, 1e-12));
}

TEST(PriorZeros, PerMode) {
  EXPECT_EQ(prior_zero_frequencies(PadMode::kWA, 10).members(),
            std::vector<std::size_t>({0, 5}));
  EXPECT_TRUE(prior_zero_frequencies(PadMode::kWS, 6).empty());
  EXPECT_EQ(prior_zero_frequencies(PadMode::kHS, 8).members(),
            std::vector<std::size_t>({4}));
  EXPECT_EQ(prior_zero_frequencies(PadMode::kHA, 8).members(),
            std::vector<std::size_t>({0}));
  EXPECT_EQ(prior_zero_frequencies(PadMode::kZS, 10).members(),
            std::vector<std::size_t>({0, 5}));
}

TEST(PriorZeros, ConfirmedByNaiveTransform) {
  std::mt19937_64 rng(5);
  for (PadMode m : kAllPadModes) {
    for (int t = 0; t < 20; ++t) {
      const auto p = pad_1d(normal(rng, 8), m).data;
      const auto spec = oracle::naive_dft(p);
      double l1 = 0.0;
      for (double v : p) l1 += std::abs(v);
      for (std::size_t k : prior_zero_frequencies(m, p.size()).members()) {
        EXPECT_LE(std::abs(spec[k]) / l1, 1e-10) << to_token(m) << " k=" << k;
      }
    }
  }
}

TEST(Pad2d, SeparableReflection) {
  ChannelSignal<double> x(1, {2, 2}, {1, 2, 3, 4});
  const auto p = pad_2d(x, PadMode::kHS, PadMode::kHS);
  EXPECT_EQ(p.dims(), Dims({4, 4}));
  const std::vector<double> want = {1, 2, 2, 1, 3, 4, 4, 3,
                                    3, 4, 4, 3, 1, 2, 2, 1};
  EXPECT_EQ(std::vector<double>(p.data().begin(), p.data().end()), want);
}

TEST(Pad2d, InsertedZeroRows) {
  std::mt19937_64 rng(2);
  ChannelSignal<double> x(1, {4, 4}, normal(rng, 16));
  const auto p = pad_2d(x, PadMode::kWA, PadMode::kWS);
  ASSERT_EQ(p.dims(), Dims({10, 6}));
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(p.at(0, 4, j), 0.0);
    EXPECT_EQ(p.at(0, 9, j), 0.0);
  }
}

TEST(Pad2d, AxisOrderCommutes) {
  std::mt19937_64 rng(9);
  for (PadMode a : kAllPadModes) {
    for (PadMode b : kAllPadModes) {
      ChannelSignal<double> x(2, {4, 4}, normal(rng, 32));
      const auto p0 = pad(x, {a, b}, false);
      const auto p1 = pad(x, {a, b}, true);
      EXPECT_TRUE(p0 == p1) << to_token(a) << "," << to_token(b);
    }
  }
}

TEST(Pad2d, UnpadInvertsPad) {
  std::mt19937_64 rng(4);
  ChannelSignal<double> x(3, {4, 6}, normal(rng, 72));
  for (PadMode a : kAllPadModes) {
    for (PadMode b : kAllPadModes) {
      const auto p = pad(x, {a, b});
      EXPECT_TRUE(verify_modes(p, {a, b}, 0.0));
      EXPECT_TRUE(unpad(p, x.dims()) == x);
    }
  }
}

TEST(Pad2d, CropWraps) {
  ChannelSignal<double> p(1, {4}, {0, 1, 2, 3});
  const auto c = crop_circular(p, {3}, {3});
  EXPECT_EQ(std::vector<double>(c.data().begin(), c.data().end()),
            std::vector<double>({3, 0, 1}));
}

TEST(ModeTokens, ParseAndPrint) {
  EXPECT_EQ(parse_mode("wa"), PadMode::kWA);
  EXPECT_EQ(parse_axis_modes("wa,ws"), AxisModes({PadMode::kWA, PadMode::kWS}));
  EXPECT_EQ(to_token(AxisModes{PadMode::kHS, PadMode::kZS}), "hs,zs");
  EXPECT_THROW(parse_mode("xx"), std::invalid_argument);
  EXPECT_THROW(parse_axis_modes("ws,ws,ws"), std::invalid_argument);
}

}  // namespace
}  // namespace symconv
