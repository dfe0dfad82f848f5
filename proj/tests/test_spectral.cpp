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

#include <complex>
#include <random>

#include "symconv/fft.hpp"
#include "symconv/oracle.hpp"
#include "symconv/spectral.hpp"

namespace symconv {
namespace {

using C = std::complex<double>;

std::vector<double> normal(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

double max_diff(std::span<const C> a, std::span<const C> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(FftPlan, MatchesNaiveTransformUpTo64) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 64; ++n) {
    FftPlan<double> plan(n);
    const auto x = normal(rng, n);
    std::vector<C> data(x.begin(), x.end());
    plan.forward(data);
    EXPECT_LE(max_diff(data, oracle::naive_dft(x)), 1e-9) << "n=" << n;
  }
}

TEST(FftPlan, LargePrimesUseChirpZ) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {37u, 61u, 74u, 97u, 127u}) {
    FftPlan<double> plan(n);
    EXPECT_TRUE(plan.uses_bluestein()) << n;
    const auto x = normal(rng, n);
    std::vector<C> data(x.begin(), x.end());
    plan.forward(data);
    EXPECT_LE(max_diff(data, oracle::naive_dft(x)), 1e-9) << "n=" << n;
  }
  EXPECT_FALSE(FftPlan<double>(60).uses_bluestein());
}

TEST(FftPlan, BackwardUndoesForward) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {6u, 16u, 30u, 37u, 48u}) {
    FftPlan<double> plan(n);
    std::vector<C> data(n);
    for (auto& v : data) v = {normal(rng, 1)[0], normal(rng, 1)[0]};
    auto work = data;
    plan.forward(work);
    plan.backward(work);
    for (auto& v : work) v /= static_cast<double>(n);
    EXPECT_LE(max_diff(work, data), 1e-12) << n;
  }
}

TEST(DftForward, ConstantAndDelta) {
  const auto ones = dft_forward(ChannelSignal<double>(1, {4}, {1, 1, 1, 1}));
  EXPECT_EQ(ones.at(0, 0, 0), C(4, 0));
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LE(std::abs(ones.at(0, 0, k)), 1e-15);
  const auto delta = dft_forward(ChannelSignal<double>(1, {4}, {1, 0, 0, 0}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(delta.at(0, 0, k), C(1, 0));
  const auto nyq = dft_forward(ChannelSignal<double>(1, {4}, {1, -1, 1, -1}));
  EXPECT_NEAR(nyq.at(0, 0, 2).real(), 4.0, 1e-15);
  EXPECT_LE(std::abs(nyq.at(0, 0, 0)), 1e-15);
}

TEST(DftForward, RandomLengthSixteenAgainstNaive) {
  std::mt19937_64 rng(4);
  const auto x = normal(rng, 16);
  const auto s = dft_forward(ChannelSignal<double>(1, {16}, x));
  EXPECT_LE(max_diff(s.block(0, 0), oracle::naive_dft(x)), 1e-9);
}

TEST(DftForward, TwoDimensional) {
  const auto s = dft2_forward(ChannelSignal<double>(1, {2, 2}, {1, 1, 1, 1}));
  EXPECT_EQ(s.at(0, 0, 0), C(4, 0));
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LE(std::abs(s.at(0, 0, k)), 1e-15);

  std::mt19937_64 rng(5);
  const auto x = normal(rng, 24);
  const ChannelSignal<double> grid(1, {4, 6}, x);
  const auto a = dft_forward(grid, false);
  const auto b = dft_forward(grid, true);
  EXPECT_LE(max_diff(a.coeffs(), b.coeffs()), 1e-10);
  EXPECT_LE(max_diff(a.coeffs(), oracle::naive_dft_2d(std::span<const double>(x), 4, 6)),
            1e-10);
}

TEST(DftForward, Separable) {
  const std::vector<double> u = {1, -2, 0.5};
  const std::vector<double> v = {3, 1, -1, 2};
  std::vector<double> uv;
  for (double a : u) {
    for (double b : v) uv.push_back(a * b);
  }
  const auto s = dft2_forward(ChannelSignal<double>(1, {3, 4}, uv));
  const auto fu = oracle::naive_dft(u);
  const auto fv = oracle::naive_dft(v);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_LE(std::abs(s.at(0, 0, i * 4 + j) - fu[i] * fv[j]), 1e-12);
    }
  }
}

TEST(DftInverse, RoundTripAndRealCheck) {
  std::mt19937_64 rng(6);
  const ChannelSignal<double> x(3, {5, 8}, normal(rng, 120));
  const auto back = dft2_inverse(dft2_forward(x));
  EXPECT_LE(max_abs_diff(x, back), 1e-13);

  Spectrum<double> bad(1, 1, {4});
  bad.at(0, 0, 1) = C(0, 1);
  EXPECT_THROW(dft_inverse(bad), NotRealError);
}

TEST(SpectrumMultiply, ScalarIsElementwise) {
  std::mt19937_64 rng(7);
  const ChannelSignal<double> x(1, {8}, normal(rng, 8));
  const ChannelSignal<double> w(1, {8}, normal(rng, 8));
  const auto sx = dft_forward(x);
  const auto sw = dft_forward(w);
  const auto y = spectrum_multiply(sw, sx);
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_EQ(y.at(0, 0, k), sw.at(0, 0, k) * sx.at(0, 0, k));
  }
}

TEST(SpectrumMultiply, IdentityLeavesInput) {
  std::mt19937_64 rng(8);
  const ChannelSignal<double> x(2, {6}, normal(rng, 12));
  Spectrum<double> eye(2, 2, {6});
  for (std::size_t k = 0; k < 6; ++k) {
    eye.at(0, 0, k) = 1.0;
    eye.at(1, 1, k) = 1.0;
  }
  EXPECT_LE(max_abs_diff(dft_inverse(spectrum_multiply(eye, dft_forward(x))), x),
            1e-15);
}

TEST(SpectrumMultiply, MatchesNaiveCircularConvolution) {
  std::mt19937_64 rng(9);
  const ChannelSignal<double> x(2, {8}, normal(rng, 16));
  const KernelField<double> w(2, 2, {8}, normal(rng, 32));
  const auto direct = oracle::naive_circular_conv(x, w);
  const auto fast = spectrum_multiply(dft_forward(w), dft_forward(x));
  const auto want = dft_forward(direct);
  EXPECT_LE(max_diff(fast.coeffs(), want.coeffs()), 1e-9);
}

TEST(SpectrumMultiply, RejectsMismatches) {
  Spectrum<double> a(2, 2, {8});
  Spectrum<double> b(3, 1, {8});
  Spectrum<double> c(2, 1, {6});
  EXPECT_THROW(spectrum_multiply(a, b), ShapeError);
  EXPECT_THROW(spectrum_multiply(a, c), ShapeError);
}

TEST(SpectrumInverse, ScalarReciprocal) {
  Spectrum<double> w(1, 1, {6});
  for (std::size_t k = 0; k < 6; ++k) w.at(0, 0, k) = 2.0;
  const auto inv = spectrum_matrix_inverse(w, {{FrequencySet(6, false, false)}});
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(inv.at(0, 0, k), C(0.5, 0));
}

TEST(SpectrumInverse, SkipsStructuralZeros) {
  // Purely imaginary, odd spectrum vanishing at 0 and M/2.
  Spectrum<double> w(1, 1, {8});
  for (std::size_t k = 1; k < 8; ++k) {
    if (k != 4) w.at(0, 0, k) = C(0, k < 4 ? 1.0 + k : -(9.0 - k));
  }
  const FrequencyLines skip{{FrequencySet(8, true, true)}};
  const auto inv = spectrum_matrix_inverse(w, skip);
  EXPECT_EQ(inv.at(0, 0, 0), C(0, 0));
  EXPECT_EQ(inv.at(0, 0, 4), C(0, 0));
  for (std::size_t k : {1u, 2u, 3u, 5u, 6u, 7u}) {
    EXPECT_LE(std::abs(inv.at(0, 0, k) * w.at(0, 0, k) - 1.0), 1e-15);
  }
  EXPECT_THROW(spectrum_matrix_inverse(w, {{FrequencySet(8, false, false)}}),
               SingularFrequencyError);
}

TEST(SpectrumInverse, MultipliesBackToIdentity) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> d;
  Spectrum<double> w(3, 3, {8});
  for (auto& v : w.coeffs()) v = {d(rng), d(rng)};
  const auto inv = spectrum_matrix_inverse(w, {{FrequencySet(8, false, false)}});
  for (std::size_t k = 0; k < 8; ++k) {
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        C acc = 0.0;
        for (std::size_t j = 0; j < 3; ++j) acc += inv.at(r, j, k) * w.at(j, c, k);
        EXPECT_LE(std::abs(acc - (r == c ? 1.0 : 0.0)), 1e-9);
      }
    }
  }
}

TEST(SpectrumInverse, ReportsSingularFrequency) {
  Spectrum<double> w(2, 2, {4});
  for (std::size_t k = 0; k < 4; ++k) {
    w.at(0, 0, k) = 1.0;
    w.at(1, 1, k) = 1.0;
  }
  w.at(0, 1, 3) = 1.0;
  w.at(1, 0, 3) = 1.0;
  try {
    spectrum_matrix_inverse(w, {{FrequencySet(4, false, false)}});
    FAIL() << "expected SingularFrequencyError";
  } catch (const SingularFrequencyError& e) {
    EXPECT_EQ(e.frequency(), std::vector<std::size_t>({3}));
    EXPECT_LT(e.ratio(), 1e-10);
  }
}

TEST(SinglePrecision, TransformsStayAccurate) {
  std::mt19937_64 rng(12);
  const auto x = normal(rng, 32);
  const ChannelSignal<float> xf(1, {32}, std::vector<float>(x.begin(), x.end()));
  const auto s = dft_forward(xf);
  const auto want = oracle::naive_dft(std::span<const float>(xf.data()));
  for (std::size_t k = 0; k < 32; ++k) {
    EXPECT_LE(std::abs(C(s.at(0, 0, k)) - want[k]), 1e-4);
  }
  EXPECT_LE(max_abs_diff(dft_inverse(s), xf), 1e-5);
}

}  // namespace
}  // namespace symconv
