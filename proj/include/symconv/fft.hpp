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

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

#include "symconv/error.hpp"

namespace symconv {

/// Complex FFT of a fixed length, unnormalized in both directions:
///
///   forward  X[k] = sum_n x[n] exp(-2 pi i k n / N)
///   backward x[n] = sum_k X[k] exp(+2 pi i k n / N)
///
/// Lengths factor into radices 4, 2 and odd primes up to kMaxRadix, which
/// run as recursive decimation-in-time passes. Any other length goes
/// through Bluestein's chirp-z transform on a power-of-two plan.
template <typename T>
class FftPlan {
 public:
  using Complex = std::complex<T>;

  static constexpr std::size_t kMaxRadix = 31;

  explicit FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw ShapeError("FFT length must be positive");
    if (Factorize(n, &factors_)) {
      twiddles_ = MakeTwiddles(n);
    } else {
      bluestein_ = std::make_unique<Bluestein>(n);
    }
  }

  std::size_t size() const { return n_; }
  bool uses_bluestein() const { return bluestein_ != nullptr; }

  void forward(std::span<const Complex> in, std::span<Complex> out) const {
    Run(in, out, false);
  }
  void backward(std::span<const Complex> in, std::span<Complex> out) const {
    Run(in, out, true);
  }

  /// In-place convenience wrappers.
  void forward(std::vector<Complex>& data) const {
    std::vector<Complex> out(n_);
    Run(data, out, false);
    data.swap(out);
  }
  void backward(std::vector<Complex>& data) const {
    std::vector<Complex> out(n_);
    Run(data, out, true);
    data.swap(out);
  }

 private:
  struct Bluestein {
    explicit Bluestein(std::size_t n) : sub(NextPow2(2 * n - 1)) {
      const std::size_t m = sub.size();
      chirp.resize(n);
      // exp(-i pi k^2 / n), with k^2 reduced mod 2n before scaling.
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k2 = (k * k) % (2 * n);
        const double angle = -std::numbers::pi * static_cast<double>(k2) /
                             static_cast<double>(n);
        chirp[k] = Complex(static_cast<T>(std::cos(angle)),
                           static_cast<T>(std::sin(angle)));
      }
      std::vector<Complex> b(m, Complex{});
      b[0] = std::conj(chirp[0]);
      for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        b[m - k] = std::conj(chirp[k]);
      }
      kernel.resize(m);
      sub.forward(b, kernel);
    }

    FftPlan sub;
    std::vector<Complex> chirp;
    std::vector<Complex> kernel;  // spectrum of the conjugate chirp
  };

  static std::size_t NextPow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
  }

  // Fills (radix, remaining length) pairs; false if a prime factor is too
  // large for the direct passes.
  static bool Factorize(std::size_t n, std::vector<std::size_t>* factors) {
    std::size_t rest = n;
    std::size_t p = 4;
    while (rest > 1) {
      while (rest % p != 0) {
        if (p == 4) {
          p = 2;
        } else if (p == 2) {
          p = 3;
        } else {
          p += 2;
        }
        if (p * p > rest) p = rest;
      }
      if (p > kMaxRadix) return false;
      rest /= p;
      factors->push_back(p);
      factors->push_back(rest);
    }
    if (factors->empty()) {  // n == 1
      factors->push_back(1);
      factors->push_back(1);
    }
    return true;
  }

  static std::vector<Complex> MakeTwiddles(std::size_t n) {
    std::vector<Complex> tw(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(n);
      tw[i] = Complex(static_cast<T>(std::cos(angle)),
                      static_cast<T>(std::sin(angle)));
    }
    return tw;
  }

  void Run(std::span<const Complex> in, std::span<Complex> out,
           bool inverse) const {
    if (in.size() != n_ || out.size() != n_) {
      throw ShapeError("FFT buffer length mismatch");
    }
    if (bluestein_) {
      RunBluestein(in, out, inverse);
      return;
    }
    if (in.data() == out.data()) {
      std::vector<Complex> copy(in.begin(), in.end());
      Work(out.data(), copy.data(), 1, factors_.data(), inverse);
    } else {
      Work(out.data(), in.data(), 1, factors_.data(), inverse);
    }
  }

  void Work(Complex* out, const Complex* in, std::size_t fstride,
            const std::size_t* factors, bool inverse) const {
    const std::size_t p = factors[0];
    const std::size_t m = factors[1];
    if (m == 1) {
      for (std::size_t i = 0; i < p; ++i) out[i] = in[i * fstride];
    } else {
      for (std::size_t i = 0; i < p; ++i) {
        Work(out + i * m, in + i * fstride, fstride * p, factors + 2,
             inverse);
      }
    }
    if (p == 2) {
      Butterfly2(out, fstride, m, inverse);
    } else if (p > 1) {
      ButterflyGeneric(out, fstride, p, m, inverse);
    }
  }

  Complex Twiddle(std::size_t idx, bool inverse) const {
    return inverse ? std::conj(twiddles_[idx]) : twiddles_[idx];
  }

  void Butterfly2(Complex* out, std::size_t fstride, std::size_t m,
                  bool inverse) const {
    for (std::size_t k = 0; k < m; ++k) {
      const Complex t = out[k + m] * Twiddle(k * fstride, inverse);
      out[k + m] = out[k] - t;
      out[k] += t;
    }
  }

  void ButterflyGeneric(Complex* out, std::size_t fstride, std::size_t p,
                        std::size_t m, bool inverse) const {
    std::vector<Complex> scratch(p);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t q = 0; q < p; ++q) scratch[q] = out[u + q * m];
      for (std::size_t q1 = 0; q1 < p; ++q1) {
        const std::size_t k = u + q1 * m;
        const std::size_t step = (fstride * k) % n_;
        std::size_t idx = 0;
        Complex acc = scratch[0];
        for (std::size_t q = 1; q < p; ++q) {
          idx += step;
          if (idx >= n_) idx -= n_;
          acc += scratch[q] * Twiddle(idx, inverse);
        }
        out[k] = acc;
      }
    }
  }

  // backward(x) = conj(forward(conj(x))).
  void RunBluestein(std::span<const Complex> in, std::span<Complex> out,
                    bool inverse) const {
    const Bluestein& b = *bluestein_;
    const std::size_t m = b.sub.size();
    std::vector<Complex> a(m, Complex{});
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex v = inverse ? std::conj(in[k]) : in[k];
      a[k] = v * b.chirp[k];
    }
    b.sub.forward(a);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b.kernel[k];
    b.sub.backward(a);
    const T scale = T{1} / static_cast<T>(m);
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex v = a[k] * b.chirp[k] * scale;
      out[k] = inverse ? std::conj(v) : v;
    }
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<Complex> twiddles_;
  std::unique_ptr<Bluestein> bluestein_;
};

}  // namespace symconv
