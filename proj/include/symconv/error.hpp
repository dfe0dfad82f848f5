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

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symconv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File does not follow the expected container layout (bad magic, version).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File header is readable but inconsistent with its payload.
class CorruptFile : public Error {
 public:
  using Error::Error;
};

class UnsupportedDtype : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  enum class Reason { kOpen, kWrite, kInvalidSample };

  IoError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Zero-summed extension requested for an odd base length.
class OddLengthError : public ShapeError {
 public:
  using ShapeError::ShapeError;
};

/// Inverse transform left an imaginary residue above tolerance.
class NotRealError : public Error {
 public:
  using Error::Error;
};

/// A kernel channel matrix outside the skip set is numerically singular.
class SingularFrequencyError : public Error {
 public:
  SingularFrequencyError(std::vector<std::size_t> frequency, double ratio,
                         std::optional<std::size_t> layer = std::nullopt)
      : Error(Describe(frequency, ratio, layer)),
        frequency_(std::move(frequency)),
        ratio_(ratio),
        layer_(layer) {}

  const std::vector<std::size_t>& frequency() const noexcept {
    return frequency_;
  }
  double ratio() const noexcept { return ratio_; }
  std::optional<std::size_t> layer() const noexcept { return layer_; }

  SingularFrequencyError WithLayer(std::size_t layer) const {
    return SingularFrequencyError(frequency_, ratio_, layer);
  }

 private:
  static std::string Describe(const std::vector<std::size_t>& frequency,
                              double ratio,
                              std::optional<std::size_t> layer) {
    std::ostringstream os;
    os << "singular kernel spectrum at frequency (";
    for (std::size_t i = 0; i < frequency.size(); ++i) {
      os << (i ? "," : "") << frequency[i];
    }
    os << "), singular value ratio " << ratio;
    if (layer) os << " in layer " << *layer;
    return os.str();
  }

  std::vector<std::size_t> frequency_;
  double ratio_;
  std::optional<std::size_t> layer_;
};

/// Kernel mode has no row in the transition table (ZS), or cannot be
/// embedded as a layer kernel (HS, HA).
class UnsupportedKernelMode : public Error {
 public:
  using Error::Error;
};

class NonInvertibleModePair : public Error {
 public:
  NonInvertibleModePair(int row, const std::string& what)
      : Error(what), row_(row) {}

  /// Transition table row (1-based) of the offending pair.
  int row() const noexcept { return row_; }

 private:
  int row_;
};

/// Consecutive stack layers disagree on the padding mode they exchange.
class ChainError : public Error {
 public:
  using Error::Error;
};

class RowViolation : public Error {
 public:
  RowViolation(int row, const std::string& what) : Error(what), row_(row) {}
  int row() const noexcept { return row_; }

 private:
  int row_;
};

}  // namespace symconv
