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

// ICNV tensor container and binary PGM ingestion.
//
// ICNV layout, little-endian, no padding between fields:
//
//   "ICNV" | version u8 = 1 | dtype u8 (0 = f32, 1 = f64) | ndim u8
//   | channels-present u8 | channels u32 | dims: ndim x u32 | payload
//
// Signals are written with channels-present = 1 and ndim in {1, 2}; the
// payload is channel-major, row-major within a channel. Kernel tap files
// use channels-present = 0 (channels field = 1) with ndim in {3, 4} and
// dims [C_out, C_in, taps...].

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "symconv/error.hpp"
#include "symconv/tensor.hpp"

namespace symconv {

inline constexpr char kIcnvMagic[4] = {'I', 'C', 'N', 'V'};
inline constexpr std::uint8_t kIcnvVersion = 1;

/// Decoded ICNV file before it is interpreted as a signal or a kernel.
struct IcnvRecord {
  Precision dtype = Precision::kDouble;
  bool channels_present = true;
  std::uint32_t channels = 1;
  std::vector<std::uint32_t> dims;
  std::vector<double> values;
};

inline std::size_t icnv_header_size(std::size_t ndim) { return 12 + 4 * ndim; }

namespace detail {

inline void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back((v >> (8 * b)) & 0xFFu);
}

inline void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back((v >> (8 * b)) & 0xFFu);
}

inline std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int b = 3; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

inline std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

inline std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Reason::kOpen, "cannot open " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

inline void spill(const std::string& path,
                  const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoError::Reason::kOpen, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(IoError::Reason::kWrite, "write failed: " + path);
}

}  // namespace detail

inline std::vector<unsigned char> encode_icnv(const IcnvRecord& rec) {
  std::size_t count = 1;
  for (auto d : rec.dims) count *= d;
  if (rec.channels_present) count *= rec.channels;
  if (count != rec.values.size()) {
    throw ShapeError("ICNV record value count does not match its header");
  }
  std::vector<unsigned char> out;
  out.reserve(icnv_header_size(rec.dims.size()) +
              count * (rec.dtype == Precision::kSingle ? 4 : 8));
  out.insert(out.end(), std::begin(kIcnvMagic), std::end(kIcnvMagic));
  out.push_back(kIcnvVersion);
  out.push_back(rec.dtype == Precision::kSingle ? 0 : 1);
  out.push_back(static_cast<unsigned char>(rec.dims.size()));
  out.push_back(rec.channels_present ? 1 : 0);
  detail::put_u32(out, rec.channels_present ? rec.channels : 1);
  for (auto d : rec.dims) detail::put_u32(out, d);
  for (double v : rec.values) {
    if (!std::isfinite(v)) {
      throw IoError(IoError::Reason::kInvalidSample,
                    "non-finite sample cannot be stored");
    }
    if (rec.dtype == Precision::kSingle) {
      const float f = static_cast<float>(v);
      if (!std::isfinite(f)) {
        throw IoError(IoError::Reason::kInvalidSample,
                      "sample overflows single precision");
      }
      detail::put_u32(out, std::bit_cast<std::uint32_t>(f));
    } else {
      detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
    }
  }
  return out;
}

inline IcnvRecord decode_icnv(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kIcnvMagic, 4) != 0) {
    throw FormatError("missing ICNV magic");
  }
  if (bytes.size() < icnv_header_size(0)) {
    throw CorruptFile("truncated ICNV header");
  }
  if (bytes[4] != kIcnvVersion) {
    throw FormatError("unsupported ICNV version " + std::to_string(bytes[4]));
  }
  IcnvRecord rec;
  switch (bytes[5]) {
    case 0: rec.dtype = Precision::kSingle; break;
    case 1: rec.dtype = Precision::kDouble; break;
    default:
      throw UnsupportedDtype("unsupported ICNV dtype code " +
                             std::to_string(bytes[5]));
  }
  const std::size_t ndim = bytes[6];
  if (bytes[7] > 1) throw FormatError("invalid channels-present flag");
  rec.channels_present = bytes[7] == 1;
  if (rec.channels_present ? (ndim < 1 || ndim > 2) : (ndim < 3 || ndim > 4)) {
    throw FormatError("unsupported ICNV rank " + std::to_string(ndim));
  }
  if (bytes.size() < icnv_header_size(ndim)) {
    throw CorruptFile("truncated ICNV header");
  }
  rec.channels = detail::get_u32(bytes.data() + 8);
  if (rec.channels == 0) throw CorruptFile("zero channel count");
  std::size_t count = rec.channels_present ? rec.channels : 1;
  for (std::size_t a = 0; a < ndim; ++a) {
    const auto d = detail::get_u32(bytes.data() + 12 + 4 * a);
    if (d == 0) throw CorruptFile("zero-length axis in ICNV header");
    rec.dims.push_back(d);
    count *= d;
  }
  const std::size_t width = rec.dtype == Precision::kSingle ? 4 : 8;
  const std::size_t payload = bytes.size() - icnv_header_size(ndim);
  if (payload != count * width) {
    throw CorruptFile("ICNV payload holds " + std::to_string(payload / width) +
                      " values, header declares " + std::to_string(count));
  }
  rec.values.resize(count);
  const unsigned char* p = bytes.data() + icnv_header_size(ndim);
  for (std::size_t i = 0; i < count; ++i, p += width) {
    rec.values[i] =
        rec.dtype == Precision::kSingle
            ? static_cast<double>(std::bit_cast<float>(detail::get_u32(p)))
            : std::bit_cast<double>(detail::get_u64(p));
    if (!std::isfinite(rec.values[i])) {
      throw CorruptFile("non-finite sample in ICNV payload");
    }
  }
  return rec;
}

inline IcnvRecord read_icnv(const std::string& path) {
  return decode_icnv(detail::slurp(path));
}

inline ChannelSignal<double> read_tensor_file(const std::string& path) {
  IcnvRecord rec = read_icnv(path);
  if (!rec.channels_present) {
    throw FormatError(path + " holds kernel taps, not a signal");
  }
  return ChannelSignal<double>(rec.channels,
                               Dims(rec.dims.begin(), rec.dims.end()),
                               std::move(rec.values));
}

template <typename T>
void write_tensor_file(const ChannelSignal<T>& signal, const std::string& path,
                       Precision precision) {
  IcnvRecord rec;
  rec.dtype = precision;
  rec.channels = static_cast<std::uint32_t>(signal.channels());
  rec.dims.assign(signal.dims().begin(), signal.dims().end());
  rec.values.assign(signal.data().begin(), signal.data().end());
  detail::spill(path, encode_icnv(rec));
}

inline KernelField<double> read_kernel_file(const std::string& path) {
  IcnvRecord rec = read_icnv(path);
  if (rec.channels_present) {
    throw FormatError(path + " holds a signal, not kernel taps");
  }
  Dims spatial(rec.dims.begin() + 2, rec.dims.end());
  return KernelField<double>(rec.dims[0], rec.dims[1], std::move(spatial),
                             std::move(rec.values));
}

template <typename T>
void write_kernel_file(const KernelField<T>& taps, const std::string& path,
                       Precision precision) {
  IcnvRecord rec;
  rec.dtype = precision;
  rec.channels_present = false;
  rec.dims = {static_cast<std::uint32_t>(taps.c_out()),
              static_cast<std::uint32_t>(taps.c_in())};
  for (auto d : taps.dims()) rec.dims.push_back(static_cast<std::uint32_t>(d));
  rec.values.assign(taps.data().begin(), taps.data().end());
  detail::spill(path, encode_icnv(rec));
}

// ---------------------------------------------------------------------------
// PGM

enum class FileKind { kIcnv, kPgm, kUnknown };

inline FileKind sniff_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Reason::kOpen, "cannot open " + path);
  char head[4] = {};
  in.read(head, 4);
  if (in.gcount() >= 4 && std::memcmp(head, kIcnvMagic, 4) == 0) {
    return FileKind::kIcnv;
  }
  if (in.gcount() >= 2 && head[0] == 'P' && head[1] == '5') {
    return FileKind::kPgm;
  }
  return FileKind::kUnknown;
}

namespace detail {

class PgmHeaderParser {
 public:
  explicit PgmHeaderParser(const std::vector<unsigned char>& bytes)
      : bytes_(bytes) {}

  std::size_t NextNumber() {
    SkipSpaceAndComments();
    std::size_t v = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (++digits > 9) throw FormatError("PGM header field too large");
    }
    if (digits == 0) throw FormatError("malformed PGM header");
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t RasterStart() {
    if (pos_ >= bytes_.size() || !IsSpace(bytes_[pos_])) {
      throw CorruptFile("PGM header not terminated");
    }
    return pos_ + 1;
  }

  void Skip(std::size_t n) { pos_ += n; }

 private:
  static bool IsSpace(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  }

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (IsSpace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= bytes_.size()) throw CorruptFile("truncated PGM header");
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Reads a binary (P5) PGM; pixel v becomes the sample v / maxval.
inline ChannelSignal<double> read_pgm(const std::string& path) {
  const auto bytes = detail::slurp(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError(path + " is not a binary (P5) PGM");
  }
  detail::PgmHeaderParser parser(bytes);
  parser.Skip(2);
  const std::size_t width = parser.NextNumber();
  const std::size_t height = parser.NextNumber();
  const std::size_t maxval = parser.NextNumber();
  if (width == 0 || height == 0) throw CorruptFile("empty PGM raster");
  if (maxval == 0 || maxval > 65535) {
    throw FormatError("PGM maxval out of range");
  }
  const std::size_t start = parser.RasterStart();
  const std::size_t bpp = maxval > 255 ? 2 : 1;
  if (bytes.size() < start + width * height * bpp) {
    throw CorruptFile("PGM raster truncated");
  }
  std::vector<double> samples(width * height);
  const unsigned char* p = bytes.data() + start;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // 16-bit rasters are big-endian.
    const std::size_t v = bpp == 1 ? p[i] : (std::size_t{p[2 * i]} << 8) |
                                                 p[2 * i + 1];
    samples[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return ChannelSignal<double>(1, {height, width}, std::move(samples));
}

/// Writes a 1-channel 2D signal as P5; sample s maps to round(s * maxval)
/// clamped to [0, maxval].
template <typename T>
void write_pgm(const ChannelSignal<T>& signal, const std::string& path,
               std::size_t maxval = 255) {
  if (signal.channels() != 1 || signal.ndim() != 2) {
    throw ShapeError("PGM output needs a 1-channel 2D signal");
  }
  if (maxval == 0 || maxval > 65535) throw ShapeError("PGM maxval out of range");
  const std::string header = "P5\n" + std::to_string(signal.dims()[1]) + " " +
                             std::to_string(signal.dims()[0]) + "\n" +
                             std::to_string(maxval) + "\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  for (T s : signal.data()) {
    double v = std::round(static_cast<double>(s) * static_cast<double>(maxval));
    if (!(v >= 0.0)) v = 0.0;  // also maps NaN to 0
    v = std::min(v, static_cast<double>(maxval));
    const auto q = static_cast<std::uint32_t>(v);
    if (maxval > 255) bytes.push_back(static_cast<unsigned char>(q >> 8));
    bytes.push_back(static_cast<unsigned char>(q & 0xFFu));
  }
  detail::spill(path, bytes);
}

}  // namespace symconv
