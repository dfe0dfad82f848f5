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

#include <cmath>
#include <cstring>
#include <limits>

#include "symconv/tensor_io.hpp"
#include "test_util.hpp"

namespace symconv {
namespace {

using testing::TempDir;

std::vector<unsigned char> f64_file_1d(std::uint32_t n, std::size_t values) {
  IcnvRecord rec;
  rec.dims = {n};
  rec.values.assign(n, 0.0);
  auto bytes = encode_icnv(rec);
  bytes.resize(icnv_header_size(1) + values * 8);
  return bytes;
}

TEST(IcnvCodec, DecodesOneDimensionalDoubles) {
  IcnvRecord rec;
  rec.dims = {4};
  rec.values = {1, 2, 3, 4};
  TempDir dir;
  testing::write_bytes(dir.file("a.icnv"), encode_icnv(rec));
  const auto s = read_tensor_file(dir.file("a.icnv"));
  EXPECT_EQ(s.channels(), 1u);
  EXPECT_EQ(s.dims(), Dims({4}));
  EXPECT_EQ(std::vector<double>(s.data().begin(), s.data().end()),
            std::vector<double>({1, 2, 3, 4}));
}

TEST(IcnvCodec, RoundTripIsBitExact) {
  TempDir dir;
  ChannelSignal<double> s(2, {3, 5});
  for (std::size_t i = 0; i < s.data().size(); ++i) {
    s.data()[i] = std::sin(0.37 * static_cast<double>(i)) * 1e3 / 7.0;
  }
  write_tensor_file(s, dir.file("s.icnv"), Precision::kDouble);
  const auto back = read_tensor_file(dir.file("s.icnv"));
  ASSERT_EQ(back.dims(), s.dims());
  EXPECT_EQ(std::memcmp(back.data().data(), s.data().data(),
                        s.data().size() * sizeof(double)),
            0);
}

TEST(IcnvCodec, ShortPayloadIsCorrupt) {
  TempDir dir;
  testing::write_bytes(dir.file("short.icnv"), f64_file_1d(4, 3));
  EXPECT_THROW(read_tensor_file(dir.file("short.icnv")), CorruptFile);
}

TEST(IcnvCodec, TrailingBytesAreCorrupt) {
  TempDir dir;
  testing::write_bytes(dir.file("long.icnv"), f64_file_1d(4, 5));
  EXPECT_THROW(read_tensor_file(dir.file("long.icnv")), CorruptFile);
}

TEST(IcnvCodec, HeaderSizeFollowsRank) {
  TempDir dir;
  ChannelSignal<double> s(1, {1, 1}, {0.0});
  write_tensor_file(s, dir.file("z.icnv"), Precision::kDouble);
  EXPECT_EQ(testing::read_bytes(dir.file("z.icnv")).size(), 28u);
  EXPECT_EQ(icnv_header_size(1), 16u);
  EXPECT_EQ(icnv_header_size(2), 20u);
}

TEST(IcnvCodec, RejectsNonFiniteSamples) {
  TempDir dir;
  ChannelSignal<double> s(1, {3}, {1.0, std::nan(""), 2.0});
  try {
    write_tensor_file(s, dir.file("n.icnv"), Precision::kDouble);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.reason(), IoError::Reason::kInvalidSample);
  }
  ChannelSignal<double> big(1, {2}, {1e300, 0.0});
  EXPECT_THROW(write_tensor_file(big, dir.file("b.icnv"), Precision::kSingle),
               IoError);
}

TEST(IcnvCodec, RejectsBadMagicVersionAndDtype) {
  IcnvRecord rec;
  rec.dims = {2};
  rec.values = {1, 2};
  auto bytes = encode_icnv(rec);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_icnv(bad_magic), FormatError);
  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(decode_icnv(bad_version), FormatError);
  auto bad_dtype = bytes;
  bad_dtype[5] = 7;
  EXPECT_THROW(decode_icnv(bad_dtype), UnsupportedDtype);
}

TEST(IcnvCodec, SinglePrecisionWidensExactly) {
  TempDir dir;
  ChannelSignal<float> s(1, {4}, {0.1f, -2.5f, 3.25f, 1e-7f});
  write_tensor_file(s, dir.file("f.icnv"), Precision::kSingle);
  const auto rec = read_icnv(dir.file("f.icnv"));
  EXPECT_EQ(rec.dtype, Precision::kSingle);
  const auto back = read_tensor_file(dir.file("f.icnv"));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(back.data()[i], static_cast<double>(s.data()[i]));
  }
}

TEST(IcnvCodec, KernelFilesRoundTrip) {
  TempDir dir;
  KernelField<double> k(2, 3, {3, 3});
  for (std::size_t i = 0; i < k.data().size(); ++i) k.data()[i] = 0.5 * i - 3;
  write_kernel_file(k, dir.file("k.icnv"), Precision::kDouble);
  const auto back = read_kernel_file(dir.file("k.icnv"));
  EXPECT_EQ(back.c_out(), 2u);
  EXPECT_EQ(back.c_in(), 3u);
  EXPECT_EQ(back.dims(), Dims({3, 3}));
  EXPECT_TRUE(std::equal(k.data().begin(), k.data().end(), back.data().begin()));
  EXPECT_THROW(read_tensor_file(dir.file("k.icnv")), FormatError);
}

TEST(Pgm, MapsBytesLinearly) {
  TempDir dir;
  testing::write_pgm_bytes(dir.file("a.pgm"), 2, 2, {0, 255, 128, 64});
  const auto s = read_pgm(dir.file("a.pgm"));
  EXPECT_EQ(s.dims(), Dims({2, 2}));
  EXPECT_DOUBLE_EQ(s.at(0, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(s.at(0, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(s.at(0, 1, 0), 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(s.at(0, 1, 1), 64.0 / 255.0);
}

TEST(Pgm, SkipsCommentsInHeader) {
  TempDir dir;
  const std::string head = "P5\n# made by hand\n3 1\n# depth\n255\n";
  std::vector<unsigned char> bytes(head.begin(), head.end());
  bytes.insert(bytes.end(), {10, 20, 30});
  testing::write_bytes(dir.file("c.pgm"), bytes);
  const auto s = read_pgm(dir.file("c.pgm"));
  EXPECT_EQ(s.dims(), Dims({1, 3}));
  EXPECT_DOUBLE_EQ(s.at(0, 0, 2), 30.0 / 255.0);
}

TEST(Pgm, GridValuesRoundTrip) {
  TempDir dir;
  ChannelSignal<double> s(1, {3, 4});
  for (std::size_t i = 0; i < 12; ++i) s.data()[i] = (i * 21 % 256) / 255.0;
  write_pgm(s, dir.file("g.pgm"));
  const auto back = read_pgm(dir.file("g.pgm"));
  EXPECT_TRUE(back == s);
}

TEST(Pgm, RejectsMultiChannelSignals) {
  TempDir dir;
  ChannelSignal<double> s(3, {2, 2});
  EXPECT_THROW(write_pgm(s, dir.file("x.pgm")), ShapeError);
}

TEST(Pgm, TruncatedRasterIsCorrupt) {
  TempDir dir;
  testing::write_pgm_bytes(dir.file("t.pgm"), 4, 4, {1, 2, 3});
  EXPECT_THROW(read_pgm(dir.file("t.pgm")), CorruptFile);
}

TEST(FileSniffing, DispatchesOnMagic) {
  TempDir dir;
  testing::write_pgm_bytes(dir.file("p"), 1, 1, {7});
  write_tensor_file(ChannelSignal<double>(1, {2}, {1, 2}), dir.file("i"),
                    Precision::kDouble);
  testing::write_bytes(dir.file("u"), {'x', 'y', 'z', 'w'});
  EXPECT_EQ(sniff_file(dir.file("p")), FileKind::kPgm);
  EXPECT_EQ(sniff_file(dir.file("i")), FileKind::kIcnv);
  EXPECT_EQ(sniff_file(dir.file("u")), FileKind::kUnknown);
}

}  // namespace
}  // namespace symconv
