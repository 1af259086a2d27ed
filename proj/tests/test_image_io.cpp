// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "image_io.h"
#include "rng.h"

using namespace loftgen;

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/loftgen_io_test_") + name;
}

std::vector<uint8_t> slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("one-pixel pfm has the documented header and exact payload") {
  DepthImage d;
  d.width = 1;
  d.height = 1;
  d.values = {2.5f};
  const std::string path = temp_path("one.pfm");
  write_pfm_depth(path, d);

  const std::vector<uint8_t> bytes = slurp(path);
  const std::string header = "Pf\n1 1\n-1.0\n";
  REQUIRE(bytes.size() == header.size() + 4);
  CHECK(std::string(bytes.begin(), bytes.begin() + header.size()) == header);
  float v;
  std::memcpy(&v, bytes.data() + header.size(), 4);
  CHECK(v == 2.5f);

  const DepthImage back = read_pfm_depth(path);
  REQUIRE(back.width == 1);
  REQUIRE(back.height == 1);
  CHECK(back.values[0] == 2.5f);
  std::remove(path.c_str());
}

TEST_CASE("pfm round trip is bit exact on a full-size random map") {
  DepthImage d;
  d.width = 640;
  d.height = 480;
  d.values.resize(size_t(640) * 480);
  Pcg32 rng;
  rng.seed(0x5eed10f1);
  for (float& v : d.values) {
    // Mix smooth values, zeros, and denormal-adjacent smalls.
    const double u = rng.next_double();
    v = u < 0.1 ? 0.0f : float(rng.uniform(0.0, 50.0));
  }
  const std::string path = temp_path("full.pfm");
  write_pfm_depth(path, d);
  const DepthImage back = read_pfm_depth(path);
  REQUIRE(back.width == d.width);
  REQUIRE(back.height == d.height);
  REQUIRE(back.values.size() == d.values.size());
  for (size_t i = 0; i < d.values.size(); ++i) {
    const uint32_t a = std::bit_cast<uint32_t>(d.values[i]);
    const uint32_t b = std::bit_cast<uint32_t>(back.values[i]);
    REQUIRE(a == b);
  }
  std::remove(path.c_str());
}

TEST_CASE("pfm writer refuses non-finite and negative values") {
  DepthImage d;
  d.width = 2;
  d.height = 1;
  d.values = {1.0f, std::numeric_limits<float>::quiet_NaN()};
  CHECK_THROWS_AS(write_pfm_depth(temp_path("bad.pfm"), d), std::invalid_argument);
  d.values = {1.0f, std::numeric_limits<float>::infinity()};
  CHECK_THROWS_AS(write_pfm_depth(temp_path("bad.pfm"), d), std::invalid_argument);
  d.values = {1.0f, -0.5f};
  CHECK_THROWS_AS(write_pfm_depth(temp_path("bad.pfm"), d), std::invalid_argument);
}

TEST_CASE("pfm rows are stored bottom to top") {
  DepthImage d;
  d.width = 2;
  d.height = 2;
  // Top row 1,2; bottom row 3,4 in memory (top-left origin).
  d.values = {1.0f, 2.0f, 3.0f, 4.0f};
  const std::string path = temp_path("rows.pfm");
  write_pfm_depth(path, d);
  const std::vector<uint8_t> bytes = slurp(path);
  const size_t header = std::string("Pf\n2 2\n-1.0\n").size();
  float first_stored;
  std::memcpy(&first_stored, bytes.data() + header, 4);
  CHECK(first_stored == 3.0f);  // bottom-left leads the payload
  const DepthImage back = read_pfm_depth(path);
  CHECK(back.values == d.values);  // reader restores top-left origin
  std::remove(path.c_str());
}

TEST_CASE("png round trip preserves every byte") {
  ImageU8 img;
  img.width = 97;  // deliberately not a multiple of anything
  img.height = 41;
  img.rgb.resize(size_t(97) * 41 * 3);
  Pcg32 rng;
  rng.seed(0x5eed10f2);
  for (uint8_t& b : img.rgb) b = uint8_t(rng.uniform_int(256));
  const std::string path = temp_path("roundtrip.png");
  write_png_rgb8(path, img);
  const ImageU8 back = read_png_rgb8(path);
  REQUIRE(back.width == img.width);
  REQUIRE(back.height == img.height);
  REQUIRE(back.rgb == img.rgb);
  std::remove(path.c_str());
}

TEST_CASE("png reader undoes all five scanline filters") {
  // Hand-build a 3x3 RGB PNG exercising filters 1..4 and 0.
  const int w = 3, h = 5;
  std::vector<uint8_t> image(size_t(w) * h * 3);
  Pcg32 rng;
  rng.seed(0x5eed10f3);
  for (uint8_t& b : image) b = uint8_t(rng.uniform_int(256));

  const size_t stride = size_t(w) * 3;
  std::vector<uint8_t> raw;
  std::vector<uint8_t> prev(stride, 0);
  auto paeth = [](int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
  };
  for (int y = 0; y < h; ++y) {
    const uint8_t filter = uint8_t(y);  // rows use filters 0,1,2,3,4
    raw.push_back(filter);
    const uint8_t* row = image.data() + size_t(y) * stride;
    for (size_t i = 0; i < stride; ++i) {
      const int left = i >= 3 ? row[i - 3] : 0;
      const int up = prev[i];
      const int up_left = i >= 3 ? prev[i - 3] : 0;
      int predict = 0;
      switch (filter) {
        case 0: predict = 0; break;
        case 1: predict = left; break;
        case 2: predict = up; break;
        case 3: predict = (left + up) / 2; break;
        case 4: predict = paeth(left, up, up_left); break;
      }
      raw.push_back(uint8_t((row[i] - predict) & 0xFF));
    }
    std::memcpy(prev.data(), row, stride);
  }

  // Deflate and wrap in minimal chunks through the writer's own helpers by
  // writing a reference PNG first, then substituting our filtered payload.
  ImageU8 ref;
  ref.width = w;
  ref.height = h;
  ref.rgb = image;
  const std::string path = temp_path("filters.png");
  write_png_rgb8(path, ref);  // establishes signature/IHDR layout

  // Re-write the file manually with the multi-filter scanlines.
  {
    uLongf bound = compressBound(uLong(raw.size()));
    std::vector<uint8_t> deflated(bound);
    REQUIRE(compress2(deflated.data(), &bound, raw.data(), uLong(raw.size()), 9) == Z_OK);
    deflated.resize(bound);

    std::vector<uint8_t> out;
    const uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    out.insert(out.end(), sig, sig + 8);
    auto be32 = [&out](uint32_t v) {
      out.push_back(uint8_t(v >> 24));
      out.push_back(uint8_t(v >> 16));
      out.push_back(uint8_t(v >> 8));
      out.push_back(uint8_t(v));
    };
    auto chunk = [&](const char type[4], const std::vector<uint8_t>& data) {
      be32(uint32_t(data.size()));
      const size_t at = out.size();
      out.insert(out.end(), type, type + 4);
      out.insert(out.end(), data.begin(), data.end());
      const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + at, uInt(4 + data.size()));
      be32(uint32_t(crc));
    };
    std::vector<uint8_t> ihdr;
    const uint32_t dims[2] = {uint32_t(w), uint32_t(h)};
    for (uint32_t v : dims) {
      ihdr.push_back(uint8_t(v >> 24));
      ihdr.push_back(uint8_t(v >> 16));
      ihdr.push_back(uint8_t(v >> 8));
      ihdr.push_back(uint8_t(v));
    }
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});
    chunk("IHDR", ihdr);
    chunk("IDAT", deflated);
    chunk("IEND", {});
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
  }

  const ImageU8 back = read_png_rgb8(path);
  REQUIRE(back.width == w);
  REQUIRE(back.height == h);
  CHECK(back.rgb == image);
  std::remove(path.c_str());
}

TEST_CASE("srgb transfer matches the piecewise definition") {
  CHECK(srgb_encode(0.0) == 0.0);
  CHECK(std::abs(srgb_encode(1.0) - 1.0) < 1e-12);
  CHECK(std::abs(srgb_encode(0.002) - 12.92 * 0.002) < 1e-15);
  const double c = 0.5;
  CHECK(std::abs(srgb_encode(c) - (1.055 * std::pow(c, 1.0 / 2.4) - 0.055)) < 1e-15);
  // Continuity at the knee.
  CHECK(std::abs(srgb_encode(0.0031308) - srgb_encode(0.0031308 + 1e-12)) < 1e-6);
}

TEST_CASE("encode_srgb quantizes a render target to bytes") {
  RenderTarget t;
  t.width = 2;
  t.height = 1;
  t.rgb = {Vec3{0.0, 1.0, 0.5}, Vec3{0.25, 0.75, 1.0}};
  t.depth = {1.0f, 2.0f};
  const ImageU8 img = encode_srgb(t);
  REQUIRE(img.rgb.size() == 6);
  CHECK(img.rgb[0] == 0);
  CHECK(img.rgb[1] == 255);
  CHECK(img.rgb[2] == uint8_t(std::lround(255.0 * srgb_encode(0.5))));
}

TEST_CASE("readers reject malformed files") {
  const std::string path = temp_path("junk.bin");
  {
    std::ofstream f(path, std::ios::binary);
    f << "this is not an image";
  }
  CHECK_THROWS_AS(read_png_rgb8(path), std::runtime_error);
  CHECK_THROWS_AS(read_pfm_depth(path), std::runtime_error);
  CHECK_THROWS_AS(read_png_rgb8("/nonexistent/missing.png"), std::runtime_error);
  std::remove(path.c_str());
}
