// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "image_io.h"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

// The PFM payload is declared little-endian (scale -1.0) and written by
// direct byte copy of the float rows.
static_assert(std::endian::native == std::endian::little,
              "PFM I/O assumes a little-endian host");

namespace loftgen {

namespace {

void put_be32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(uint8_t(v >> 24));
  out.push_back(uint8_t(v >> 16));
  out.push_back(uint8_t(v >> 8));
  out.push_back(uint8_t(v));
}

uint32_t get_be32(const uint8_t* p) {
  return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

void append_chunk(std::vector<uint8_t>& out, const char type[4],
                  const std::vector<uint8_t>& data) {
  put_be32(out, uint32_t(data.size()));
  const size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + type_at, uInt(4 + data.size()));
  put_be32(out, uint32_t(crc));
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  const std::streamsize size = f.tellg();
  f.seekg(0);
  std::vector<uint8_t> bytes;
  bytes.resize(size_t(size));
  f.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!f) throw std::runtime_error("read failed: " + path);
  return bytes;
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

const uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

}  // namespace

double srgb_encode(double linear) {
  if (linear <= 0.0031308) return 12.92 * linear;
  return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

ImageU8 encode_srgb(const RenderTarget& target) {
  ImageU8 img;
  img.width = target.width;
  img.height = target.height;
  img.rgb.reserve(target.rgb.size() * 3);
  auto quantize = [](double linear) {
    const double s = srgb_encode(linear < 0.0 ? 0.0 : (linear > 1.0 ? 1.0 : linear));
    const int q = int(std::lround(255.0 * s));
    return uint8_t(q < 0 ? 0 : (q > 255 ? 255 : q));
  };
  for (const Vec3& c : target.rgb) {
    img.rgb.push_back(quantize(c.x));
    img.rgb.push_back(quantize(c.y));
    img.rgb.push_back(quantize(c.z));
  }
  return img;
}

void write_png_rgb8(const std::string& path, const ImageU8& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.rgb.size() != size_t(image.width) * image.height * 3)
    throw std::invalid_argument("png writer needs a non-empty W*H*3 byte image");

  // Scanlines with filter byte 0 (None) per row.
  const size_t stride = size_t(image.width) * 3;
  std::vector<uint8_t> raw;
  raw.reserve((stride + 1) * image.height);
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);
    const uint8_t* row = image.rgb.data() + size_t(y) * stride;
    raw.insert(raw.end(), row, row + stride);
  }
  uLongf bound = compressBound(uLong(raw.size()));
  std::vector<uint8_t> deflated(bound);
  if (compress2(deflated.data(), &bound, raw.data(), uLong(raw.size()), Z_DEFAULT_COMPRESSION) !=
      Z_OK)
    throw std::runtime_error("zlib compression failed: " + path);
  deflated.resize(bound);

  std::vector<uint8_t> out(kPngSignature, kPngSignature + 8);
  std::vector<uint8_t> ihdr;
  put_be32(ihdr, uint32_t(image.width));
  put_be32(ihdr, uint32_t(image.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter method
  ihdr.push_back(0);  // no interlace
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", deflated);
  append_chunk(out, "IEND", {});
  write_file(path, out);
}

ImageU8 read_png_rgb8(const std::string& path) {
  const std::vector<uint8_t> bytes = read_file(path);
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0)
    throw std::runtime_error("not a png file: " + path);

  ImageU8 img;
  std::vector<uint8_t> idat;
  size_t at = 8;
  bool saw_ihdr = false;
  while (at + 12 <= bytes.size()) {
    const uint32_t len = get_be32(&bytes[at]);
    if (at + 12 + len > bytes.size()) throw std::runtime_error("truncated png chunk: " + path);
    const char* type = reinterpret_cast<const char*>(&bytes[at + 4]);
    const uint8_t* data = &bytes[at + 8];
    if (std::memcmp(type, "IHDR", 4) == 0) {
      img.width = int(get_be32(data));
      img.height = int(get_be32(data + 4));
      const int bit_depth = data[8], color_type = data[9], interlace = data[12];
      if (bit_depth != 8 || color_type != 2 || interlace != 0)
        throw std::runtime_error("unsupported png variant (need 8-bit RGB): " + path);
      saw_ihdr = true;
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      break;
    }
    at += 12 + len;
  }
  if (!saw_ihdr || img.width <= 0 || img.height <= 0)
    throw std::runtime_error("png missing image header: " + path);

  const size_t stride = size_t(img.width) * 3;
  std::vector<uint8_t> raw((stride + 1) * img.height);
  uLongf raw_size = uLongf(raw.size());
  if (uncompress(raw.data(), &raw_size, idat.data(), uLong(idat.size())) != Z_OK ||
      raw_size != raw.size())
    throw std::runtime_error("png scanline inflation failed: " + path);

  img.rgb.assign(stride * img.height, 0);
  std::vector<uint8_t> prev(stride, 0);
  for (int y = 0; y < img.height; ++y) {
    const uint8_t filter = raw[size_t(y) * (stride + 1)];
    const uint8_t* src = &raw[size_t(y) * (stride + 1) + 1];
    uint8_t* dst = &img.rgb[size_t(y) * stride];
    for (size_t i = 0; i < stride; ++i) {
      const int left = i >= 3 ? dst[i - 3] : 0;
      const int up = prev[i];
      const int up_left = i >= 3 ? prev[i - 3] : 0;
      int add;
      switch (filter) {
        case 0: add = 0; break;
        case 1: add = left; break;
        case 2: add = up; break;
        case 3: add = (left + up) / 2; break;
        case 4: add = paeth(left, up, up_left); break;
        default: throw std::runtime_error("unknown png filter: " + path);
      }
      dst[i] = uint8_t((src[i] + add) & 0xFF);
    }
    std::memcpy(prev.data(), dst, stride);
  }
  return img;
}

void write_pfm_depth(const std::string& path, const DepthImage& depth) {
  if (depth.width <= 0 || depth.height <= 0 ||
      depth.values.size() != size_t(depth.width) * depth.height)
    throw std::invalid_argument("pfm writer needs a non-empty W*H depth map");
  for (float v : depth.values)
    if (!std::isfinite(v) || v < 0.0f)
      throw std::invalid_argument("pfm depth values must be finite and non-negative");

  const std::string header =
      "Pf\n" + std::to_string(depth.width) + " " + std::to_string(depth.height) + "\n-1.0\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + depth.values.size() * 4);
  // Bottom row first, little-endian payload.
  for (int y = depth.height - 1; y >= 0; --y) {
    const float* row = depth.values.data() + size_t(y) * depth.width;
    const uint8_t* p = reinterpret_cast<const uint8_t*>(row);
    out.insert(out.end(), p, p + size_t(depth.width) * 4);
  }
  write_file(path, out);
}

DepthImage read_pfm_depth(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string magic;
  int width = 0, height = 0;
  double scale = 0.0;
  f >> magic >> width >> height >> scale;
  if (magic != "Pf" || width <= 0 || height <= 0 || scale >= 0.0)
    throw std::runtime_error("unsupported pfm header (need grayscale little-endian): " + path);
  f.get();  // the single whitespace byte after the scale line

  DepthImage img;
  img.width = width;
  img.height = height;
  img.values.assign(size_t(width) * height, 0.0f);
  for (int y = height - 1; y >= 0; --y) {
    f.read(reinterpret_cast<char*>(img.values.data() + size_t(y) * width),
           std::streamsize(size_t(width) * 4));
    if (!f) throw std::runtime_error("truncated pfm payload: " + path);
  }
  return img;
}

}  // namespace loftgen
