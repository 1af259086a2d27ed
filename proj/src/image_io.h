// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal self-contained image files: 8-bit RGB PNG (zlib-deflated, filter 0
// on write, all five scanline filters understood on read) and grayscale
// 32-bit float PFM for depth (little-endian, rows bottom to top). Color is
// kept linear everywhere in memory; the sRGB transfer function is applied
// only when encoding bytes for PNG.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "render.h"

namespace loftgen {

// Row-major, top-left origin, 3 interleaved channels.
struct ImageU8 {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;
};

// Linear [0,1] to the sRGB transfer curve (still [0,1]).
double srgb_encode(double linear);

// Quantizes a clamped linear image through the sRGB curve.
ImageU8 encode_srgb(const RenderTarget& target);

// 8-bit RGB PNG, color type 2. Throws std::runtime_error on I/O failure and
// std::invalid_argument on an empty image.
void write_png_rgb8(const std::string& path, const ImageU8& image);

// Reads an 8-bit RGB PNG written by this library or any encoder using the
// standard five scanline filters, no interlacing, color type 2.
ImageU8 read_png_rgb8(const std::string& path);

// Grayscale PFM ("Pf", width height, scale -1.0 for little-endian floats,
// rows bottom to top). Values must be finite and non-negative.
void write_pfm_depth(const std::string& path, const DepthImage& depth);
DepthImage read_pfm_depth(const std::string& path);

}  // namespace loftgen
