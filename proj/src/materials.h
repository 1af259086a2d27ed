// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Procedural surface appearance: two thresholded noise fields combined by a
// boolean operator select between three palette colors, plus scalar
// roughness/metallic values drawn from fixed-or-range rules. Everything is
// pure and samples in object space, so appearance is stable under instancing
// and across runs.

#pragma once

#include "noise.h"
#include "rng.h"
#include "vec.h"

namespace loftgen {

using Color = Vec3;  // linear RGB in [0,1]

enum class BoolOp { kAnd, kOr, kXor };

struct TextureSpec {
  NoiseField field_a = PerlinField{};
  NoiseField field_b = WaveField{};
  double threshold_a = 0.0;  // strictly inside (-1, 1)
  double threshold_b = 0.0;
  BoolOp bool_op = BoolOp::kXor;
  Color base_false{0.4, 0.4, 0.4};  // mask_a == false
  Color base_true{0.7, 0.7, 0.7};   // mask_a == true
  Color override_color{0.55, 0.55, 0.55};  // where the boolean combination holds
};

struct MaterialSpec {
  TextureSpec texture;
  double roughness = 0.2;  // in [0.2, 1.0]
  double metallic = 0.0;   // in [0, 0.8]
};

// Ranges used by sample_material; the generator config can override them.
struct MaterialSampleParams {
  double roughness_fixed = 0.2;  // the "constant" branch of the coin flip
  double roughness_lo = 0.2, roughness_hi = 1.0;
  double metallic_hi = 0.8;
  double field_scale_lo = 2.0, field_scale_hi = 20.0;  // Perlin/Wave frequency
  int octaves_lo = 1, octaves_hi = 4;
  double threshold_lo = -0.3, threshold_hi = 0.3;  // Perlin/Wave thresholds
  double brick_size_lo = 0.1, brick_size_hi = 0.6;
  double mortar_fraction = 0.1;  // of the smaller brick dimension
};

// Tie rule is >=: a value exactly at the threshold counts as inside.
inline bool binarize(double value, double threshold) { return value >= threshold; }

bool combine(bool a, bool b, BoolOp op);

// Color of an object-space point: base color follows mask_a, and the
// override color wins wherever combine(mask_a, mask_b, bool_op) holds.
// Output is always one of the three palette colors.
Color texture_color(const Vec3& p, const TextureSpec& spec);

// Standard HSV -> RGB with hue wrapped into [0,1).
Color hsv_to_rgb(double h, double s, double v);

// Hue, saturation, and value each uniform in [0,1].
Color sample_hsv_color(Pcg32& rng);

// Draws a full material: one coin flip each for fixed-vs-range roughness and
// zero-vs-range metallic, two random fields with thresholds, and a palette
// of three HSV-uniform colors.
MaterialSpec sample_material(Pcg32& rng, const MaterialSampleParams& params = {});

}  // namespace loftgen
