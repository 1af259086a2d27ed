// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "materials.h"

#include <cmath>
#include <stdexcept>

namespace loftgen {

bool combine(bool a, bool b, BoolOp op) {
  switch (op) {
    case BoolOp::kAnd: return a && b;
    case BoolOp::kOr: return a || b;
    case BoolOp::kXor: return a != b;
  }
  throw std::invalid_argument("combine: unknown boolean op");
}

Color texture_color(const Vec3& p, const TextureSpec& spec) {
  const bool mask_a = binarize(field_eval(spec.field_a, p), spec.threshold_a);
  const bool mask_b = binarize(field_eval(spec.field_b, p), spec.threshold_b);
  if (combine(mask_a, mask_b, spec.bool_op)) return spec.override_color;
  return mask_a ? spec.base_true : spec.base_false;
}

Color hsv_to_rgb(double h, double s, double v) {
  h -= std::floor(h);
  const double x = h * 6.0;
  const int sector = std::min(5, int(x));
  const double f = x - sector;
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: return Color{v, t, p};
    case 1: return Color{q, v, p};
    case 2: return Color{p, v, t};
    case 3: return Color{p, q, v};
    case 4: return Color{t, p, v};
    default: return Color{v, p, q};
  }
}

Color sample_hsv_color(Pcg32& rng) {
  const double h = rng.uniform(0.0, 1.0);
  const double s = rng.uniform(0.0, 1.0);
  const double v = rng.uniform(0.0, 1.0);
  return hsv_to_rgb(h, s, v);
}

namespace {

// Field kind, parameters, and a binarization threshold. Brick thresholds sit
// at a fixed -0.5 so the mask reproduces the mortar/brick partition exactly.
NoiseField sample_field(Pcg32& rng, const MaterialSampleParams& pr, double* threshold) {
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      PerlinField f;
      f.seed = rng.next_u64();
      f.scale = rng.uniform(pr.field_scale_lo, pr.field_scale_hi);
      f.octaves = rng.uniform_int(pr.octaves_lo, pr.octaves_hi);
      *threshold = rng.uniform(pr.threshold_lo, pr.threshold_hi);
      return f;
    }
    case 1: {
      WaveField f;
      f.direction = rng.unit_vector();
      f.scale = rng.uniform(pr.field_scale_lo, pr.field_scale_hi);
      f.phase = rng.uniform(0.0, 2.0 * M_PI);
      *threshold = rng.uniform(pr.threshold_lo, pr.threshold_hi);
      return f;
    }
    default: {
      BrickField f;
      f.brick_size = Vec2{rng.uniform(pr.brick_size_lo, pr.brick_size_hi),
                          rng.uniform(pr.brick_size_lo, pr.brick_size_hi)};
      f.mortar_width = pr.mortar_fraction * std::min(f.brick_size.x, f.brick_size.y);
      f.row_offset = rng.uniform(0.0, 1.0);
      f.seed = rng.next_u64();
      *threshold = -0.5;
      return f;
    }
  }
}

}  // namespace

MaterialSpec sample_material(Pcg32& rng, const MaterialSampleParams& params) {
  MaterialSpec mat;
  mat.texture.field_a = sample_field(rng, params, &mat.texture.threshold_a);
  mat.texture.field_b = sample_field(rng, params, &mat.texture.threshold_b);
  mat.texture.bool_op = static_cast<BoolOp>(rng.uniform_int(0, 2));
  mat.texture.base_false = sample_hsv_color(rng);
  mat.texture.base_true = sample_hsv_color(rng);
  mat.texture.override_color = sample_hsv_color(rng);

  mat.roughness = rng.uniform_int(0, 1) ? rng.uniform(params.roughness_lo, params.roughness_hi)
                                        : params.roughness_fixed;
  mat.metallic = rng.uniform_int(0, 1) ? rng.uniform(0.0, params.metallic_hi) : 0.0;
  return mat;
}

}  // namespace loftgen
