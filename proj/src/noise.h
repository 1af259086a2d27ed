// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic procedural scalar fields evaluated at 3D object-space
// points. Three pattern classes are provided — fractal gradient noise, a
// planar sine wave, and a rectangular brick grid — and every evaluator is a
// pure function of (descriptor, point), so results are bit-identical across
// runs, platforms, and thread counts.

#pragma once

#include <cstdint>
#include <variant>

#include "vec.h"

namespace loftgen {

// Fractal gradient noise: `octaves` layers of classic Perlin noise with
// lacunarity 2 and gain 0.5, renormalized so the theoretical bound is ±1.
struct PerlinField {
  uint64_t seed = 0;
  double scale = 1.0;  // spatial frequency of the first octave, > 0
  int octaves = 1;     // >= 1
};

// Planar sine bands: sin(scale * <p, direction> + phase).
struct WaveField {
  Vec3 direction{1, 0, 0};  // unit vector
  double scale = 1.0;       // > 0
  double phase = 0.0;
};

// Rectangular brick tiling of the local xy plane. Rows have height
// brick_size.y; every other row is shifted by row_offset * brick_size.x.
// A mortar band of total width mortar_width straddles each brick boundary.
struct BrickField {
  Vec2 brick_size{1.0, 0.5};  // components > 0
  double mortar_width = 0.05;  // >= 0
  double row_offset = 0.5;     // in [0, 1]
  uint64_t seed = 0;
};

using NoiseField = std::variant<PerlinField, WaveField, BrickField>;

// Fractal gradient noise in [-1, 1]; exactly 0 at integer lattice points
// when scale is 1 and octaves is 1.
double perlin3(const Vec3& p, uint64_t seed, double scale, int octaves);

// Planar sine wave in [-1, 1]; direction must be normalized.
double wave(const Vec3& p, const Vec3& direction, double scale, double phase);

// One brick-grid lookup: mask is 0 in mortar and 1 inside a brick, jitter is
// a per-brick constant in [0, 1) hashed from the brick's grid index.
struct BrickSample {
  int mask = 1;
  double jitter = 0.0;
};
BrickSample brick(const Vec3& p, const BrickField& params);

// Dispatches on the variant. Brick masks are recast from {0,1} to {-1,+1}
// so every field shares the same signed range.
double field_eval(const NoiseField& field, const Vec3& p);

}  // namespace loftgen
