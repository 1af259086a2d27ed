// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "noise.h"
#include "rng.h"

using namespace loftgen;

TEST_CASE("gradient noise vanishes on the integer lattice") {
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        CHECK(perlin3(Vec3{double(x), double(y), double(z)}, 42, 1.0, 1) == 0.0);
        CHECK(perlin3(Vec3{double(x), double(y), double(z)}, 7, 3.0, 1) == 0.0);
      }
}

TEST_CASE("noise evaluation is bit-identical on repeat") {
  Pcg32 rng;
  rng.seed(0x5eed0101);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double a = perlin3(p, 99, 2.7, 4);
    const double b = perlin3(p, 99, 2.7, 4);
    CHECK(a == b);
  }
}

TEST_CASE("noise statistics: bounded and nearly zero-mean over a million probes") {
  Pcg32 rng;
  rng.seed(0x5eed0102);
  double lo = 1e30, hi = -1e30, sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const Vec3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double v = perlin3(p, 1234, 2.0, 3);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  CHECK(lo >= -1.0);
  CHECK(hi <= 1.0);
  CHECK(std::abs(sum / n) < 0.01);
}

TEST_CASE("wave field identities") {
  const Vec3 dir = normalize(Vec3{1, 2, -0.5});
  const double scale = 6.0, phase = 1.3;

  CHECK(wave(Vec3{0, 0, 0}, dir, scale, 0.0) == 0.0);

  Pcg32 rng;
  rng.seed(0x5eed0103);
  for (int i = 0; i < 50; ++i) {
    const Vec3 p{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Vec3 shifted = p + dir * (2.0 * M_PI / scale);  // one full period
    CHECK(std::abs(wave(p, dir, scale, phase) - wave(shifted, dir, scale, phase)) < 1e-12);
    CHECK(std::abs(wave(p, dir, scale, phase) + wave(p, dir, scale, phase + M_PI)) < 1e-12);
    CHECK(std::abs(wave(p, dir, scale, phase)) <= 1.0);
  }
}

TEST_CASE("brick grid masks and per-brick jitter") {
  BrickField f;
  f.brick_size = Vec2{1.0, 0.5};
  f.mortar_width = 0.1;
  f.row_offset = 0.5;
  f.seed = 77;

  // dead center of the (0,0) brick
  CHECK(brick(Vec3{0.5, 0.25, 0}, f).mask == 1);
  // exactly on a row boundary
  CHECK(brick(Vec3{0.5, 0.5, 0}, f).mask == 0);
  CHECK(brick(Vec3{0.37, 1.0, 0}, f).mask == 0);
  // exactly on a column boundary of the unshifted row
  CHECK(brick(Vec3{1.0, 0.25, 0}, f).mask == 0);
  // odd rows are shifted by half a brick, so x=1.0 is now mid-brick
  CHECK(brick(Vec3{1.0, 0.75, 0}, f).mask == 1);
  // and the shifted boundary at x=0.5 is mortar
  CHECK(brick(Vec3{0.5, 0.75, 0}, f).mask == 0);

  // jitter is constant within one brick and lives in [0,1)
  const double j = brick(Vec3{0.5, 0.25, 0}, f).jitter;
  CHECK(j >= 0.0);
  CHECK(j < 1.0);
  Pcg32 rng;
  rng.seed(0x5eed0104);
  for (int i = 0; i < 50; ++i) {
    const Vec3 p{rng.uniform(0.06, 0.94), rng.uniform(0.03, 0.47), rng.uniform(-4, 4)};
    CHECK(brick(p, f).jitter == j);
  }

  // neighboring bricks should almost always disagree
  int distinct = 0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{0.5 + i, 0.25, 0};
    if (brick(p, f).jitter != j) ++distinct;
  }
  CHECK(distinct >= 99);
}

TEST_CASE("field_eval dispatches and recasts brick to a signed range") {
  const NoiseField w = WaveField{normalize(Vec3{0, 1, 0}), 3.0, 0.0};
  CHECK(field_eval(w, Vec3{0, 0, 0}) == 0.0);

  const NoiseField n = PerlinField{5, 1.0, 1};
  CHECK(field_eval(n, Vec3{2, -1, 3}) == 0.0);

  BrickField bf;
  bf.brick_size = Vec2{1.0, 0.5};
  bf.mortar_width = 0.1;
  const NoiseField b = bf;
  CHECK(field_eval(b, Vec3{0.5, 0.5, 0}) == -1.0);  // mortar
  CHECK(field_eval(b, Vec3{0.5, 0.25, 0}) == 1.0);  // brick body
}

TEST_CASE("every field variant stays within [-1, 1]") {
  Pcg32 rng;
  rng.seed(0x5eed0105);
  const NoiseField fields[] = {
      PerlinField{11, 4.0, 4},
      WaveField{normalize(Vec3{1, -1, 2}), 9.0, 0.7},
      BrickField{Vec2{0.8, 0.3}, 0.07, 0.5, 13},
  };
  for (const NoiseField& f : fields) {
    for (int i = 0; i < 333334; ++i) {
      const Vec3 p{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)};
      CHECK(std::abs(field_eval(f, p)) <= 1.0);
    }
  }
}

TEST_CASE("noise and wave slopes stay under the analytic gradient bound") {
  Pcg32 rng;
  rng.seed(0x5eed0106);
  const double h = 1e-6;

  // Loose bound for fractal gradient noise: one octave of unit-gradient
  // noise has |d/dx| <= 9, octave o runs at frequency scale*2^o with
  // amplitude 0.5^o, and the octave sum is renormalized.
  const double scale = 3.0;
  const int octaves = 2;
  double amp = 1.0, freq = scale, num = 0.0, den = 0.0;
  for (int o = 0; o < octaves; ++o, amp *= 0.5, freq *= 2.0) {
    num += amp * 9.0 * freq;
    den += amp;
  }
  const double perlin_bound = num / den;

  for (int i = 0; i < 100000; ++i) {
    const Vec3 p{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Vec3 d = rng.unit_vector() * h;
    const double slope =
        std::abs(perlin3(p + d, 3, scale, octaves) - perlin3(p, 3, scale, octaves)) / h;
    CHECK(slope <= 10.0 * perlin_bound);
  }

  const Vec3 dir = normalize(Vec3{2, 1, 1});
  const double wscale = 7.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 p{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Vec3 d = rng.unit_vector() * h;
    const double slope =
        std::abs(wave(p + d, dir, wscale, 0.3) - wave(p, dir, wscale, 0.3)) / h;
    CHECK(slope <= 10.0 * wscale);
  }
}

TEST_CASE("changing the seed changes nearly every probe") {
  Pcg32 rng;
  rng.seed(0x5eed0107);
  int perlin_diff = 0, jitter_diff = 0;
  const int n = 10000;
  BrickField fa{Vec2{1.0, 0.5}, 0.05, 0.5, 500};
  BrickField fb = fa;
  fb.seed = 501;
  for (int i = 0; i < n; ++i) {
    const Vec3 p{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
    if (perlin3(p, 1000, 2.0, 2) != perlin3(p, 1001, 2.0, 2)) ++perlin_diff;
    if (brick(p, fa).jitter != brick(p, fb).jitter) ++jitter_diff;
  }
  CHECK(perlin_diff >= n * 99 / 100);
  CHECK(jitter_diff >= n * 99 / 100);
}
