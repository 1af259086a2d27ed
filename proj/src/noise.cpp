// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "noise.h"

#include <cmath>

#include "rng.h"

namespace loftgen {

namespace {

// Uniform unit gradient hashed from a lattice corner. Unit-length gradients
// give the single-octave noise a hard bound of sqrt(3)/2 in 3D.
Vec3 lattice_gradient(int64_t ix, int64_t iy, int64_t iz, uint64_t seed) {
  uint64_t h = hash_combine(seed, uint64_t(ix));
  h = hash_combine(h, uint64_t(iy));
  h = hash_combine(h, uint64_t(iz));
  const double z = 2.0 * hash_to_unit(h) - 1.0;
  const double a = 2.0 * M_PI * hash_to_unit(splitmix64(h));
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3{r * std::cos(a), r * std::sin(a), z};
}

// Quintic smoothstep; zero first and second derivatives at 0 and 1.
inline double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

inline double lerp1(double a, double b, double t) { return a + (b - a) * t; }

// One octave of classic gradient noise, rescaled by 2/sqrt(3) so the
// theoretical range is exactly [-1, 1].
double gradient_noise(const Vec3& q, uint64_t seed) {
  const double fx = std::floor(q.x), fy = std::floor(q.y), fz = std::floor(q.z);
  const int64_t ix = int64_t(fx), iy = int64_t(fy), iz = int64_t(fz);
  const double tx = q.x - fx, ty = q.y - fy, tz = q.z - fz;

  double corner[2][2][2];
  for (int cz = 0; cz < 2; ++cz)
    for (int cy = 0; cy < 2; ++cy)
      for (int cx = 0; cx < 2; ++cx) {
        const Vec3 g = lattice_gradient(ix + cx, iy + cy, iz + cz, seed);
        corner[cz][cy][cx] = dot(g, Vec3{tx - cx, ty - cy, tz - cz});
      }

  const double u = fade(tx), v = fade(ty), w = fade(tz);
  const double x00 = lerp1(corner[0][0][0], corner[0][0][1], u);
  const double x10 = lerp1(corner[0][1][0], corner[0][1][1], u);
  const double x01 = lerp1(corner[1][0][0], corner[1][0][1], u);
  const double x11 = lerp1(corner[1][1][0], corner[1][1][1], u);
  const double y0 = lerp1(x00, x10, v);
  const double y1 = lerp1(x01, x11, v);
  return (2.0 / std::sqrt(3.0)) * lerp1(y0, y1, w);
}

// makes std::visit take a set of lambdas directly
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double perlin3(const Vec3& p, uint64_t seed, double scale, int octaves) {
  double sum = 0.0, amp = 1.0, weight = 0.0, freq = scale;
  for (int o = 0; o < octaves; ++o) {
    sum += amp * gradient_noise(p * freq, mix_seed(seed, uint64_t(o)));
    weight += amp;
    amp *= 0.5;
    freq *= 2.0;
  }
  return sum / weight;
}

double wave(const Vec3& p, const Vec3& direction, double scale, double phase) {
  return std::sin(scale * dot(p, direction) + phase);
}

BrickSample brick(const Vec3& p, const BrickField& f) {
  const double bw = f.brick_size.x, bh = f.brick_size.y;
  const int64_t row = int64_t(std::floor(p.y / bh));
  const double shift = (row & 1) ? f.row_offset * bw : 0.0;
  const double x = p.x - shift;
  const int64_t col = int64_t(std::floor(x / bw));

  // distance to the nearest brick boundary along each axis
  const double lx = x - double(col) * bw;
  const double ly = p.y - double(row) * bh;
  const double edge = std::min(std::min(lx, bw - lx), std::min(ly, bh - ly));

  BrickSample out;
  out.mask = edge < 0.5 * f.mortar_width ? 0 : 1;
  out.jitter = hash_to_unit(hash_combine(hash_combine(f.seed, uint64_t(row)), uint64_t(col)));
  return out;
}

double field_eval(const NoiseField& field, const Vec3& p) {
  return std::visit(
      overloaded{
          [&](const PerlinField& f) { return perlin3(p, f.seed, f.scale, f.octaves); },
          [&](const WaveField& f) { return wave(p, f.direction, f.scale, f.phase); },
          [&](const BrickField& f) { return brick(p, f).mask ? 1.0 : -1.0; },
      },
      field);
}

}  // namespace loftgen
