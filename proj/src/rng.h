// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

#include "vec.h"

namespace loftgen {

// splitmix64 finalizer (Steele et al.); used for seed mixing and keyed hashing
// so derived streams are reproducible across platforms.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a stream index.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  return splitmix64(a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
}

// Maps a 64-bit hash to a double in [0,1) using the top 53 bits.
inline double hash_to_unit(uint64_t h) {
  return double(h >> 11) * 0x1.0p-53;
}

// PCG32 (O'Neill, pcg-random.org). Small, fast, and identical output on every
// platform, which std::<distribution> does not guarantee.
class Pcg32 {
 public:
  Pcg32() { seed(0x853C49E6748FEA9Bull); }
  explicit Pcg32(uint64_t s, uint64_t stream = 1) { seed(s, stream); }

  void seed(uint64_t s, uint64_t stream = 1) {
    state_ = 0u;
    inc_ = (stream << 1u) | 1u;
    next_u32();
    state_ += splitmix64(s);
    next_u32();
    has_spare_ = false;
  }

  uint32_t next_u32() {
    uint64_t old = state_;
    state_ = old * 6364136223846793005ull + inc_;
    uint32_t xorshifted = uint32_t(((old >> 18u) ^ old) >> 27u);
    uint32_t rot = uint32_t(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  uint64_t next_u64() {
    uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // 53-bit uniform double in [0,1)
  double next_double() {
    uint64_t a = next_u32() >> 5, b = next_u32() >> 6;
    return (a * 67108864.0 + b) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // uniform integer in [0, n)
  uint32_t uniform_int(uint32_t n) {
    // Lemire's multiply-shift with rejection for exact uniformity.
    uint64_t m = uint64_t(next_u32()) * n;
    uint32_t l = uint32_t(m);
    if (l < n) {
      uint32_t t = (0u - n) % n;
      while (l < t) {
        m = uint64_t(next_u32()) * n;
        l = uint32_t(m);
      }
    }
    return uint32_t(m >> 32);
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + int(uniform_int(uint32_t(hi - lo + 1)));
  }

  // standard normal via Box-Muller, caching the second value
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_double(), u2 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

  Vec3 unit_vector() {
    double z = uniform(-1.0, 1.0);
    double a = uniform(0.0, 2.0 * M_PI);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(a), r * std::sin(a), z};
  }

  // uniform random rotation from a uniform unit quaternion (Shoemake)
  Mat3 rotation() {
    double u1 = next_double(), u2 = next_double(), u3 = next_double();
    double s1 = std::sqrt(1.0 - u1), s2 = std::sqrt(u1);
    double w = s1 * std::sin(2.0 * M_PI * u2);
    double x = s1 * std::cos(2.0 * M_PI * u2);
    double y = s2 * std::sin(2.0 * M_PI * u3);
    double z = s2 * std::cos(2.0 * M_PI * u3);
    return rotation_from_quat(w, x, y, z);
  }

 private:
  uint64_t state_ = 0;
  uint64_t inc_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace loftgen
