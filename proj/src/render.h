// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic CPU ray tracer: direct lighting only, Lambert diffuse plus
// GGX microfacet specular, rectangular area lights sampled with a fixed
// number of stratified shadow rays. Every pixel shades from its own random
// stream keyed by (scene seed, camera, pixel), so images are bit-identical
// across runs, thread counts, and pixel orderings. Depth comes from one
// deterministic center ray per pixel and is independent of the sample count.

#pragma once

#include <optional>
#include <vector>

#include "bvh.h"
#include "scene.h"

namespace loftgen {

// Linear-radiance image, row-major, top-left origin.
struct HdrImage {
  int width = 0;
  int height = 0;
  std::vector<Vec3> pixels;

  Vec3& at(int x, int y) { return pixels[size_t(y) * width + x]; }
  const Vec3& at(int x, int y) const { return pixels[size_t(y) * width + x]; }
};

// Camera-frame z of the nearest surface along each pixel's center ray;
// exactly 0 where the ray hits nothing.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  float& at(int x, int y) { return values[size_t(y) * width + x]; }
  float at(int x, int y) const { return values[size_t(y) * width + x]; }
};

// Display-ready view: exposure-scaled, clamped linear RGB plus depth.
struct RenderTarget {
  int width = 0;
  int height = 0;
  std::vector<Vec3> rgb;  // in [0,1], still linear (encoding gamma applies at file write)
  std::vector<float> depth;
};

// At most this many lights are shadow-tested per pixel; scenes with more
// lights pick a per-pixel subset with replacement and reweight by n/16.
inline constexpr int kMaxLightsPerPixel = 16;
// Stratified shadow samples per selected light (2x2 grid).
inline constexpr int kLightSamples = 4;

class Renderer {
 public:
  // Builds one BVH per mesh and a top-level BVH over all placed objects and
  // extra surfaces. The scene must outlive the renderer. Throws
  // std::invalid_argument when the scene has no geometry.
  explicit Renderer(const SceneSpec& scene);

  Renderer(const Renderer&) = delete;
  Renderer& operator=(const Renderer&) = delete;

  const SceneSpec& scene() const { return *scene_; }
  const SceneBvh& bvh() const { return *tlas_; }

  // Mean shaded radiance over spp stratified primary rays per pixel.
  HdrImage render_hdr(int cam_index, int spp) const;

  // Depth of the pixel-center ray; misses are exactly 0.
  DepthImage render_depth(int cam_index) const;

  // Radiance arriving at the origin of `dir` from the nearest hit, shaded
  // with this->lights through `rng`; black when nothing is hit.
  Vec3 trace(const Vec3& origin, const Vec3& dir, Pcg32& rng) const;

 private:
  Vec3 shade(const Vec3& origin, const Vec3& dir, const Hit& hit, Pcg32& rng) const;

  const SceneSpec* scene_;
  std::vector<MeshBvh> blas_;                   // one per object, then per extra
  std::vector<const MaterialSpec*> materials_;  // indexed by instance object_id
  std::optional<SceneBvh> tlas_;
};

// Per-pixel generator seed; shared by the renderer and any harness that
// wants to replay a pixel's sample stream.
uint64_t pixel_stream_seed(uint64_t scene_seed, int cam_index, int px, int py);

// Reciprocal of the pooled 99th-percentile luminance across the given views
// (Rec. 709 weights), or 1 when the percentile is not positive. Applying it
// maps the 99th percentile to display white.
double compute_auto_exposure(const std::vector<HdrImage>& views);

// clamp(exposure * hdr) to [0,1] plus the depth buffer, ready for encoding.
RenderTarget assemble_target(const HdrImage& hdr, const DepthImage& depth, double exposure);

}  // namespace loftgen
