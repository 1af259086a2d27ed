// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scene assembly: an eight-camera rig placed around the origin, one main
// lofted object at the center plus further large objects kept visible from
// at least half of the cameras, a cloud of small objects placed uniformly in
// the large-object bounding box or clustered onto large surfaces, an optional
// textured room box, optional tiny objects scattered over a ground plane,
// and rectangular area lights on a plane above everything. The whole build
// is a pure function of (seed, params): every stage draws from its own
// seed-derived generator in a documented order.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bvh.h"
#include "camera.h"
#include "materials.h"
#include "mesh.h"
#include "shapegen.h"

namespace loftgen {

enum class SizeClass { kLarge, kSmall, kTiny };

enum class SmallStrategy { kNone, kUniform, kClustered, kMixed };

// How much of the sampled texture machinery an object's material uses:
// a single flat color, a two-color thresholded field, or two fields merged
// by a boolean operator adding a third override color.
enum class TextureMode { kUniform, kNoise, kNoiseBoolean };

// Thrown when object arrangement cannot satisfy the covisibility constraint;
// the orchestrator retries the whole scene with a derived seed.
struct SceneBuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ranges for the per-shape draws (profile style coin, loft, displacement).
struct ShapeParams {
  ProfileSpec profile;  // style is re-drawn per shape by a fair coin
  StemSpec stem;
  LoftSpec loft;
  bool displacement = true;
  // Two noise displacement passes, magnitudes as fractions of the unit
  // object radius: a coarse low-frequency pass and a fine high-frequency one.
  double coarse_scale_lo = 2.0, coarse_scale_hi = 6.0;
  int coarse_octaves_lo = 2, coarse_octaves_hi = 4;
  double coarse_magnitude_lo = 0.02, coarse_magnitude_hi = 0.10;
  double fine_scale_lo = 8.0, fine_scale_hi = 20.0;
  int fine_octaves_lo = 1, fine_octaves_hi = 2;
  double fine_magnitude_lo = 0.005, fine_magnitude_hi = 0.025;
};

struct ArrangeParams {
  int n_large = 8;
  // Reference count at n_large == 8; the effective count scales
  // proportionally with n_large.
  int n_small = 320;
  SmallStrategy small_strategy = SmallStrategy::kMixed;
  double small_scale_lo = 0.1, small_scale_hi = 0.3;    // of the main-object radius
  double large_scale_lo = 0.6, large_scale_hi = 1.0;    // non-main large objects
  double annulus_lo = 0.8, annulus_hi = 2.0;            // of summed bounding radii
  double room_box_probability = 0.5;
  double room_scale_lo = 1.5, room_scale_hi = 3.0;      // box size over scene bbox
  double scatter_probability = 0.5;
  int scatter_count = 96;
  double tiny_scale_lo = 0.02, tiny_scale_hi = 0.06;
  int place_retries_per_round = 6;   // position draws before shrinking the annulus
  int place_rounds = 5;              // annulus shrink rounds (factor 0.85 each)
  int max_scene_attempts = 8;        // whole-scene resamples on placement failure
};

struct LightParams {
  int count_lo = 80, count_hi = 80;
  double size_lo = 0.05, size_hi = 0.15;  // half extents, fraction of scene xy extent
  double power_lo = 20.0, power_hi = 60.0;
  double saturation_max = 0.15;           // near-white colors
};

struct TessellationParams {
  int large_res_u = 64, large_res_v = 64, large_subdiv = 1;
  int small_res_u = 32, small_res_v = 24, small_subdiv = 0;
  int tiny_res_u = 16, tiny_res_v = 12, tiny_subdiv = 0;
};

struct SceneParams {
  // rig.radius_min/max are multiples of the main-object bounding radius;
  // build_scene converts them to absolute distances.
  RigParams rig;
  ShapeParams shape;
  MaterialSampleParams material;
  TextureMode texture_mode = TextureMode::kNoiseBoolean;
  ArrangeParams arrange;
  LightParams lights;
  TessellationParams tess;
};

// A lofted, displaced, textured mesh normalized so its bounding-sphere
// center is the object-space origin and its pre-displacement radius is 1.
struct GeneratedShape {
  TriangleMesh mesh;
  double bounding_radius = 1.0;  // post-displacement, object space
  MaterialSpec material;
  uint64_t seed = 0;
};

struct PlacedObject {
  TriangleMesh mesh;
  double bounding_radius = 1.0;  // object space
  MaterialSpec material;
  Transform to_world;            // rigid + uniform scale
  SizeClass size_class = SizeClass::kLarge;
  uint64_t shape_seed = 0;
};

// Rectangular emitter, axis-aligned in x/y, radiating downward (-z).
struct AreaLight {
  Vec3 center;
  Vec2 half_extents;
  Vec3 normal{0.0, 0.0, -1.0};
  double power = 1.0;  // total one-sided radiant power
  Color color{1.0, 1.0, 1.0};
};

// Wall order: -x, +x, -y, +y, floor (-z), ceiling (+z).
struct RoomBox {
  Aabb bounds;
  std::array<MaterialSpec, 6> wall_materials;
};

struct GroundScatter {
  double plane_z = 0.0;
  int count = 0;  // tiny objects appended to SceneSpec::objects
};

// Non-placed geometry rendered with an identity transform: room-box walls
// and the ground plane under scattered objects.
struct StaticSurface {
  TriangleMesh mesh;
  MaterialSpec material;
  std::string role;  // "wall_-x", ..., "ground"
};

struct SceneSpec {
  uint64_t seed = 0;  // the (possibly resampled) seed the build ran with
  std::vector<CameraModel> cameras;
  // Large objects first (index 0 is the main object at the origin), then
  // small, then tiny scatter.
  std::vector<PlacedObject> objects;
  std::optional<RoomBox> room_box;
  std::optional<GroundScatter> ground_scatter;
  std::vector<StaticSurface> extras;
  std::vector<AreaLight> lights;
};

// Draws a full shape: style coin, two profile curves, a stem, a loft, grid
// tessellation at the given resolution, normalization to unit radius, an
// optional two-field displacement pass, and a material.
GeneratedShape generate_shape(uint64_t seed, const SceneParams& params, int res_u, int res_v,
                              int subdiv);

// Center-point visibility: the object center projects inside the image and
// the ray from camera to center hits that object's own geometry first. The
// scene BVH must contain the object itself among the occluders.
bool visible_in(const CameraModel& cam, const Vec3& center_world, int object_id,
                const SceneBvh& bvh);

// Places the first shape at the origin with scale 1, then each further shape
// by rejection-sampling annulus positions until it is visible from at least
// half the cameras without pushing any earlier placement below that
// threshold; the annulus shrinks between rounds. On return every non-main
// object is covisible with respect to the full arrangement. Throws
// SceneBuildError when a shape cannot be placed.
std::vector<PlacedObject> arrange_large(Pcg32& rng, std::vector<GeneratedShape> shapes,
                                        const std::vector<CameraModel>& cams,
                                        const ArrangeParams& params);

// Uniform translation inside the large-object bounding box, random rotation,
// scale from the small range.
Transform place_small_uniform(Pcg32& rng, const Aabb& large_bbox, double scale_lo,
                              double scale_hi);

// Area-weighted triangle sampler over one mesh, reused across placements.
class SurfaceSampler {
 public:
  explicit SurfaceSampler(const TriangleMesh& mesh);
  // Object-space point and unit normal of a triangle picked with probability
  // proportional to area, then a uniform barycentric point on it.
  void sample(Pcg32& rng, Vec3* point, Vec3* normal) const;

 private:
  const TriangleMesh* mesh_;
  std::vector<double> cdf_;
};

// Picks a large object uniformly, an area-weighted surface point on it, and
// rests the small object's bounding sphere on that point, up along the
// surface normal with a random spin.
Transform place_small_clustered(Pcg32& rng, const std::vector<PlacedObject>& large,
                                const std::vector<SurfaceSampler>& samplers,
                                double object_bounding_radius, double scale_lo, double scale_hi);

// With the configured probability, a box made from the scene bounds scaled
// by a factor in [room_scale_lo, room_scale_hi], floor aligned to the scene
// floor, with one sampled material per wall and no displacement.
std::optional<RoomBox> add_room_box(Pcg32& rng, const Aabb& scene_bbox,
                                    const ArrangeParams& params,
                                    const MaterialSampleParams& material_params,
                                    TextureMode texture_mode);

// Inward-facing wall quads for a room box, in RoomBox wall order.
std::vector<StaticSurface> make_room_geometry(const RoomBox& room);

// Light centers uniform on a horizontal plane above scene_top (inside the
// room box when one is present), sizes and power from their ranges and
// near-white colors. `region` bounds the x/y sampling area.
std::vector<AreaLight> place_lights(Pcg32& rng, const LightParams& params, double scene_top,
                                    const Aabb& region, const std::optional<RoomBox>& room);

// Range and count checks for every field above; throws std::invalid_argument
// naming the offending parameter. build_scene calls this first.
void validate_scene_params(const SceneParams& params);

// Full orchestration; retries with derived seeds when arrangement fails and
// throws SceneBuildError only after max_scene_attempts failures.
SceneSpec build_scene(uint64_t seed, const SceneParams& params);

// Effective small-object count: n_small scaled by n_large / 8.
int effective_small_count(const ArrangeParams& params);

// World-space axis-aligned bounds of one placed object.
Aabb placed_object_bounds(const PlacedObject& obj);

// Material sampling with the draw order of sample_material but reduced to
// the requested texture mode (same RNG consumption in every mode).
MaterialSpec sample_material_mode(Pcg32& rng, const MaterialSampleParams& params,
                                  TextureMode mode);

}  // namespace loftgen
