// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Stage draws run in a fixed, documented order so a scene is a pure function
// of (seed, params). Stream ids derived from the scene seed: 1 cameras,
// 2 large-object arrangement, 3 small-object placement, 4 room box,
// 5 ground scatter, 6 lights; per-shape seeds use 0x10000+i (large),
// 0x20000+j (small), 0x30000+k (tiny).

#include "scene.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loftgen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TriangleMesh make_quad(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                       const Vec3& n) {
  TriangleMesh mesh;
  mesh.positions = {a, b, c, d};
  mesh.normals = {n, n, n, n};
  mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
  return mesh;
}

SceneSpec build_scene_once(uint64_t s, const SceneParams& p);

}  // namespace

void validate_scene_params(const SceneParams& p) {
  const ArrangeParams& a = p.arrange;
  if (a.n_large < 1) throw std::invalid_argument("n_large must be >= 1");
  if (a.n_small < 0) throw std::invalid_argument("n_small must be >= 0");
  if (!(a.small_scale_lo > 0.0 && a.small_scale_lo <= a.small_scale_hi))
    throw std::invalid_argument("bad small-object scale range");
  if (!(a.large_scale_lo > 0.0 && a.large_scale_lo <= a.large_scale_hi))
    throw std::invalid_argument("bad large-object scale range");
  if (!(a.annulus_lo > 0.0 && a.annulus_lo <= a.annulus_hi))
    throw std::invalid_argument("bad annulus range");
  if (!(a.room_box_probability >= 0.0 && a.room_box_probability <= 1.0))
    throw std::invalid_argument("room-box probability outside [0,1]");
  if (!(a.room_scale_lo >= 1.0 && a.room_scale_lo <= a.room_scale_hi))
    throw std::invalid_argument("bad room-box scale range");
  if (!(a.scatter_probability >= 0.0 && a.scatter_probability <= 1.0))
    throw std::invalid_argument("scatter probability outside [0,1]");
  if (a.scatter_count < 0) throw std::invalid_argument("scatter count must be >= 0");
  if (!(a.tiny_scale_lo > 0.0 && a.tiny_scale_lo <= a.tiny_scale_hi))
    throw std::invalid_argument("bad tiny-object scale range");
  if (a.place_retries_per_round < 1 || a.place_rounds < 1 || a.max_scene_attempts < 1)
    throw std::invalid_argument("placement retry counts must be >= 1");
  const LightParams& l = p.lights;
  if (l.count_lo < 0 || l.count_lo > l.count_hi) throw std::invalid_argument("bad light count");
  if (!(l.size_lo > 0.0 && l.size_lo <= l.size_hi))
    throw std::invalid_argument("bad light size range");
  if (!(l.power_lo > 0.0 && l.power_lo <= l.power_hi))
    throw std::invalid_argument("bad light power range");
  if (!(l.saturation_max >= 0.0 && l.saturation_max <= 1.0))
    throw std::invalid_argument("bad light saturation");
  const TessellationParams& t = p.tess;
  if (t.large_res_u < 3 || t.large_res_v < 2 || t.small_res_u < 3 || t.small_res_v < 2 ||
      t.tiny_res_u < 3 || t.tiny_res_v < 2)
    throw std::invalid_argument("tessellation resolution too low");
}

int effective_small_count(const ArrangeParams& params) {
  return int(std::lround(double(params.n_small) * double(params.n_large) / 8.0));
}

MaterialSpec sample_material_mode(Pcg32& rng, const MaterialSampleParams& params,
                                  TextureMode mode) {
  MaterialSpec m = sample_material(rng, params);
  if (mode != TextureMode::kNoiseBoolean) {
    // XOR of a mask with itself never holds, so the override region vanishes
    // and the texture reduces to the two-color threshold of field_a.
    m.texture.field_b = m.texture.field_a;
    m.texture.threshold_b = m.texture.threshold_a;
    m.texture.bool_op = BoolOp::kXor;
  }
  if (mode == TextureMode::kUniform) {
    m.texture.base_true = m.texture.base_false;
    m.texture.override_color = m.texture.base_false;
  }
  return m;
}

GeneratedShape generate_shape(uint64_t seed, const SceneParams& p, int res_u, int res_v,
                              int subdiv) {
  Pcg32 rng(seed);
  GeneratedShape shape;
  shape.seed = seed;

  // Draw order: style coin, two profile curves, stem, loft, displacement
  // block (only when enabled), material.
  ProfileSpec prof = p.shape.profile;
  prof.style = rng.uniform_int(0, 1) == 0 ? ProfileStyle::kStarfish : ProfileStyle::kReptile;
  std::vector<NurbsCurve> profiles;
  try {
    for (int i = 0; i < 2; ++i) {
      profiles.push_back(prof.style == ProfileStyle::kStarfish ? gen_starfish_profile(rng, prof)
                                                               : gen_reptile_profile(rng, prof));
    }
  } catch (const FitError& e) {
    throw SceneBuildError(std::string("profile generation failed: ") + e.what());
  }
  const NurbsCurve stem = gen_stem(rng, p.shape.stem);
  const NurbsSurface surface = loft(profiles, stem, p.shape.loft, rng);
  TriangleMesh mesh = tessellate(surface, res_u, res_v);

  // Normalize: bounding-sphere center (box center) to the origin, radius 1.
  const Aabb box = mesh_aabb(mesh);
  const Vec3 center = box.center();
  double radius = 0.0;
  for (const Vec3& pos : mesh.positions) radius = std::max(radius, norm(pos - center));
  if (radius <= 0.0) radius = 1.0;
  for (Vec3& pos : mesh.positions) pos = (pos - center) / radius;

  if (p.shape.displacement) {
    DisplaceSpec d;
    const uint64_t coarse_seed = rng.next_u64();
    const double coarse_scale = rng.uniform(p.shape.coarse_scale_lo, p.shape.coarse_scale_hi);
    const int coarse_octaves = rng.uniform_int(p.shape.coarse_octaves_lo, p.shape.coarse_octaves_hi);
    d.coarse_field = PerlinField{coarse_seed, coarse_scale, coarse_octaves};
    d.coarse_magnitude = rng.uniform(p.shape.coarse_magnitude_lo, p.shape.coarse_magnitude_hi);
    const uint64_t fine_seed = rng.next_u64();
    const double fine_scale = rng.uniform(p.shape.fine_scale_lo, p.shape.fine_scale_hi);
    const int fine_octaves = rng.uniform_int(p.shape.fine_octaves_lo, p.shape.fine_octaves_hi);
    d.fine_field = PerlinField{fine_seed, fine_scale, fine_octaves};
    d.fine_magnitude = rng.uniform(p.shape.fine_magnitude_lo, p.shape.fine_magnitude_hi);
    d.subdivision_level = subdiv;
    mesh = displace_mesh(mesh, d);
  }

  shape.material = sample_material_mode(rng, p.material, p.texture_mode);
  double out_radius = 0.0;
  for (const Vec3& pos : mesh.positions) out_radius = std::max(out_radius, norm(pos));
  shape.bounding_radius = out_radius > 0.0 ? out_radius : 1.0;
  shape.mesh = std::move(mesh);
  return shape;
}

bool visible_in(const CameraModel& cam, const Vec3& center_world, int object_id,
                const SceneBvh& bvh) {
  double u, v;
  if (!project(cam, center_world, &u, &v)) return false;
  if (!(u >= 0.0 && u < cam.width && v >= 0.0 && v < cam.height)) return false;
  const Vec3 origin = cam.position();
  Hit hit;
  if (!bvh.intersect(origin, center_world - origin, 1e-9, kInf, &hit)) return false;
  return hit.object_id == object_id;
}

std::vector<PlacedObject> arrange_large(Pcg32& rng, std::vector<GeneratedShape> shapes,
                                        const std::vector<CameraModel>& cams,
                                        const ArrangeParams& params) {
  if (shapes.empty()) throw std::invalid_argument("arrange_large needs at least one shape");
  if (cams.empty()) throw std::invalid_argument("arrange_large needs cameras");

  std::vector<MeshBvh> blas;
  blas.reserve(shapes.size());
  for (const GeneratedShape& s : shapes) blas.emplace_back(s.mesh);

  std::vector<Transform> placements(shapes.size());
  placements[0].rotation = rng.rotation();
  placements[0].translation = Vec3{0.0, 0.0, 0.0};
  placements[0].scale = 1.0;

  const int need = (int(cams.size()) + 1) / 2;
  for (size_t i = 1; i < shapes.size(); ++i) {
    // Per object: scale, rotation, then (distance, azimuth, z-offset) per try.
    const double scale = rng.uniform(params.large_scale_lo, params.large_scale_hi);
    const Mat3 rotation = rng.rotation();
    const double reach =
        shapes[0].bounding_radius + shapes[i].bounding_radius * scale;
    bool placed = false;
    for (int round = 0; round < params.place_rounds && !placed; ++round) {
      const double shrink = std::pow(0.85, round);
      for (int attempt = 0; attempt < params.place_retries_per_round && !placed; ++attempt) {
        const double dist = rng.uniform(params.annulus_lo, params.annulus_hi) * reach * shrink;
        const double azimuth = rng.uniform(0.0, 2.0 * M_PI);
        const double z_off = rng.uniform(-0.3, 0.3) * dist;
        const Transform candidate{rotation,
                                  Vec3{dist * std::cos(azimuth), dist * std::sin(azimuth), z_off},
                                  scale};
        std::vector<BvhInstance> instances;
        instances.reserve(i + 1);
        for (size_t j = 0; j < i; ++j) instances.push_back({&blas[j], placements[j], int(j)});
        instances.push_back({&blas[i], candidate, int(i)});
        const SceneBvh bvh(std::move(instances));
        const auto covisible = [&](const Vec3& center, int id) {
          int seen = 0;
          for (const CameraModel& cam : cams)
            seen += visible_in(cam, center, id, bvh) ? 1 : 0;
          return seen >= need;
        };
        // The candidate must be covisible, and adding it must not occlude
        // an already-placed object below the threshold, so the guarantee
        // holds for the final configuration, not just at insertion time.
        bool accept = covisible(candidate.translation, int(i));
        for (size_t j = 1; j < i && accept; ++j)
          accept = covisible(placements[j].translation, int(j));
        if (accept) {
          placements[i] = candidate;
          placed = true;
        }
      }
    }
    if (!placed)
      throw SceneBuildError("large object " + std::to_string(i) +
                            " not visible from half the cameras after bounded retries");
  }

  std::vector<PlacedObject> out;
  out.reserve(shapes.size());
  for (size_t i = 0; i < shapes.size(); ++i) {
    out.push_back(PlacedObject{std::move(shapes[i].mesh), shapes[i].bounding_radius,
                               shapes[i].material, placements[i], SizeClass::kLarge,
                               shapes[i].seed});
  }
  return out;
}

Transform place_small_uniform(Pcg32& rng, const Aabb& large_bbox, double scale_lo,
                              double scale_hi) {
  Transform t;
  t.translation = Vec3{rng.uniform(large_bbox.lo.x, large_bbox.hi.x),
                       rng.uniform(large_bbox.lo.y, large_bbox.hi.y),
                       rng.uniform(large_bbox.lo.z, large_bbox.hi.z)};
  t.rotation = rng.rotation();
  t.scale = rng.uniform(scale_lo, scale_hi);
  return t;
}

SurfaceSampler::SurfaceSampler(const TriangleMesh& mesh) : mesh_(&mesh) {
  cdf_.reserve(mesh.triangles.size());
  double acc = 0.0;
  for (const auto& tri : mesh.triangles) {
    acc += triangle_area(mesh.positions[tri[0]], mesh.positions[tri[1]], mesh.positions[tri[2]]);
    cdf_.push_back(acc);
  }
  if (cdf_.empty() || !(cdf_.back() > 0.0))
    throw std::invalid_argument("surface sampler needs a mesh with positive area");
}

void SurfaceSampler::sample(Pcg32& rng, Vec3* point, Vec3* normal) const {
  const double r = rng.next_double() * cdf_.back();
  size_t k = size_t(std::upper_bound(cdf_.begin(), cdf_.end(), r) - cdf_.begin());
  if (k >= cdf_.size()) k = cdf_.size() - 1;
  const auto& tri = mesh_->triangles[k];
  const Vec3& a = mesh_->positions[tri[0]];
  const Vec3& b = mesh_->positions[tri[1]];
  const Vec3& c = mesh_->positions[tri[2]];
  const double su = std::sqrt(rng.next_double());
  const double v = rng.next_double();
  const double b0 = 1.0 - su, b1 = su * (1.0 - v), b2 = su * v;
  *point = a * b0 + b * b1 + c * b2;
  Vec3 n = mesh_->normals[tri[0]] * b0 + mesh_->normals[tri[1]] * b1 + mesh_->normals[tri[2]] * b2;
  const double len = norm(n);
  *normal = len > 1e-20 ? n / len : normalize(cross(b - a, c - a));
}

Transform place_small_clustered(Pcg32& rng, const std::vector<PlacedObject>& large,
                                const std::vector<SurfaceSampler>& samplers,
                                double object_bounding_radius, double scale_lo,
                                double scale_hi) {
  if (large.empty() || samplers.size() != large.size())
    throw std::invalid_argument("clustered placement needs large objects with samplers");
  const int pick = int(rng.uniform_int(uint32_t(large.size())));
  Vec3 p_obj, n_obj;
  samplers[pick].sample(rng, &p_obj, &n_obj);
  const Transform& base = large[pick].to_world;
  const Vec3 anchor = base.apply(p_obj);
  const Vec3 up = normalize(base.apply_dir(n_obj));
  const double spin = rng.uniform(0.0, 2.0 * M_PI);
  const double scale = rng.uniform(scale_lo, scale_hi);

  Mat3 align;
  if (up.z > 1.0 - 1e-12) {
    align = Mat3::identity();
  } else if (up.z < -1.0 + 1e-12) {
    align = rotation_axis_angle(Vec3{1.0, 0.0, 0.0}, M_PI);
  } else {
    align = rotation_axis_angle(normalize(cross(Vec3{0.0, 0.0, 1.0}, up)),
                                std::acos(std::clamp(up.z, -1.0, 1.0)));
  }
  Transform t;
  t.rotation = align * rotation_axis_angle(Vec3{0.0, 0.0, 1.0}, spin);
  t.translation = anchor + up * (scale * object_bounding_radius);
  t.scale = scale;
  return t;
}

std::optional<RoomBox> add_room_box(Pcg32& rng, const Aabb& scene_bbox,
                                    const ArrangeParams& params,
                                    const MaterialSampleParams& material_params,
                                    TextureMode texture_mode) {
  if (!(rng.next_double() < params.room_box_probability)) return std::nullopt;
  const double factor = rng.uniform(params.room_scale_lo, params.room_scale_hi);
  const Vec3 center = scene_bbox.center();
  const Vec3 half = scene_bbox.extent() * (0.5 * factor);
  Aabb box;
  box.lo = center - half;
  box.hi = center + half;
  // Align the floor to the scene floor, less a hair of clearance so the box
  // still strictly contains the content at the bottom.
  const double margin = 1e-3 * std::max({half.x, half.y, half.z, 1e-3});
  const double shift = (scene_bbox.lo.z - margin) - box.lo.z;
  box.lo.z += shift;
  box.hi.z += shift;

  RoomBox room;
  room.bounds = box;
  for (MaterialSpec& wall : room.wall_materials)
    wall = sample_material_mode(rng, material_params, texture_mode);
  return room;
}

std::vector<StaticSurface> make_room_geometry(const RoomBox& room) {
  const Vec3& lo = room.bounds.lo;
  const Vec3& hi = room.bounds.hi;
  std::vector<StaticSurface> walls;
  walls.reserve(6);
  walls.push_back({make_quad({lo.x, lo.y, lo.z}, {lo.x, hi.y, lo.z}, {lo.x, hi.y, hi.z},
                             {lo.x, lo.y, hi.z}, {1, 0, 0}),
                   room.wall_materials[0], "wall_-x"});
  walls.push_back({make_quad({hi.x, lo.y, lo.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z},
                             {hi.x, hi.y, lo.z}, {-1, 0, 0}),
                   room.wall_materials[1], "wall_+x"});
  walls.push_back({make_quad({lo.x, lo.y, lo.z}, {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z},
                             {hi.x, lo.y, lo.z}, {0, 1, 0}),
                   room.wall_materials[2], "wall_-y"});
  walls.push_back({make_quad({lo.x, hi.y, lo.z}, {hi.x, hi.y, lo.z}, {hi.x, hi.y, hi.z},
                             {lo.x, hi.y, hi.z}, {0, -1, 0}),
                   room.wall_materials[3], "wall_+y"});
  walls.push_back({make_quad({lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z},
                             {lo.x, hi.y, lo.z}, {0, 0, 1}),
                   room.wall_materials[4], "floor"});
  walls.push_back({make_quad({lo.x, lo.y, hi.z}, {lo.x, hi.y, hi.z}, {hi.x, hi.y, hi.z},
                             {hi.x, lo.y, hi.z}, {0, 0, -1}),
                   room.wall_materials[5], "ceiling"});
  return walls;
}

std::vector<AreaLight> place_lights(Pcg32& rng, const LightParams& params, double scene_top,
                                    const Aabb& region, const std::optional<RoomBox>& room) {
  const int count = rng.uniform_int(params.count_lo, params.count_hi);
  double gap;
  if (room.has_value()) {
    gap = std::max(room->bounds.hi.z - scene_top, 1e-3);
  } else {
    gap = std::max(region.extent().z, 1.0);
  }
  const double plane_z = scene_top + rng.uniform(0.25, 0.75) * gap;
  const double xy_extent = std::max(region.extent().x, region.extent().y);

  std::vector<AreaLight> lights;
  lights.reserve(count);
  for (int i = 0; i < count; ++i) {
    double x = 0.0, y = 0.0;
    for (int it = 0;; ++it) {
      x = rng.uniform(region.lo.x, region.hi.x);
      y = rng.uniform(region.lo.y, region.hi.y);
      if (!room.has_value()) break;
      const Aabb& b = room->bounds;
      if (x > b.lo.x && x < b.hi.x && y > b.lo.y && y < b.hi.y) break;
      if (it >= 10000) {  // statistically unreachable: the region overlaps the box
        x = std::clamp(x, b.lo.x + 1e-6 * xy_extent, b.hi.x - 1e-6 * xy_extent);
        y = std::clamp(y, b.lo.y + 1e-6 * xy_extent, b.hi.y - 1e-6 * xy_extent);
        break;
      }
    }
    AreaLight light;
    light.center = Vec3{x, y, plane_z};
    light.half_extents = Vec2{rng.uniform(params.size_lo, params.size_hi) * xy_extent,
                              rng.uniform(params.size_lo, params.size_hi) * xy_extent};
    light.power = rng.uniform(params.power_lo, params.power_hi);
    const double hue = rng.next_double();
    const double sat = rng.uniform(0.0, params.saturation_max);
    light.color = hsv_to_rgb(hue, sat, 1.0);
    lights.push_back(light);
  }
  return lights;
}

Aabb placed_object_bounds(const PlacedObject& obj) {
  return transform_aabb(mesh_aabb(obj.mesh), obj.to_world);
}

namespace {

SceneSpec build_scene_once(uint64_t s, const SceneParams& p) {
  SceneSpec scene;
  scene.seed = s;

  // Large shapes from per-shape derived seeds, then cameras scaled to the
  // main object, then arrangement.
  std::vector<GeneratedShape> large;
  large.reserve(p.arrange.n_large);
  for (int i = 0; i < p.arrange.n_large; ++i) {
    large.push_back(generate_shape(mix_seed(s, 0x10000 + uint64_t(i)), p, p.tess.large_res_u,
                                   p.tess.large_res_v, p.tess.large_subdiv));
  }

  RigParams rig = p.rig;
  rig.radius_min *= large[0].bounding_radius;
  rig.radius_max *= large[0].bounding_radius;
  Pcg32 rng_cam(mix_seed(s, 1));
  scene.cameras = place_cameras(rng_cam, rig);

  Pcg32 rng_arrange(mix_seed(s, 2));
  scene.objects = arrange_large(rng_arrange, std::move(large), scene.cameras, p.arrange);
  const size_t n_large = scene.objects.size();

  // Small objects: per-object fair coin between uniform-in-bbox and
  // clustered-on-surface when the strategy is mixed.
  const int n_small =
      p.arrange.small_strategy == SmallStrategy::kNone ? 0 : effective_small_count(p.arrange);
  if (n_small > 0) {
    std::vector<GeneratedShape> small;
    small.reserve(n_small);
    for (int j = 0; j < n_small; ++j) {
      small.push_back(generate_shape(mix_seed(s, 0x20000 + uint64_t(j)), p, p.tess.small_res_u,
                                     p.tess.small_res_v, p.tess.small_subdiv));
    }
    Aabb large_bbox;
    for (const PlacedObject& obj : scene.objects) large_bbox.expand(placed_object_bounds(obj));
    std::vector<SurfaceSampler> samplers;
    samplers.reserve(n_large);
    for (const PlacedObject& obj : scene.objects) samplers.emplace_back(obj.mesh);

    Pcg32 rng_small(mix_seed(s, 3));
    std::vector<Transform> placements(n_small);
    for (int j = 0; j < n_small; ++j) {
      bool clustered = p.arrange.small_strategy == SmallStrategy::kClustered;
      if (p.arrange.small_strategy == SmallStrategy::kMixed)
        clustered = rng_small.uniform_int(0, 1) == 1;
      placements[j] =
          clustered ? place_small_clustered(rng_small, scene.objects, samplers,
                                            small[j].bounding_radius, p.arrange.small_scale_lo,
                                            p.arrange.small_scale_hi)
                    : place_small_uniform(rng_small, large_bbox, p.arrange.small_scale_lo,
                                          p.arrange.small_scale_hi);
    }
    for (int j = 0; j < n_small; ++j) {
      scene.objects.push_back(PlacedObject{std::move(small[j].mesh), small[j].bounding_radius,
                                           small[j].material, placements[j], SizeClass::kSmall,
                                           small[j].seed});
    }
  }

  Aabb scene_bbox;
  for (const PlacedObject& obj : scene.objects) scene_bbox.expand(placed_object_bounds(obj));

  Pcg32 rng_room(mix_seed(s, 4));
  scene.room_box =
      add_room_box(rng_room, scene_bbox, p.arrange, p.material, p.texture_mode);
  if (scene.room_box.has_value()) {
    std::vector<StaticSurface> walls = make_room_geometry(*scene.room_box);
    for (StaticSurface& wall : walls) scene.extras.push_back(std::move(wall));
  }

  // Ground scatter: coin, then (without a room box) a textured ground plane,
  // then per tiny object polar position, rotation, and scale.
  Pcg32 rng_scatter(mix_seed(s, 5));
  if (rng_scatter.next_double() < p.arrange.scatter_probability && p.arrange.scatter_count > 0) {
    const double plane_z =
        scene.room_box.has_value() ? scene.room_box->bounds.lo.z : scene_bbox.lo.z;
    const Vec3 c = scene_bbox.center();
    double disc_r;
    if (scene.room_box.has_value()) {
      const Vec3 half = scene.room_box->bounds.extent() * 0.5;
      disc_r = 0.9 * std::min(half.x, half.y);
    } else {
      disc_r = 0.75 * std::hypot(scene_bbox.extent().x, scene_bbox.extent().y);
      const double side = 1.2 * disc_r;
      TriangleMesh ground = make_quad({c.x - side, c.y - side, plane_z},
                                      {c.x + side, c.y - side, plane_z},
                                      {c.x + side, c.y + side, plane_z},
                                      {c.x - side, c.y + side, plane_z}, {0, 0, 1});
      scene.extras.push_back(
          {std::move(ground), sample_material_mode(rng_scatter, p.material, p.texture_mode),
           "ground"});
    }
    for (int k = 0; k < p.arrange.scatter_count; ++k) {
      GeneratedShape tiny = generate_shape(mix_seed(s, 0x30000 + uint64_t(k)), p,
                                           p.tess.tiny_res_u, p.tess.tiny_res_v,
                                           p.tess.tiny_subdiv);
      const double r = disc_r * std::sqrt(rng_scatter.next_double());
      const double angle = rng_scatter.uniform(0.0, 2.0 * M_PI);
      const Mat3 rotation = rng_scatter.rotation();
      const double scale = rng_scatter.uniform(p.arrange.tiny_scale_lo, p.arrange.tiny_scale_hi);
      Transform t;
      t.rotation = rotation;
      // Bounding-sphere bottom exactly on the plane.
      t.translation = Vec3{c.x + r * std::cos(angle), c.y + r * std::sin(angle),
                           plane_z + scale * tiny.bounding_radius};
      t.scale = scale;
      scene.objects.push_back(PlacedObject{std::move(tiny.mesh), tiny.bounding_radius,
                                           tiny.material, t, SizeClass::kTiny, tiny.seed});
    }
    scene.ground_scatter = GroundScatter{plane_z, p.arrange.scatter_count};
  }

  Aabb full_bbox = scene_bbox;
  for (const PlacedObject& obj : scene.objects) full_bbox.expand(placed_object_bounds(obj));
  Aabb region = full_bbox;
  const Vec3 center = full_bbox.center();
  region.lo.x = center.x + 1.5 * (full_bbox.lo.x - center.x);
  region.hi.x = center.x + 1.5 * (full_bbox.hi.x - center.x);
  region.lo.y = center.y + 1.5 * (full_bbox.lo.y - center.y);
  region.hi.y = center.y + 1.5 * (full_bbox.hi.y - center.y);

  Pcg32 rng_lights(mix_seed(s, 6));
  scene.lights = place_lights(rng_lights, p.lights, full_bbox.hi.z, region, scene.room_box);
  return scene;
}

}  // namespace

SceneSpec build_scene(uint64_t seed, const SceneParams& params) {
  validate_scene_params(params);
  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt < params.arrange.max_scene_attempts; ++attempt) {
    const uint64_t s = attempt == 0 ? seed : mix_seed(seed, 0xA77E0000ull + uint64_t(attempt));
    try {
      return build_scene_once(s, params);
    } catch (const SceneBuildError& e) {
      last_error = e.what();
    }
  }
  throw SceneBuildError("scene build failed after " +
                        std::to_string(params.arrange.max_scene_attempts) +
                        " attempts; last error: " + last_error);
}

}  // namespace loftgen
