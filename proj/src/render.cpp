// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "render.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "materials.h"

namespace loftgen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 mul(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }

// Lambert plus GGX microfacet specular (Smith-Schlick masking, Schlick
// Fresnel). `n`, `v`, `l` are unit vectors with n facing the viewer.
Vec3 brdf(const Vec3& n, const Vec3& v, const Vec3& l, const Vec3& albedo,
          const MaterialSpec& mat) {
  const double ndl = dot(n, l);
  const double ndv = std::max(dot(n, v), 1e-9);
  const Vec3 diffuse = albedo * ((1.0 - mat.metallic) / M_PI);

  const Vec3 h = normalize(v + l);
  const double ndh = std::max(dot(n, h), 0.0);
  const double vdh = std::max(dot(v, h), 0.0);
  const double alpha = mat.roughness * mat.roughness;
  const double a2 = alpha * alpha;
  const double denom = ndh * ndh * (a2 - 1.0) + 1.0;
  const double D = a2 / (M_PI * denom * denom);
  const double k = 0.5 * alpha;
  const double g1v = ndv / (ndv * (1.0 - k) + k);
  const double g1l = ndl / (ndl * (1.0 - k) + k);
  const double G = g1v * g1l;
  const Vec3 f0 = Vec3{0.04, 0.04, 0.04} * (1.0 - mat.metallic) + albedo * mat.metallic;
  const double fres = std::pow(1.0 - vdh, 5.0);
  const Vec3 F = f0 + (Vec3{1.0, 1.0, 1.0} - f0) * fres;
  const Vec3 specular = F * (D * G / std::max(4.0 * ndv * ndl, 1e-9));
  return diffuse + specular;
}

}  // namespace

uint64_t pixel_stream_seed(uint64_t scene_seed, int cam_index, int px, int py) {
  uint64_t h = hash_combine(scene_seed, 0xC0FFEEull + uint64_t(cam_index));
  h = hash_combine(h, uint64_t(uint32_t(py)));
  h = hash_combine(h, uint64_t(uint32_t(px)));
  return h;
}

Renderer::Renderer(const SceneSpec& scene) : scene_(&scene) {
  const size_t n = scene.objects.size() + scene.extras.size();
  if (n == 0) throw std::invalid_argument("renderer needs at least one surface");
  blas_.reserve(n);
  materials_.reserve(n);
  std::vector<BvhInstance> instances;
  instances.reserve(n);
  for (const PlacedObject& obj : scene.objects) {
    blas_.emplace_back(obj.mesh);
    instances.push_back({&blas_.back(), obj.to_world, int(instances.size())});
    materials_.push_back(&obj.material);
  }
  for (const StaticSurface& extra : scene.extras) {
    blas_.emplace_back(extra.mesh);
    instances.push_back({&blas_.back(), Transform{}, int(instances.size())});
    materials_.push_back(&extra.material);
  }
  tlas_.emplace(std::move(instances));
}

Vec3 Renderer::shade(const Vec3& origin, const Vec3& dir, const Hit& hit, Pcg32& rng) const {
  const MaterialSpec& mat = *materials_[hit.object_id];
  const Vec3 p = origin + dir * hit.t;
  Vec3 n = hit.normal;
  const Vec3 v = normalize(dir * -1.0);
  if (dot(n, v) < 0.0) n = n * -1.0;  // two-sided: face the viewer
  const Vec3 albedo = texture_color(hit.position_obj, mat.texture);
  const Vec3 shadow_origin = p + n * (1e-6 * (1.0 + norm(p)));

  const std::vector<AreaLight>& lights = scene_->lights;
  const int n_lights = int(lights.size());
  if (n_lights == 0) return Vec3{};

  const bool subset = n_lights > kMaxLightsPerPixel;
  const int n_picks = subset ? kMaxLightsPerPixel : n_lights;
  const double pick_weight = subset ? double(n_lights) / double(kMaxLightsPerPixel) : 1.0;

  Vec3 radiance;
  for (int pick = 0; pick < n_picks; ++pick) {
    const AreaLight& light =
        lights[subset ? int(rng.uniform_int(uint32_t(n_lights))) : pick];
    const double area = 4.0 * light.half_extents.x * light.half_extents.y;
    if (!(area > 0.0)) continue;
    const Vec3 emitted = light.color * (light.power / (area * M_PI));

    Vec3 sum;
    for (int sy = 0; sy < 2; ++sy) {
      for (int sx = 0; sx < 2; ++sx) {
        const double ux = (sx + rng.next_double()) * 0.5;
        const double uy = (sy + rng.next_double()) * 0.5;
        const Vec3 q{light.center.x + (2.0 * ux - 1.0) * light.half_extents.x,
                     light.center.y + (2.0 * uy - 1.0) * light.half_extents.y, light.center.z};
        const Vec3 to_light = q - shadow_origin;
        const double d2 = dot(to_light, to_light);
        if (!(d2 > 0.0)) continue;
        const double dist = std::sqrt(d2);
        const Vec3 l = to_light / dist;
        const double cos_i = dot(n, l);
        if (cos_i <= 0.0) continue;
        const double cos_l = dot(light.normal, l * -1.0);
        if (cos_l <= 0.0) continue;  // one-sided emitter
        if (tlas_->any_hit(shadow_origin, to_light, 0.0, 1.0 - 1e-6)) continue;
        sum += brdf(n, v, l, albedo, mat) * (cos_i * cos_l / d2);
      }
    }
    radiance += mul(sum, emitted) * (area * pick_weight / double(kLightSamples));
  }
  return radiance;
}

Vec3 Renderer::trace(const Vec3& origin, const Vec3& dir, Pcg32& rng) const {
  Hit hit;
  if (!tlas_->intersect(origin, dir, 1e-9, kInf, &hit)) return Vec3{};
  return shade(origin, dir, hit, rng);
}

HdrImage Renderer::render_hdr(int cam_index, int spp) const {
  if (cam_index < 0 || cam_index >= int(scene_->cameras.size()))
    throw std::invalid_argument("camera index out of range");
  if (spp < 1) throw std::invalid_argument("spp must be >= 1");
  const CameraModel& cam = scene_->cameras[cam_index];

  HdrImage img;
  img.width = cam.width;
  img.height = cam.height;
  img.pixels.assign(size_t(cam.width) * cam.height, Vec3{});

  // Jitter strata: a g x g grid covers the first g*g samples, the remainder
  // are unstratified. spp = 1 shoots one jittered ray.
  const int grid = std::max(1, int(std::floor(std::sqrt(double(spp)))));
  for (int py = 0; py < cam.height; ++py) {
    for (int px = 0; px < cam.width; ++px) {
      Pcg32 rng(pixel_stream_seed(scene_->seed, cam_index, px, py));
      Vec3 sum;
      for (int s = 0; s < spp; ++s) {
        double ox, oy;
        if (s < grid * grid) {
          ox = ((s % grid) + rng.next_double()) / grid;
          oy = ((s / grid) + rng.next_double()) / grid;
        } else {
          ox = rng.next_double();
          oy = rng.next_double();
        }
        const Ray ray = primary_ray(cam, px, py, ox, oy);
        sum += trace(ray.origin, ray.dir, rng);
      }
      img.at(px, py) = sum / double(spp);
    }
  }
  return img;
}

DepthImage Renderer::render_depth(int cam_index) const {
  if (cam_index < 0 || cam_index >= int(scene_->cameras.size()))
    throw std::invalid_argument("camera index out of range");
  const CameraModel& cam = scene_->cameras[cam_index];

  DepthImage img;
  img.width = cam.width;
  img.height = cam.height;
  img.values.assign(size_t(cam.width) * cam.height, 0.0f);
  for (int py = 0; py < cam.height; ++py) {
    for (int px = 0; px < cam.width; ++px) {
      const Ray ray = primary_ray(cam, px, py);  // center ray, no stream draws
      Hit hit;
      if (!tlas_->intersect(ray.origin, ray.dir, 1e-9, kInf, &hit)) continue;
      const Vec3 p = ray.origin + ray.dir * hit.t;
      img.at(px, py) = float(cam.to_camera(p).z);
    }
  }
  return img;
}

double compute_auto_exposure(const std::vector<HdrImage>& views) {
  std::vector<double> luminance;
  size_t total = 0;
  for (const HdrImage& v : views) total += v.pixels.size();
  if (total == 0) return 1.0;
  luminance.reserve(total);
  for (const HdrImage& v : views)
    for (const Vec3& c : v.pixels)
      luminance.push_back(0.2126 * c.x + 0.7152 * c.y + 0.0722 * c.z);
  const size_t idx = size_t(std::floor(0.99 * double(luminance.size() - 1)));
  std::nth_element(luminance.begin(), luminance.begin() + idx, luminance.end());
  const double p99 = luminance[idx];
  return p99 > 1e-12 ? 1.0 / p99 : 1.0;
}

RenderTarget assemble_target(const HdrImage& hdr, const DepthImage& depth, double exposure) {
  if (hdr.width != depth.width || hdr.height != depth.height)
    throw std::invalid_argument("hdr and depth dimensions differ");
  RenderTarget out;
  out.width = hdr.width;
  out.height = hdr.height;
  out.rgb.reserve(hdr.pixels.size());
  for (const Vec3& c : hdr.pixels)
    out.rgb.push_back(
        Vec3{clamp01(c.x * exposure), clamp01(c.y * exposure), clamp01(c.z * exposure)});
  out.depth = depth.values;
  return out;
}

}  // namespace loftgen
