// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "camera.h"

#include <cmath>
#include <stdexcept>

namespace loftgen {

CameraModel look_at_camera(const Vec3& position, const Vec3& target, double fov_y, int width,
                           int height) {
  if (!(fov_y > 0.0 && fov_y < M_PI)) throw std::invalid_argument("fov_y outside (0, pi)");
  if (width <= 0 || height <= 0) throw std::invalid_argument("image size must be positive");
  const Vec3 offset = target - position;
  if (norm(offset) <= 0.0) throw std::invalid_argument("camera position equals target");

  const Vec3 z = normalize(offset);
  Vec3 up{0.0, 0.0, 1.0};
  if (std::abs(dot(z, up)) > 0.999) up = Vec3{1.0, 0.0, 0.0};
  const Vec3 x = normalize(cross(z, up));
  const Vec3 y = cross(z, x);  // unit: z and x are orthonormal

  CameraModel cam;
  cam.fov_y = fov_y;
  cam.width = width;
  cam.height = height;
  cam.world_to_cam = Mat3::from_rows(x, y, z);
  cam.cam_offset = cam.world_to_cam * -position;
  return cam;
}

Ray primary_ray(const CameraModel& cam, int px, int py, double ox, double oy) {
  const Vec3 dir_cam{(px + ox - cam.cx()) / cam.fx(), (py + oy - cam.cy()) / cam.fy(), 1.0};
  return Ray{cam.position(), normalize(cam.world_to_cam.transposed() * dir_cam)};
}

bool project(const CameraModel& cam, const Vec3& p_world, double* u, double* v, double* z) {
  const Vec3 p = cam.to_camera(p_world);
  if (!(p.z > 0.0)) return false;
  *u = cam.cx() + cam.fx() * (p.x / p.z);
  *v = cam.cy() + cam.fy() * (p.y / p.z);
  if (z != nullptr) *z = p.z;
  return true;
}

Vec3 unproject(const CameraModel& cam, double u, double v, double z) {
  const Vec3 p_cam{(u - cam.cx()) * z / cam.fx(), (v - cam.cy()) * z / cam.fy(), z};
  return cam.to_world(p_cam);
}

std::vector<CameraModel> place_cameras(Pcg32& rng, const RigParams& p) {
  if (p.n_cameras != 8) throw std::invalid_argument("rig requires exactly 8 cameras");
  if (!(p.elevation_min <= p.elevation_max) || std::abs(p.elevation_min) >= 0.5 * M_PI ||
      std::abs(p.elevation_max) >= 0.5 * M_PI)
    throw std::invalid_argument("bad elevation range");
  if (!(p.azimuth_span >= 0.0)) throw std::invalid_argument("bad azimuth span");
  if (!(p.radius_min > 0.0 && p.radius_min <= p.radius_max))
    throw std::invalid_argument("bad radius range");
  if (!(p.fov_min > 0.0 && p.fov_min <= p.fov_max && p.fov_max < M_PI))
    throw std::invalid_argument("bad field-of-view range");
  if (!(p.perturb_sigma >= 0.0)) throw std::invalid_argument("bad perturbation sigma");
  if (p.width <= 0 || p.height <= 0) throw std::invalid_argument("bad image size");

  const double base_azimuth = rng.uniform(0.0, 2.0 * M_PI);
  std::vector<CameraModel> cams;
  cams.reserve(p.n_cameras);
  for (int i = 0; i < p.n_cameras; ++i) {
    const double azimuth = base_azimuth + rng.uniform(0.0, p.azimuth_span);
    const double elevation = rng.uniform(p.elevation_min, p.elevation_max);
    const double radius = rng.uniform(p.radius_min, p.radius_max);
    const double fov = rng.uniform(p.fov_min, p.fov_max);
    const Vec3 pos{radius * std::cos(elevation) * std::cos(azimuth),
                   radius * std::cos(elevation) * std::sin(azimuth),
                   radius * std::sin(elevation)};
    CameraModel cam = look_at_camera(pos, Vec3{0.0, 0.0, 0.0}, fov, p.width, p.height);

    const double ax = rng.gaussian(0.0, p.perturb_sigma);
    const double ay = rng.gaussian(0.0, p.perturb_sigma);
    const double az = rng.gaussian(0.0, p.perturb_sigma);
    const Mat3 perturb = rotation_axis_angle(Vec3{0, 0, 1}, az) *
                         rotation_axis_angle(Vec3{0, 1, 0}, ay) *
                         rotation_axis_angle(Vec3{1, 0, 0}, ax);
    cam.world_to_cam = perturb * cam.world_to_cam;
    cam.cam_offset = cam.world_to_cam * -pos;
    cams.push_back(cam);
  }
  return cams;
}

}  // namespace loftgen
