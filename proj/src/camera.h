// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pinhole camera model and the randomized eight-camera rig. Camera axes are
// x right, y down, z forward; the world up direction is +z. Pixel (i, j)
// covers [i, i+1) x [j, j+1) in continuous pixel coordinates, so its center
// sits at (i + 0.5, j + 0.5) and the principal point is the image center
// (W/2, H/2). Pixels are square: fx == fy, derived from the vertical field
// of view and the image height.

#pragma once

#include <vector>

#include "rng.h"
#include "vec.h"

namespace loftgen {

struct CameraModel {
  double fov_y = radians(50.0);  // vertical field of view, in (0, pi)
  int width = 640;
  int height = 480;
  Mat3 world_to_cam;  // rotation rows are the camera x/y/z axes in world space
  Vec3 cam_offset;    // translation t of p_cam = R * p_world + t

  double fy() const { return height / (2.0 * std::tan(0.5 * fov_y)); }
  double fx() const { return fy(); }
  double cx() const { return 0.5 * width; }
  double cy() const { return 0.5 * height; }

  Vec3 position() const { return world_to_cam.transposed() * -cam_offset; }
  Vec3 forward() const { return world_to_cam.row(2); }
  Vec3 to_camera(const Vec3& p_world) const { return world_to_cam * p_world + cam_offset; }
  Vec3 to_world(const Vec3& p_cam) const {
    return world_to_cam.transposed() * (p_cam - cam_offset);
  }
};

// Half-open ray o + t*d; d need not be unit length, and all intersection
// t values are measured in units of |d|.
struct Ray {
  Vec3 origin;
  Vec3 dir;
};

// Randomized rig: one base azimuth per scene, then per camera an azimuth
// inside a window of azimuth_span around it, an elevation and radius from
// their ranges, a field of view from fov_range, and a small random rotation
// composed onto the look-at orientation.
struct RigParams {
  int n_cameras = 8;  // fixed by the scene contract
  double elevation_min = radians(-5.0);
  double elevation_max = radians(30.0);
  double azimuth_span = radians(45.0);
  double radius_min = 2.5;  // distance to the scene center, > 0
  double radius_max = 4.0;
  double fov_min = radians(35.0);
  double fov_max = radians(65.0);
  double perturb_sigma = radians(2.0);  // per-axis Gaussian, radians
  int width = 640;
  int height = 480;
};

// World-to-camera pose looking from `position` toward `target` with world +z
// as up (z near-parallel to the view direction falls back to +x as up).
CameraModel look_at_camera(const Vec3& position, const Vec3& target, double fov_y, int width,
                           int height);

// Ray through continuous pixel coordinate (px + ox, py + oy); the default
// offset (0.5, 0.5) is the pixel center. The direction is unit length.
Ray primary_ray(const CameraModel& cam, int px, int py, double ox = 0.5, double oy = 0.5);

// Projects a world point to continuous pixel coordinates. Returns false when
// the point is at or behind the camera plane. z receives camera-frame depth.
bool project(const CameraModel& cam, const Vec3& p_world, double* u, double* v,
             double* z = nullptr);

// World point whose projection is (u, v) at camera-frame depth z > 0.
Vec3 unproject(const CameraModel& cam, double u, double v, double z);

// Draws the rig around the origin. Per camera, in order: azimuth, elevation,
// radius, field of view, then three Gaussian perturbation angles (applied
// as Rz*Ry*Rx in the camera frame). Throws std::invalid_argument on empty
// or out-of-range parameters.
std::vector<CameraModel> place_cameras(Pcg32& rng, const RigParams& params);

}  // namespace loftgen
