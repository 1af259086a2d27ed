// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "camera.h"
#include "rng.h"

using namespace loftgen;

namespace {

// fov chosen so the intrinsics are exact: fy = 480 / (2 * tan(atan(0.5))) = 480.
CameraModel reference_camera() {
  return look_at_camera(Vec3{4.0, 0.0, 0.0}, Vec3{0.0, 0.0, 0.0}, 2.0 * std::atan(0.5), 640,
                        480);
}

}  // namespace

TEST_CASE("intrinsics follow the vertical field of view") {
  const CameraModel cam = reference_camera();
  CHECK(std::abs(cam.fy() - 480.0) < 1e-9);
  CHECK(cam.fx() == cam.fy());
  CHECK(cam.cx() == 320.0);
  CHECK(cam.cy() == 240.0);
}

TEST_CASE("look-at basis is orthonormal and right-handed with y pointing down") {
  Pcg32 rng;
  rng.seed(0x5eedca11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 pos = rng.unit_vector() * rng.uniform(0.5, 10.0);
    const CameraModel cam = look_at_camera(pos, Vec3{0, 0, 0}, radians(50.0), 640, 480);
    const Vec3 x = cam.world_to_cam.row(0);
    const Vec3 y = cam.world_to_cam.row(1);
    const Vec3 z = cam.world_to_cam.row(2);
    CHECK(std::abs(norm(x) - 1.0) < 1e-12);
    CHECK(std::abs(norm(y) - 1.0) < 1e-12);
    CHECK(std::abs(norm(z) - 1.0) < 1e-12);
    CHECK(std::abs(dot(x, y)) < 1e-12);
    CHECK(std::abs(dot(y, z)) < 1e-12);
    CHECK(std::abs(dot(z, x)) < 1e-12);
    CHECK(norm(cross(x, y) - z) < 1e-12);  // right x down = forward
    // z points from the camera toward the target.
    CHECK(norm(z - normalize(Vec3{0, 0, 0} - pos)) < 1e-12);
    // y has a non-positive world-z component: "down" never points up.
    CHECK(y.z < 1e-12);
    // the camera sits where it was asked to.
    CHECK(norm(cam.position() - pos) < 1e-9);
  }
}

TEST_CASE("center pixel ray is the optical axis") {
  const CameraModel cam = reference_camera();
  // Continuous coordinate (320, 240) is the principal point: pixel index
  // (319, 239) with offset (1, 1), or equivalently (320, 240) with offset 0.
  const Ray r = primary_ray(cam, 320, 240, 0.0, 0.0);
  CHECK(norm(r.origin - cam.position()) < 1e-12);
  CHECK(norm(r.dir - cam.forward()) < 1e-12);
}

TEST_CASE("vertical edge rays open at half the field of view") {
  const double fov = radians(50.0);
  const CameraModel cam = look_at_camera(Vec3{3, 2, 1}, Vec3{0, 0, 0}, fov, 640, 480);
  const Ray top = primary_ray(cam, 320, 0, 0.0, 0.0);     // v = 0: top edge
  const Ray bottom = primary_ray(cam, 320, 480, 0.0, 0.0);  // v = H: bottom edge
  const double a_top = std::acos(std::clamp(dot(top.dir, cam.forward()), -1.0, 1.0));
  const double a_bot = std::acos(std::clamp(dot(bottom.dir, cam.forward()), -1.0, 1.0));
  CHECK(std::abs(a_top - 0.5 * fov) < 1e-12);
  CHECK(std::abs(a_bot - 0.5 * fov) < 1e-12);
}

TEST_CASE("projection is monotone: larger camera y lands lower in the image") {
  const CameraModel cam = reference_camera();
  double prev_v = -1e300;
  for (int k = -5; k <= 5; ++k) {
    // Points at fixed depth 4 in front of the camera, marching down in y.
    const Vec3 p = cam.to_world(Vec3{0.3, 0.2 * k, 4.0});
    double u, v;
    REQUIRE(project(cam, p, &u, &v));
    CHECK(v > prev_v);
    prev_v = v;
  }
}

TEST_CASE("pixel footprint: integer corners, +0.5 centers") {
  const CameraModel cam = reference_camera();
  // A point that projects exactly to the principal point has pixel *center*
  // coordinates (cx, cy), which lies in pixel (320, 240)'s top-left corner
  // region boundary: floor gives the pixel index.
  double u, v, z;
  REQUIRE(project(cam, Vec3{0, 0, 0}, &u, &v, &z));
  CHECK(std::abs(u - 320.0) < 1e-9);
  CHECK(std::abs(v - 240.0) < 1e-9);
  CHECK(std::abs(z - 4.0) < 1e-12);
  // The ray through pixel (10, 7) center projects back to (10.5, 7.5).
  const Ray r = primary_ray(cam, 10, 7);
  REQUIRE(project(cam, r.origin + r.dir * 2.5, &u, &v));
  CHECK(std::abs(u - 10.5) < 1e-6);
  CHECK(std::abs(v - 7.5) < 1e-6);
}

TEST_CASE("project and unproject are mutually inverse") {
  Pcg32 rng;
  rng.seed(0x5eedca12);
  const CameraModel cam = look_at_camera(Vec3{-2, 3, 1.5}, Vec3{0.2, -0.1, 0.3}, radians(42.0),
                                         640, 480);
  for (int i = 0; i < 200; ++i) {
    const double u = rng.uniform(0.0, 640.0);
    const double v = rng.uniform(0.0, 480.0);
    const double z = rng.uniform(0.1, 50.0);
    const Vec3 p = unproject(cam, u, v, z);
    double u2, v2, z2;
    REQUIRE(project(cam, p, &u2, &v2, &z2));
    CHECK(std::abs(u2 - u) < 1e-6);
    CHECK(std::abs(v2 - v) < 1e-6);
    CHECK(std::abs(z2 - z) < 1e-9);
  }
}

TEST_CASE("points behind the camera do not project") {
  const CameraModel cam = reference_camera();
  double u, v;
  CHECK_FALSE(project(cam, cam.position() + cam.forward() * -1.0, &u, &v));
  CHECK_FALSE(project(cam, cam.position(), &u, &v));
}

TEST_CASE("unperturbed rig looks exactly at the origin") {
  RigParams rig;
  rig.perturb_sigma = 0.0;
  Pcg32 rng;
  rng.seed(0x5eedca13);
  const std::vector<CameraModel> cams = place_cameras(rng, rig);
  REQUIRE(cams.size() == 8);
  for (const CameraModel& cam : cams) {
    double u, v;
    REQUIRE(project(cam, Vec3{0, 0, 0}, &u, &v));
    CHECK(std::abs(u - cam.cx()) < 1e-9);
    CHECK(std::abs(v - cam.cy()) < 1e-9);
  }
}

TEST_CASE("rig samples stay inside their configured ranges") {
  RigParams rig;
  Pcg32 rng;
  rng.seed(0x5eedca14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<CameraModel> cams = place_cameras(rng, rig);
    std::vector<double> azimuths;
    for (const CameraModel& cam : cams) {
      const Vec3 pos = cam.position();
      const double r = norm(pos);
      CHECK(r >= rig.radius_min - 1e-9);
      CHECK(r <= rig.radius_max + 1e-9);
      const double elevation = std::asin(std::clamp(pos.z / r, -1.0, 1.0));
      CHECK(elevation >= rig.elevation_min - 1e-9);
      CHECK(elevation <= rig.elevation_max + 1e-9);
      CHECK(cam.fov_y >= rig.fov_min - 1e-9);
      CHECK(cam.fov_y <= rig.fov_max + 1e-9);
      azimuths.push_back(std::atan2(pos.y, pos.x));
    }
    // All azimuths fit in one window of width azimuth_span somewhere on the
    // circle: the largest circular gap must be at least 2*pi - span.
    std::sort(azimuths.begin(), azimuths.end());
    double max_gap = azimuths.front() + 2.0 * M_PI - azimuths.back();
    for (size_t i = 1; i < azimuths.size(); ++i)
      max_gap = std::max(max_gap, azimuths[i] - azimuths[i - 1]);
    CHECK(max_gap >= 2.0 * M_PI - rig.azimuth_span - 1e-9);
  }
}

TEST_CASE("perturbed rig still frames the origin loosely") {
  RigParams rig;  // default 2 degree per-axis sigma
  Pcg32 rng;
  rng.seed(0x5eedca15);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<CameraModel> cams = place_cameras(rng, rig);
    for (const CameraModel& cam : cams) {
      double u, v;
      REQUIRE(project(cam, Vec3{0, 0, 0}, &u, &v));
      // 6 sigma = 12 degrees of tilt moves the principal point by at most
      // fy * tan(12 deg) + distortion from roll; half the image is a safe bound.
      CHECK(std::abs(u - cam.cx()) < 0.5 * cam.width);
      CHECK(std::abs(v - cam.cy()) < 0.5 * cam.height);
      // Orthonormality survives the perturbation composition.
      const Mat3& R = cam.world_to_cam;
      CHECK(std::abs(dot(R.row(0), R.row(1))) < 1e-12);
      CHECK(std::abs(norm(R.row(2)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("rig placement is deterministic in the generator state") {
  RigParams rig;
  Pcg32 a, b;
  a.seed(123456);
  b.seed(123456);
  const std::vector<CameraModel> ca = place_cameras(a, rig);
  const std::vector<CameraModel> cb = place_cameras(b, rig);
  REQUIRE(ca.size() == cb.size());
  for (size_t i = 0; i < ca.size(); ++i) {
    CHECK(ca[i].fov_y == cb[i].fov_y);
    CHECK(norm(ca[i].cam_offset - cb[i].cam_offset) == 0.0);
    for (int r = 0; r < 3; ++r) CHECK(norm(ca[i].world_to_cam.row(r) - cb[i].world_to_cam.row(r)) == 0.0);
  }
}

TEST_CASE("rig parameter validation") {
  Pcg32 rng;
  rng.seed(1);
  RigParams bad;
  bad.radius_min = -1.0;
  CHECK_THROWS_AS(place_cameras(rng, bad), std::invalid_argument);
  bad = RigParams{};
  bad.fov_min = radians(100.0);
  bad.fov_max = radians(50.0);
  CHECK_THROWS_AS(place_cameras(rng, bad), std::invalid_argument);
  bad = RigParams{};
  bad.n_cameras = 0;
  CHECK_THROWS_AS(place_cameras(rng, bad), std::invalid_argument);
  CHECK_THROWS_AS(look_at_camera(Vec3{1, 1, 1}, Vec3{1, 1, 1}, radians(50.0), 640, 480),
                  std::invalid_argument);
}
