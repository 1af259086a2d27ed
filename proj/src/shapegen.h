// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Procedural shape synthesis: random closed profile curves, random-walk stem
// curves, lofting profiles along a stem into a closed tube surface, grid
// tessellation, and noise displacement along vertex normals. All generators
// draw from a caller-supplied RNG, so a fixed seed reproduces a shape
// bit for bit.

#pragma once

#include <vector>

#include "mesh.h"
#include "noise.h"
#include "nurbs.h"
#include "rng.h"

namespace loftgen {

enum class ProfileStyle { kStarfish, kReptile };

struct ProfileSpec {
  ProfileStyle style = ProfileStyle::kStarfish;
  int n_points = 12;  // control points of the closed profile, >= degree+1
  int degree = 3;     // in [1, 3]

  // starfish: control points on the unit circle, jittered per point
  double radial_sigma = 0.15;
  double tangential_sigma = 0.10;

  // reptile: constant-radius offset of a 2D random walk
  int walk_steps = 6;          // walk control points, >= 2
  double step_sigma = 0.45;    // walk step scale
  double offset_radius = 0.35;  // > 0
};

struct StemSpec {
  int n_steps = 6;          // control points, >= 2
  double step_sigma = 0.5;  // step length, > 0
  int degree = 3;           // in [1, 3]; clamped to n_steps-1
  // Blend weight of the previous direction when drawing the next step;
  // damps immediate backtracking so stems rarely fold onto themselves.
  double persistence = 1.0;
};

struct LoftSpec {
  int n_profiles = 8;  // cross-sections placed along the stem, >= 2
  double scale_min = 0.6, scale_max = 1.4;  // per-section scale, > 0
};

struct DisplaceSpec {
  NoiseField coarse_field = PerlinField{};
  double coarse_magnitude = 0.0;
  NoiseField fine_field = PerlinField{};
  double fine_magnitude = 0.0;
  int subdivision_level = 0;  // midpoint subdivisions before displacing
};

// One parallel-transport (rotation-minimizing) frame along a stem.
struct PathFrame {
  Vec3 position;
  Vec3 tangent;
  Vec3 normal;    // frame x-axis; profile x maps here
  Vec3 binormal;  // frame y-axis
};

// Closed profile: control points uniformly spaced on the unit circle, each
// perturbed radially and tangentially by Gaussian noise. Draws whose radial
// coordinate would collapse below a small floor are resampled a bounded
// number of times, then clamped.
NurbsCurve gen_starfish_profile(Pcg32& rng, const ProfileSpec& spec);

// Closed profile: constant-radius offset outline of a short 2D Gaussian
// random walk, least-squares fitted back to a periodic curve. Fit failures
// resample the walk a bounded number of times before propagating.
NurbsCurve gen_reptile_profile(Pcg32& rng, const ProfileSpec& spec);

// Closed counter-clockwise outline at constant distance `radius` around an
// open planar curve: left offsets forward, a semicircular cap, right offsets
// backward, and a closing cap. Points that land closer than radius - 1e-6 to
// the sampled spine polyline are discarded, then residual self-intersection
// loops are cut out segment by segment.
std::vector<Vec2> offset_outline(const NurbsCurve& curve, double radius, int n_samples);

// Open 3D random-walk curve starting at the origin. Steps have constant
// length step_sigma and directions that blend the previous direction with
// fresh Gaussian noise (see StemSpec::persistence).
NurbsCurve gen_stem(Pcg32& rng, const StemSpec& spec);

// Parallel-transport frames at `n` parameters uniformly spanning the stem
// domain. The first frame picks a reference up axis; each subsequent frame
// rotates the previous one through the minimal rotation between consecutive
// tangents, which keeps the profile orientation from twisting.
std::vector<PathFrame> parallel_transport_frames(const NurbsCurve& stem, int n);

// Sweeps closed profiles along the stem: at each of n_profiles sections a
// profile is chosen from `profiles`, scaled by a draw from scale_range, and
// its control points are placed into that section's frame. The stacked
// sections form the control net of a tube surface, periodic in u.
NurbsSurface loft(const std::vector<NurbsCurve>& profiles, const NurbsCurve& stem,
                  const LoftSpec& spec, Pcg32& rng);

// Regular-grid sampling into triangles: u wraps (res_u columns, seam shares
// indices), v is open (res_v rows). Per-vertex normals come from the
// surface derivatives.
TriangleMesh tessellate(const NurbsSurface& surface, int res_u, int res_v);

// Optional midpoint subdivision followed by displacement of every vertex
// along its normal by coarse + fine field values scaled by their magnitudes,
// then a normal recompute. Displacement distance never exceeds
// coarse_magnitude + fine_magnitude.
TriangleMesh displace_mesh(const TriangleMesh& mesh, const DisplaceSpec& spec);

}  // namespace loftgen
