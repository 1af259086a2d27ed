// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Render-ready triangle geometry and the handful of mesh operations the
// generator needs: normal computation, midpoint subdivision, degenerate
// cleanup, bounds, and OBJ export for debugging.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "vec.h"

namespace loftgen {

struct TriangleMesh {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;  // per-vertex, unit length
  std::vector<std::array<int, 3>> triangles;
  // Positions are authored in object space; textures and displacement fields
  // evaluate there, so instancing a mesh never changes its surface pattern.
  Transform object_frame;
};

// Unsigned area of one triangle.
double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

// Drops triangles whose area is at or below `min_area`, and any triangle
// that repeats a vertex index.
void remove_degenerate_triangles(TriangleMesh& mesh, double min_area = 1e-12);

// Area-weighted average of incident triangle normals, normalized per vertex.
// Vertices with no well-defined normal (isolated, or only degenerate
// triangles) fall back to +z.
void compute_vertex_normals(TriangleMesh& mesh);

// Splits every triangle into four by inserting one vertex per unique
// undirected edge, so shared edges — including the wrap seam of a closed
// tessellation — stay crack-free. New vertices interpolate position and
// (renormalized) normal from the edge endpoints.
TriangleMesh subdivide_midpoint(const TriangleMesh& mesh);

Aabb mesh_aabb(const TriangleMesh& mesh);

// Wavefront OBJ with positions and normals; deterministic byte output.
void write_obj(const TriangleMesh& mesh, const std::string& path);

}  // namespace loftgen
