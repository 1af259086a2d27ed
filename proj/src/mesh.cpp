// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "mesh.h"

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace loftgen {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

void remove_degenerate_triangles(TriangleMesh& mesh, double min_area) {
  size_t keep = 0;
  for (const std::array<int, 3>& t : mesh.triangles) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
    if (triangle_area(mesh.positions[t[0]], mesh.positions[t[1]], mesh.positions[t[2]]) <=
        min_area)
      continue;
    mesh.triangles[keep++] = t;
  }
  mesh.triangles.resize(keep);
}

void compute_vertex_normals(TriangleMesh& mesh) {
  mesh.normals.assign(mesh.positions.size(), Vec3{0, 0, 0});
  for (const std::array<int, 3>& t : mesh.triangles) {
    // cross product length is twice the area, which is the weight we want
    const Vec3 n = cross(mesh.positions[t[1]] - mesh.positions[t[0]],
                         mesh.positions[t[2]] - mesh.positions[t[0]]);
    mesh.normals[t[0]] += n;
    mesh.normals[t[1]] += n;
    mesh.normals[t[2]] += n;
  }
  for (Vec3& n : mesh.normals) {
    const double len = norm(n);
    n = len > 1e-20 ? n / len : Vec3{0, 0, 1};
  }
}

TriangleMesh subdivide_midpoint(const TriangleMesh& mesh) {
  TriangleMesh out;
  out.positions = mesh.positions;
  out.normals = mesh.normals;
  out.object_frame = mesh.object_frame;
  out.triangles.reserve(mesh.triangles.size() * 4);

  std::unordered_map<uint64_t, int> edge_vertex;
  edge_vertex.reserve(mesh.triangles.size() * 2);
  const bool has_normals = mesh.normals.size() == mesh.positions.size();

  auto midpoint = [&](int a, int b) -> int {
    const uint64_t key = a < b ? (uint64_t(a) << 32) | uint64_t(b) : (uint64_t(b) << 32) | uint64_t(a);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    const int idx = int(out.positions.size());
    out.positions.push_back((mesh.positions[a] + mesh.positions[b]) * 0.5);
    if (has_normals) {
      const Vec3 n = mesh.normals[a] + mesh.normals[b];
      const double len = norm(n);
      out.normals.push_back(len > 1e-20 ? n / len : mesh.normals[a]);
    }
    edge_vertex.emplace(key, idx);
    return idx;
  };

  for (const std::array<int, 3>& t : mesh.triangles) {
    const int ab = midpoint(t[0], t[1]);
    const int bc = midpoint(t[1], t[2]);
    const int ca = midpoint(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  return out;
}

Aabb mesh_aabb(const TriangleMesh& mesh) {
  Aabb box;
  for (const Vec3& p : mesh.positions) box.expand(p);
  return box;
}

void write_obj(const TriangleMesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_obj: cannot open " + path);
  const bool has_normals = mesh.normals.size() == mesh.positions.size();
  for (const Vec3& p : mesh.positions) std::fprintf(f, "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
  if (has_normals)
    for (const Vec3& n : mesh.normals) std::fprintf(f, "vn %.9g %.9g %.9g\n", n.x, n.y, n.z);
  for (const std::array<int, 3>& t : mesh.triangles) {
    if (has_normals)
      std::fprintf(f, "f %d//%d %d//%d %d//%d\n", t[0] + 1, t[0] + 1, t[1] + 1, t[1] + 1,
                   t[2] + 1, t[2] + 1);
    else
      std::fprintf(f, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
  }
  std::fclose(f);
}

}  // namespace loftgen
