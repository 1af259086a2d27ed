// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Ray acceleration in two levels: MeshBvh holds one triangle mesh in object
// space (binned surface-area-heuristic tree), and SceneBvh holds a set of
// rigid+uniform-scale instances of such meshes. Because instance transforms
// preserve the ray parameter when directions are mapped un-normalized, the
// t returned by either level is measured in units of the caller's |dir|.

#pragma once

#include <vector>

#include "mesh.h"
#include "vec.h"

namespace loftgen {

struct Hit {
  double t = 0.0;
  int object_id = -1;  // instance id for SceneBvh, 0 for a bare MeshBvh
  int triangle = -1;
  double bary_u = 0.0;  // weight of triangle vertex 1
  double bary_v = 0.0;  // weight of triangle vertex 2
  Vec3 position_obj;    // hit point in the mesh's object space
  Vec3 normal;  // interpolated unit normal: object space from MeshBvh, world from SceneBvh
};

// Moller-Trumbore in double precision. dir need not be unit length; the hit
// parameter is in units of |dir| and must satisfy tmin < t < tmax.
bool intersect_triangle(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b,
                        const Vec3& c, double tmin, double tmax, double* t, double* u,
                        double* v);

struct BvhNode {
  Aabb box;
  int left = -1, right = -1;  // internal children
  int first = 0, count = 0;   // leaf primitive range; count > 0 marks a leaf
};

class MeshBvh {
 public:
  MeshBvh() = default;
  // The mesh must outlive the tree; positions and triangles are referenced,
  // not copied. Throws std::invalid_argument on an empty mesh.
  explicit MeshBvh(const TriangleMesh& mesh);

  // Nearest intersection with tmin < t < tmax; fills hit and returns true.
  bool intersect(const Vec3& o, const Vec3& d, double tmin, double tmax, Hit* hit) const;
  // Any intersection test for shadow rays; stops at the first hit found.
  bool any_hit(const Vec3& o, const Vec3& d, double tmin, double tmax) const;

  const Aabb& bounds() const { return nodes_.empty() ? empty_bounds_ : nodes_[0].box; }
  const TriangleMesh& mesh() const { return *mesh_; }

 private:
  bool traverse(const Vec3& o, const Vec3& d, double tmin, double tmax, bool any, Hit* hit) const;

  const TriangleMesh* mesh_ = nullptr;
  std::vector<BvhNode> nodes_;
  std::vector<int> prim_order_;
  Aabb empty_bounds_;
};

struct BvhInstance {
  const MeshBvh* blas = nullptr;
  Transform to_world;  // object -> world, rigid plus uniform scale > 0
  int object_id = 0;
};

class SceneBvh {
 public:
  SceneBvh() = default;
  explicit SceneBvh(std::vector<BvhInstance> instances);

  // World-space queries; Hit.normal comes back rotated into world space and
  // Hit.position_obj stays in the hit instance's object space.
  bool intersect(const Vec3& o, const Vec3& d, double tmin, double tmax, Hit* hit) const;
  bool any_hit(const Vec3& o, const Vec3& d, double tmin, double tmax) const;

  const Aabb& bounds() const { return nodes_.empty() ? empty_bounds_ : nodes_[0].box; }
  const std::vector<BvhInstance>& instances() const { return instances_; }

 private:
  bool traverse(const Vec3& o, const Vec3& d, double tmin, double tmax, bool any, Hit* hit) const;

  std::vector<BvhInstance> instances_;
  std::vector<Aabb> world_boxes_;  // per instance, parallel to instances_
  std::vector<BvhNode> nodes_;
  std::vector<int> prim_order_;
  Aabb empty_bounds_;
};

// Axis-aligned box of an object-space box pushed through a transform.
Aabb transform_aabb(const Aabb& box, const Transform& t);

}  // namespace loftgen
