// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "bvh.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loftgen {

namespace {

constexpr int kLeafSize = 4;
constexpr int kNumBins = 16;
constexpr int kMaxStack = 64;

struct BuildPrim {
  Aabb box;
  Vec3 centroid;
  int index = 0;
};

// Shared recursive binned-SAH builder over primitive boxes. Appends nodes to
// `nodes` and reorders `prims`; returns the index of the subtree root.
int build_subtree(std::vector<BvhNode>& nodes, std::vector<BuildPrim>& prims, int lo,
                  int hi) {
  const int node_index = int(nodes.size());
  nodes.emplace_back();

  Aabb box, centroid_box;
  for (int i = lo; i < hi; ++i) {
    box.expand(prims[i].box);
    centroid_box.expand(prims[i].centroid);
  }
  nodes[node_index].box = box;

  const int count = hi - lo;
  const Vec3 extent = centroid_box.extent();
  const int axis = extent.x >= extent.y ? (extent.x >= extent.z ? 0 : 2)
                                        : (extent.y >= extent.z ? 1 : 2);
  if (count <= kLeafSize || extent[axis] <= 0.0) {
    nodes[node_index].first = lo;
    nodes[node_index].count = count;
    return node_index;
  }

  // Bin centroids along the widest axis and pick the cheapest split by the
  // surface-area heuristic; fall back to a median split if binning fails.
  struct Bin {
    Aabb box;
    int count = 0;
  };
  Bin bins[kNumBins];
  const double lo_c = centroid_box.lo[axis];
  const double scale = kNumBins / extent[axis];
  auto bin_of = [&](const Vec3& c) {
    return std::min(kNumBins - 1, std::max(0, int((c[axis] - lo_c) * scale)));
  };
  for (int i = lo; i < hi; ++i) {
    Bin& b = bins[bin_of(prims[i].centroid)];
    b.box.expand(prims[i].box);
    b.count += 1;
  }

  double right_area[kNumBins];
  Aabb sweep;
  int right_count = 0;
  for (int b = kNumBins - 1; b > 0; --b) {
    sweep.expand(bins[b].box);
    right_count += bins[b].count;
    right_area[b] = right_count > 0 ? sweep.surface_area() * right_count : 0.0;
  }
  double best_cost = std::numeric_limits<double>::infinity();
  int best_bin = -1;
  sweep = Aabb{};
  int left_count = 0;
  for (int b = 0; b + 1 < kNumBins; ++b) {
    sweep.expand(bins[b].box);
    left_count += bins[b].count;
    if (left_count == 0 || left_count == count) continue;
    const double cost = sweep.surface_area() * left_count + right_area[b + 1];
    if (cost < best_cost) {
      best_cost = cost;
      best_bin = b;
    }
  }

  int mid;
  if (best_bin < 0) {
    mid = lo + count / 2;
    std::nth_element(prims.begin() + lo, prims.begin() + mid, prims.begin() + hi,
                     [&](const BuildPrim& a, const BuildPrim& b) {
                       return a.centroid[axis] < b.centroid[axis];
                     });
  } else {
    auto it = std::partition(prims.begin() + lo, prims.begin() + hi,
                             [&](const BuildPrim& p) { return bin_of(p.centroid) <= best_bin; });
    mid = int(it - prims.begin());
    if (mid == lo || mid == hi) mid = lo + count / 2;  // degenerate partition
  }

  const int left = build_subtree(nodes, prims, lo, mid);
  const int right = build_subtree(nodes, prims, mid, hi);
  nodes[node_index].left = left;
  nodes[node_index].right = right;
  return node_index;
}

void build_tree(std::vector<BuildPrim>& prims, std::vector<BvhNode>& nodes,
                std::vector<int>& order) {
  nodes.clear();
  nodes.reserve(2 * prims.size());
  build_subtree(nodes, prims, 0, int(prims.size()));
  order.resize(prims.size());
  for (size_t i = 0; i < prims.size(); ++i) order[i] = prims[i].index;
}

// Slab test; fmin/fmax drop NaNs from 0 * inf so rays lying exactly in a
// box plane still traverse. Returns the entry parameter through *enter.
inline bool hit_aabb(const Aabb& box, const Vec3& o, const Vec3& inv_d, double tmin, double tmax,
                     double* enter) {
  double lo = tmin, hi = tmax;
  for (int a = 0; a < 3; ++a) {
    const double t0 = (box.lo[a] - o[a]) * inv_d[a];
    const double t1 = (box.hi[a] - o[a]) * inv_d[a];
    lo = std::fmax(lo, std::fmin(t0, t1));
    hi = std::fmin(hi, std::fmax(t0, t1));
  }
  *enter = lo;
  return lo <= hi;
}

inline Vec3 inverse_dir(const Vec3& d) { return {1.0 / d.x, 1.0 / d.y, 1.0 / d.z}; }

}  // namespace

bool intersect_triangle(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b,
                        const Vec3& c, double tmin, double tmax, double* t, double* u,
                        double* v) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = cross(d, e2);
  const double det = dot(e1, p);
  if (std::abs(det) < 1e-18) return false;
  const double inv = 1.0 / det;
  const Vec3 s = o - a;
  const double uu = dot(s, p) * inv;
  // Inclusive edge tolerance: shared edges register on both triangles rather
  // than opening a seam; negated comparisons also reject NaN.
  if (!(uu >= -1e-12 && uu <= 1.0 + 1e-12)) return false;
  const Vec3 q = cross(s, e1);
  const double vv = dot(d, q) * inv;
  if (!(vv >= -1e-12 && uu + vv <= 1.0 + 1e-12)) return false;
  const double tt = dot(e2, q) * inv;
  if (!(tt > tmin && tt < tmax)) return false;
  *t = tt;
  *u = std::max(uu, 0.0);
  *v = std::max(vv, 0.0);
  return true;
}

MeshBvh::MeshBvh(const TriangleMesh& mesh) : mesh_(&mesh) {
  if (mesh.triangles.empty()) throw std::invalid_argument("cannot build a BVH over no triangles");
  std::vector<BuildPrim> prims(mesh.triangles.size());
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& tri = mesh.triangles[i];
    Aabb box;
    box.expand(mesh.positions[tri[0]]);
    box.expand(mesh.positions[tri[1]]);
    box.expand(mesh.positions[tri[2]]);
    prims[i] = BuildPrim{box, box.center(), int(i)};
  }
  build_tree(prims, nodes_, prim_order_);
}

bool MeshBvh::traverse(const Vec3& o, const Vec3& d, double tmin, double tmax, bool any,
                       Hit* hit) const {
  if (nodes_.empty()) return false;
  const Vec3 inv_d = inverse_dir(d);
  int stack[kMaxStack];
  int top = 0;
  stack[top++] = 0;
  bool found = false;
  double best = tmax;

  while (top > 0) {
    const BvhNode& node = nodes_[stack[--top]];
    double enter;
    if (!hit_aabb(node.box, o, inv_d, tmin, best, &enter)) continue;
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int tri_index = prim_order_[i];
        const auto& tri = mesh_->triangles[tri_index];
        double t, u, v;
        if (!intersect_triangle(o, d, mesh_->positions[tri[0]], mesh_->positions[tri[1]],
                                mesh_->positions[tri[2]], tmin, best, &t, &u, &v))
          continue;
        found = true;
        if (any) return true;
        best = t;
        hit->t = t;
        hit->object_id = 0;
        hit->triangle = tri_index;
        hit->bary_u = u;
        hit->bary_v = v;
      }
    } else {
      // Visit the nearer child first so the far side can often be culled.
      double enter_l, enter_r;
      const bool hl = hit_aabb(nodes_[node.left].box, o, inv_d, tmin, best, &enter_l);
      const bool hr = hit_aabb(nodes_[node.right].box, o, inv_d, tmin, best, &enter_r);
      if (hl && hr) {
        const int near = enter_l <= enter_r ? node.left : node.right;
        const int far = enter_l <= enter_r ? node.right : node.left;
        stack[top++] = far;
        stack[top++] = near;
      } else if (hl) {
        stack[top++] = node.left;
      } else if (hr) {
        stack[top++] = node.right;
      }
    }
  }
  return found;
}

bool MeshBvh::intersect(const Vec3& o, const Vec3& d, double tmin, double tmax, Hit* hit) const {
  Hit local;
  if (!traverse(o, d, tmin, tmax, false, &local)) return false;
  const auto& tri = mesh_->triangles[local.triangle];
  const double w = 1.0 - local.bary_u - local.bary_v;
  local.position_obj = mesh_->positions[tri[0]] * w + mesh_->positions[tri[1]] * local.bary_u +
                       mesh_->positions[tri[2]] * local.bary_v;
  Vec3 n = mesh_->normals[tri[0]] * w + mesh_->normals[tri[1]] * local.bary_u +
           mesh_->normals[tri[2]] * local.bary_v;
  const double len = norm(n);
  if (len > 1e-20) {
    n = n / len;
  } else {
    const Vec3 g = cross(mesh_->positions[tri[1]] - mesh_->positions[tri[0]],
                         mesh_->positions[tri[2]] - mesh_->positions[tri[0]]);
    n = normalize(g);
  }
  local.normal = n;
  *hit = local;
  return true;
}

bool MeshBvh::any_hit(const Vec3& o, const Vec3& d, double tmin, double tmax) const {
  Hit ignored;
  return traverse(o, d, tmin, tmax, true, &ignored);
}

Aabb transform_aabb(const Aabb& box, const Transform& t) {
  Aabb out;
  for (int i = 0; i < 8; ++i) {
    const Vec3 corner{i & 1 ? box.hi.x : box.lo.x, i & 2 ? box.hi.y : box.lo.y,
                      i & 4 ? box.hi.z : box.lo.z};
    out.expand(t.apply(corner));
  }
  return out;
}

SceneBvh::SceneBvh(std::vector<BvhInstance> instances) : instances_(std::move(instances)) {
  if (instances_.empty()) throw std::invalid_argument("cannot build a BVH over no instances");
  world_boxes_.resize(instances_.size());
  std::vector<BuildPrim> prims(instances_.size());
  for (size_t i = 0; i < instances_.size(); ++i) {
    if (instances_[i].blas == nullptr || !(instances_[i].to_world.scale > 0.0))
      throw std::invalid_argument("instance needs a mesh BVH and a positive scale");
    world_boxes_[i] = transform_aabb(instances_[i].blas->bounds(), instances_[i].to_world);
    prims[i] = BuildPrim{world_boxes_[i], world_boxes_[i].center(), int(i)};
  }
  build_tree(prims, nodes_, prim_order_);
}

bool SceneBvh::traverse(const Vec3& o, const Vec3& d, double tmin, double tmax, bool any,
                        Hit* hit) const {
  if (nodes_.empty()) return false;
  const Vec3 inv_d = inverse_dir(d);
  int stack[kMaxStack];
  int top = 0;
  stack[top++] = 0;
  bool found = false;
  double best = tmax;

  while (top > 0) {
    const BvhNode& node = nodes_[stack[--top]];
    double enter;
    if (!hit_aabb(node.box, o, inv_d, tmin, best, &enter)) continue;
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const BvhInstance& inst = instances_[prim_order_[i]];
        // Map the ray into object space without renormalizing, so the hit t
        // matches the world-space parameterization exactly.
        const Vec3 o_obj = inst.to_world.invert(o);
        const Vec3 d_obj = inst.to_world.invert_dir(d) / inst.to_world.scale;
        Hit local;
        if (any) {
          if (inst.blas->any_hit(o_obj, d_obj, tmin, best)) return true;
          continue;
        }
        if (!inst.blas->intersect(o_obj, d_obj, tmin, best, &local)) continue;
        found = true;
        best = local.t;
        local.object_id = inst.object_id;
        local.normal = inst.to_world.apply_dir(local.normal);
        *hit = local;
      }
    } else {
      double enter_l, enter_r;
      const bool hl = hit_aabb(nodes_[node.left].box, o, inv_d, tmin, best, &enter_l);
      const bool hr = hit_aabb(nodes_[node.right].box, o, inv_d, tmin, best, &enter_r);
      if (hl && hr) {
        const int near = enter_l <= enter_r ? node.left : node.right;
        const int far = enter_l <= enter_r ? node.right : node.left;
        stack[top++] = far;
        stack[top++] = near;
      } else if (hl) {
        stack[top++] = node.left;
      } else if (hr) {
        stack[top++] = node.right;
      }
    }
  }
  return found;
}

bool SceneBvh::intersect(const Vec3& o, const Vec3& d, double tmin, double tmax, Hit* hit) const {
  return traverse(o, d, tmin, tmax, false, hit);
}

bool SceneBvh::any_hit(const Vec3& o, const Vec3& d, double tmin, double tmax) const {
  Hit ignored;
  return traverse(o, d, tmin, tmax, true, &ignored);
}

}  // namespace loftgen
