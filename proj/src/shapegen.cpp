// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "shapegen.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loftgen {

namespace {

// Profile control points whose radial coordinate falls below this are
// resampled, then clamped, so profiles never fold through their own center.
constexpr double kRadialFloor = 0.05;
constexpr int kMaxRetries = 8;

double dist_point_segment(const Vec2& q, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return norm(q - a);
  const double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
  return norm(q - (a + ab * t));
}

double dist_point_polyline(const Vec2& q, const std::vector<Vec2>& poly) {
  double best = norm(q - poly[0]);
  for (size_t i = 0; i + 1 < poly.size(); ++i)
    best = std::min(best, dist_point_segment(q, poly[i], poly[i + 1]));
  return best;
}

// Interior crossing of two segments; touches at endpoints don't count.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, Vec2* x) {
  const Vec2 r = b - a, s = d - c;
  const double denom = cross(r, s);
  if (std::abs(denom) < 1e-15) return false;
  const double t = cross(c - a, s) / denom;
  const double u = cross(c - a, r) / denom;
  if (t <= 1e-9 || t >= 1.0 - 1e-9 || u <= 1e-9 || u >= 1.0 - 1e-9) return false;
  if (x) *x = a + r * t;
  return true;
}

double polygon_signed_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

// Cuts local loops out of a closed polyline: whenever two non-adjacent edges
// cross, the arc with fewer points is dropped outright. The crossing point
// itself is not kept — it generally dips inside the offset tube, and the
// surviving points already satisfy the clearance guarantee.
void prune_self_intersections(std::vector<Vec2>& poly) {
  for (int pass = 0; pass < 100; ++pass) {
    const int n = int(poly.size());
    if (n < 4) return;
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      for (int j = i + 2; j < n && !found; ++j) {
        if (i == 0 && j == n - 1) continue;  // wrap-adjacent edges share a point
        if (!segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n], nullptr))
          continue;
        std::vector<Vec2> next;
        const int len_inner = j - i;  // points i+1 .. j
        if (len_inner <= n - len_inner) {
          next.assign(poly.begin(), poly.begin() + i + 1);
          next.insert(next.end(), poly.begin() + j + 1, poly.end());
        } else {
          next.assign(poly.begin() + i + 1, poly.begin() + j + 1);
        }
        poly = std::move(next);
        found = true;
      }
    }
    if (!found) return;
  }
}

}  // namespace

NurbsCurve gen_starfish_profile(Pcg32& rng, const ProfileSpec& spec) {
  if (spec.style != ProfileStyle::kStarfish)
    throw std::invalid_argument("gen_starfish_profile: spec.style must be Starfish");
  if (spec.n_points < spec.degree + 1)
    throw std::invalid_argument("gen_starfish_profile: n_points must be at least degree+1");
  if (spec.radial_sigma < 0.0 || spec.tangential_sigma < 0.0)
    throw std::invalid_argument("gen_starfish_profile: sigmas must be nonnegative");

  const int n = spec.n_points;
  std::vector<double> radial(n), tangential(n);
  bool ok = false;
  for (int attempt = 0; attempt < kMaxRetries && !ok; ++attempt) {
    ok = true;
    for (int k = 0; k < n; ++k) {
      radial[k] = 1.0 + rng.gaussian(0.0, spec.radial_sigma);
      tangential[k] = rng.gaussian(0.0, spec.tangential_sigma);
      if (radial[k] <= kRadialFloor) ok = false;
    }
  }

  std::vector<Vec3> cps(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * M_PI * k / n;
    const double c = std::cos(theta), s = std::sin(theta);
    const double r = std::max(radial[k], kRadialFloor);
    cps[k] = Vec3{r * c - tangential[k] * s, r * s + tangential[k] * c, 0.0};
  }
  return NurbsCurve::periodic(std::move(cps), spec.degree);
}

NurbsCurve gen_reptile_profile(Pcg32& rng, const ProfileSpec& spec) {
  if (spec.style != ProfileStyle::kReptile)
    throw std::invalid_argument("gen_reptile_profile: spec.style must be Reptile");
  if (!(spec.offset_radius > 0.0))
    throw std::invalid_argument("gen_reptile_profile: offset_radius must be positive");
  if (spec.walk_steps < 2)
    throw std::invalid_argument("gen_reptile_profile: walk needs at least 2 points");
  if (spec.n_points < spec.degree + 1)
    throw std::invalid_argument("gen_reptile_profile: n_points must be at least degree+1");

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<Vec3> walk(spec.walk_steps, Vec3{0, 0, 0});
    for (int i = 1; i < spec.walk_steps; ++i)
      walk[i] = walk[i - 1] + Vec3{rng.gaussian(0.0, spec.step_sigma),
                                   rng.gaussian(0.0, spec.step_sigma), 0.0};
    try {
      const NurbsCurve spine =
          NurbsCurve::clamped(std::move(walk), std::min(spec.degree, spec.walk_steps - 1));
      const std::vector<Vec2> outline = offset_outline(spine, spec.offset_radius, 256);
      return fit_closed_curve(outline, spec.degree, spec.n_points);
    } catch (const FitError&) {
      // degenerate walk or under-constrained fit: draw a fresh walk
    }
  }
  throw FitError("gen_reptile_profile: fit failed after repeated walk resampling");
}

std::vector<Vec2> offset_outline(const NurbsCurve& curve, double radius, int n_samples) {
  if (!(radius > 0.0)) throw std::invalid_argument("offset_outline: radius must be positive");
  if (n_samples < 8) throw std::invalid_argument("offset_outline: need at least 8 samples");
  if (curve.closed) throw std::invalid_argument("offset_outline: spine must be an open curve");

  const double t0 = curve.domain_begin(), t1 = curve.domain_end();
  std::vector<Vec2> pos(n_samples), dir(n_samples);
  double length = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    double t = t0 + (t1 - t0) * double(i) / (n_samples - 1);
    Vec3 p, d;
    curve.point_and_derivative(t, &p, &d);
    Vec2 d2{d.x, d.y};
    if (norm(d2) < 1e-12) {
      // stationary parameter (repeated control points): sample the tangent
      // a hair to the side, keeping the original position
      const double eps = (t1 - t0) * 1e-6;
      Vec3 pn, dn;
      curve.point_and_derivative(std::clamp(t + (i + 1 < n_samples ? eps : -eps), t0, t1), &pn,
                                 &dn);
      d2 = Vec2{dn.x, dn.y};
    }
    pos[i] = Vec2{p.x, p.y};
    dir[i] = norm(d2) > 1e-12 ? normalize(d2) : (i ? dir[i - 1] : Vec2{1, 0});
    if (i) length += norm(pos[i] - pos[i - 1]);
  }
  if (length < 1e-9) throw FitError("offset_outline: spine length is numerically zero");

  // left side forward, far cap, right side backward, closing cap
  const int cap = std::max(8, n_samples / 8);
  std::vector<Vec2> out;
  out.reserve(2 * size_t(n_samples) + 2 * size_t(cap));
  for (int i = 0; i < n_samples; ++i) out.push_back(pos[i] + perp(dir[i]) * radius);
  for (int k = 1; k < cap; ++k) {
    const double phi = M_PI * double(k) / cap;
    out.push_back(pos.back() +
                  (perp(dir.back()) * std::cos(phi) + dir.back() * std::sin(phi)) * radius);
  }
  for (int i = n_samples - 1; i >= 0; --i) out.push_back(pos[i] - perp(dir[i]) * radius);
  for (int k = 1; k < cap; ++k) {
    const double phi = M_PI * double(k) / cap;
    out.push_back(pos.front() -
                  (perp(dir.front()) * std::cos(phi) + dir.front() * std::sin(phi)) * radius);
  }

  // concave turns sweep offset points into the spine's exclusion tube;
  // drop them before stitching out any remaining crossings
  std::vector<Vec2> kept;
  kept.reserve(out.size());
  for (const Vec2& q : out)
    if (dist_point_polyline(q, pos) >= radius - 1e-6) kept.push_back(q);
  prune_self_intersections(kept);
  if (kept.size() < 3) throw FitError("offset_outline: outline collapsed during pruning");

  if (polygon_signed_area(kept) < 0.0) std::reverse(kept.begin(), kept.end());
  return kept;
}

NurbsCurve gen_stem(Pcg32& rng, const StemSpec& spec) {
  if (spec.n_steps < 2) throw std::invalid_argument("gen_stem: need at least 2 control points");
  if (!(spec.step_sigma > 0.0))
    throw std::invalid_argument("gen_stem: step_sigma must be positive");
  if (spec.persistence < 0.0)
    throw std::invalid_argument("gen_stem: persistence must be nonnegative");

  std::vector<Vec3> cps(spec.n_steps, Vec3{0, 0, 0});
  Vec3 dir = rng.unit_vector();
  for (int i = 1; i < spec.n_steps; ++i) {
    cps[i] = cps[i - 1] + dir * spec.step_sigma;
    if (i + 1 < spec.n_steps) {
      const Vec3 g{rng.gaussian(), rng.gaussian(), rng.gaussian()};
      const Vec3 blended = dir * spec.persistence + g;
      if (norm(blended) > 1e-12) dir = normalize(blended);
    }
  }
  return NurbsCurve::clamped(std::move(cps), std::min(spec.degree, spec.n_steps - 1));
}

std::vector<PathFrame> parallel_transport_frames(const NurbsCurve& stem, int n) {
  if (n < 2) throw std::invalid_argument("parallel_transport_frames: need at least 2 frames");
  const double t0 = stem.domain_begin(), t1 = stem.domain_end();

  std::vector<PathFrame> frames(n);
  Vec3 prev_tangent{0, 0, 1};
  for (int i = 0; i < n; ++i) {
    const double t = t0 + (t1 - t0) * double(i) / (n - 1);
    Vec3 p, d;
    stem.point_and_derivative(t, &p, &d);
    if (norm(d) < 1e-12) {
      // stationary parameter: borrow the tangent from a nudged parameter
      const double eps = (t1 - t0) * 1e-6;
      Vec3 pn;
      stem.point_and_derivative(std::clamp(t + (i + 1 < n ? eps : -eps), t0, t1), &pn, &d);
    }
    const Vec3 tangent = norm(d) > 1e-12 ? normalize(d) : prev_tangent;

    PathFrame& f = frames[i];
    f.position = p;
    f.tangent = tangent;
    if (i == 0) {
      const Vec3 up = std::abs(tangent.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
      f.normal = normalize(up - tangent * dot(up, tangent));
    } else {
      // minimal rotation taking the previous tangent onto this one
      const Vec3 axis = cross(prev_tangent, tangent);
      const double s = norm(axis);
      const double c = std::clamp(dot(prev_tangent, tangent), -1.0, 1.0);
      Vec3 carried = frames[i - 1].normal;
      if (s > 1e-12) carried = rotation_axis_angle(axis / s, std::atan2(s, c)) * carried;
      f.normal = normalize(carried - tangent * dot(carried, tangent));
    }
    f.binormal = cross(f.tangent, f.normal);
    prev_tangent = tangent;
  }
  return frames;
}

NurbsSurface loft(const std::vector<NurbsCurve>& profiles, const NurbsCurve& stem,
                  const LoftSpec& spec, Pcg32& rng) {
  if (profiles.empty()) throw std::invalid_argument("loft: need at least one profile");
  if (spec.n_profiles < 2) throw std::invalid_argument("loft: need at least two sections");
  if (!(spec.scale_min > 0.0) || spec.scale_max < spec.scale_min)
    throw std::invalid_argument("loft: scale range must be positive and ordered");
  for (const NurbsCurve& c : profiles)
    if (!c.closed) throw std::invalid_argument("loft: profiles must be closed curves");

  // all sections must share one control count and degree; refit stragglers
  int nu = 0, degree_u = 1;
  for (const NurbsCurve& c : profiles) {
    nu = std::max(nu, c.count());
    degree_u = std::max(degree_u, c.degree);
  }
  std::vector<NurbsCurve> sections;
  sections.reserve(profiles.size());
  for (const NurbsCurve& c : profiles) {
    if (c.count() == nu && c.degree == degree_u) {
      sections.push_back(c);
      continue;
    }
    const int m = std::max(4 * nu, 64);
    std::vector<Vec2> pts(m);
    for (int i = 0; i < m; ++i) {
      const Vec3 p = c.point(c.domain_begin() + c.period() * double(i) / m);
      pts[i] = Vec2{p.x, p.y};
    }
    sections.push_back(fit_closed_curve(pts, degree_u, nu));
  }

  const int nv = spec.n_profiles;
  const std::vector<PathFrame> frames = parallel_transport_frames(stem, nv);

  std::vector<Vec3> net(size_t(nu) * nv);
  std::vector<double> weights(net.size(), 1.0);
  for (int j = 0; j < nv; ++j) {
    const int pick = rng.uniform_int(0, int(sections.size()) - 1);
    const double scale = rng.uniform(spec.scale_min, spec.scale_max);
    const PathFrame& f = frames[j];
    const NurbsCurve& prof = sections[pick];
    for (int i = 0; i < nu; ++i) {
      const Vec3& cp = prof.control_points[i];
      net[i + size_t(nu) * j] = f.position + (f.normal * cp.x + f.binormal * cp.y) * scale;
      weights[i + size_t(nu) * j] = prof.weights[i];
    }
  }
  return NurbsSurface(nu, nv, std::move(net), std::move(weights), degree_u, std::min(3, nv - 1),
                      /*closed_u=*/true);
}

TriangleMesh tessellate(const NurbsSurface& surface, int res_u, int res_v) {
  if (res_u < 3) throw std::invalid_argument("tessellate: res_u must be at least 3");
  if (res_v < 2) throw std::invalid_argument("tessellate: res_v must be at least 2");
  if (!surface.closed_u) throw std::invalid_argument("tessellate: surface must be closed in u");

  TriangleMesh mesh;
  mesh.positions.resize(size_t(res_u) * res_v);
  mesh.normals.resize(mesh.positions.size());
  std::vector<char> degenerate(mesh.positions.size(), 0);

  const double u0 = surface.knots_u.domain_begin();
  const double du = surface.knots_u.period() / res_u;
  const double v0 = surface.knots_v.domain_begin(), v1 = surface.knots_v.domain_end();
  bool any_degenerate = false;
  for (int j = 0; j < res_v; ++j) {
    const double v = v0 + (v1 - v0) * double(j) / (res_v - 1);
    for (int i = 0; i < res_u; ++i) {
      const SurfaceFrame f = surface.derivatives(u0 + du * i, v);
      const size_t idx = size_t(i) + size_t(res_u) * j;
      mesh.positions[idx] = f.position;
      mesh.normals[idx] = f.normal;
      degenerate[idx] = f.degenerate;
      any_degenerate |= f.degenerate;
    }
  }

  // the u seam reuses column 0's indices, so the tube is watertight in u
  for (int j = 0; j + 1 < res_v; ++j)
    for (int i = 0; i < res_u; ++i) {
      const int i1 = (i + 1) % res_u;
      const int a = i + res_u * j, b = i1 + res_u * j;
      const int c = i + res_u * (j + 1), d = i1 + res_u * (j + 1);
      mesh.triangles.push_back({a, b, d});
      mesh.triangles.push_back({a, d, c});
    }

  if (any_degenerate) {
    // fall back to averaged face normals wherever the analytic one vanished
    TriangleMesh averaged = mesh;
    compute_vertex_normals(averaged);
    for (size_t i = 0; i < mesh.normals.size(); ++i)
      if (degenerate[i]) mesh.normals[i] = averaged.normals[i];
  }
  remove_degenerate_triangles(mesh);
  return mesh;
}

TriangleMesh displace_mesh(const TriangleMesh& mesh, const DisplaceSpec& spec) {
  if (spec.coarse_magnitude < 0.0 || spec.fine_magnitude < 0.0)
    throw std::invalid_argument("displace_mesh: magnitudes must be nonnegative");
  if (spec.subdivision_level < 0 || spec.subdivision_level > 6)
    throw std::invalid_argument("displace_mesh: subdivision_level out of range");

  TriangleMesh out = mesh;
  for (int level = 0; level < spec.subdivision_level; ++level) out = subdivide_midpoint(out);

  for (size_t i = 0; i < out.positions.size(); ++i) {
    const Vec3 p = out.positions[i];
    const double d = spec.coarse_magnitude * field_eval(spec.coarse_field, p) +
                     spec.fine_magnitude * field_eval(spec.fine_field, p);
    out.positions[i] = p + out.normals[i] * d;
  }
  remove_degenerate_triangles(out);
  compute_vertex_normals(out);
  return out;
}

}  // namespace loftgen
