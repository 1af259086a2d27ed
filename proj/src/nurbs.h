// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <vector>

#include "vec.h"

namespace loftgen {

constexpr int kMaxNurbsDegree = 3;

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-decreasing knot sequence with its degree. Clamped vectors repeat the
// end knots degree+1 times; periodic vectors satisfy
// knots[i+n] - knots[i] == period for the wrap window (n = control count).
struct KnotVector {
  std::vector<double> knots;
  int degree = 1;
  bool periodic = false;

  static KnotVector clamped_uniform(int n_ctrl, int degree);
  static KnotVector periodic_uniform(int n_ctrl, int degree);

  double domain_begin() const { return knots[degree]; }
  double domain_end() const { return knots[knots.size() - degree - 1]; }
  double period() const { return domain_end() - domain_begin(); }

  // wraps t into [domain_begin, domain_end) for periodic vectors
  double wrap(double t) const;

  void validate(int n_ctrl) const;
};

// Index i with knots[i] <= t < knots[i+1]; the final non-empty span is
// inclusive at the domain end. Throws std::domain_error for t outside the
// parameter domain.
int find_span(const KnotVector& kv, double t);

// The degree+1 nonzero basis values at t, written to out[0..degree].
void basis_functions(const KnotVector& kv, int span, double t, double* out);
std::vector<double> basis_functions(const KnotVector& kv, double t);

// Nonzero basis values and their first derivatives at t.
void basis_derivatives(const KnotVector& kv, int span, double t, double* n_out, double* dn_out);

struct NurbsCurve {
  std::vector<Vec3> control_points;  // planar curves keep z = 0
  std::vector<double> weights;       // all > 0
  int degree = 1;
  KnotVector knots;
  bool closed = false;

  NurbsCurve() = default;
  NurbsCurve(std::vector<Vec3> cps, std::vector<double> w, int deg, KnotVector kv, bool closed_);

  // open clamped / closed periodic curves with unit weights
  static NurbsCurve clamped(std::vector<Vec3> cps, int degree);
  static NurbsCurve periodic(std::vector<Vec3> cps, int degree);

  int count() const { return int(control_points.size()); }
  double domain_begin() const { return knots.domain_begin(); }
  double domain_end() const { return knots.domain_end(); }
  double period() const { return knots.period(); }

  Vec3 point(double t) const;
  void point_and_derivative(double t, Vec3* p, Vec3* d) const;

  // polyline arc length from dense sampling (open curves)
  double sampled_length(int n_samples) const;
};

struct SurfaceFrame {
  Vec3 position;
  Vec3 tangent_u;
  Vec3 tangent_v;
  Vec3 normal;             // unit length unless degenerate
  bool degenerate = false;  // tangents parallel; caller substitutes a neighbor
};

// Tensor-product rational surface. Control net is stored row-major with u
// fastest: index(iu, iv) = iu + nu*iv. The u direction is periodic for all
// lofted shapes; v (the stem direction) is open.
struct NurbsSurface {
  int nu = 0, nv = 0;
  std::vector<Vec3> control_net;
  std::vector<double> weights;
  int degree_u = 1, degree_v = 1;
  KnotVector knots_u, knots_v;
  bool closed_u = true;

  NurbsSurface() = default;
  NurbsSurface(int nu_, int nv_, std::vector<Vec3> net, std::vector<double> w, int deg_u,
               int deg_v, bool closed_u_);

  const Vec3& cp(int iu, int iv) const { return control_net[iu + nu * iv]; }
  Vec3& cp(int iu, int iv) { return control_net[iu + nu * iv]; }
  double weight(int iu, int iv) const { return weights[iu + nu * iv]; }

  Vec3 point(double u, double v) const;
  SurfaceFrame derivatives(double u, double v) const;
};

// Least-squares periodic curve through an ordered closed outline, using
// chord-length parameter assignment and unit weights. Throws
// std::invalid_argument on bad arguments and FitError when the system is
// rank deficient.
NurbsCurve fit_closed_curve(const std::vector<Vec2>& samples, int degree, int n_ctrl);

}  // namespace loftgen
