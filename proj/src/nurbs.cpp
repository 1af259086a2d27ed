// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "nurbs.h"

#include <cmath>

namespace loftgen {

namespace {

constexpr double kDomainEps = 1e-12;

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxNurbsDegree)
    throw std::invalid_argument("nurbs: degree must be in [1,3]");
}

// maps an unrolled basis index to a control point index
inline int wrap_index(int j, int n, bool periodic) {
  if (!periodic) return j;
  j %= n;
  return j < 0 ? j + n : j;
}

}  // namespace

KnotVector KnotVector::clamped_uniform(int n_ctrl, int degree) {
  KnotVector kv;
  kv.degree = degree;
  kv.periodic = false;
  const int spans = n_ctrl - degree;  // interior spans
  kv.knots.resize(n_ctrl + degree + 1);
  for (int i = 0; i <= degree; ++i) {
    kv.knots[i] = 0.0;
    kv.knots[n_ctrl + degree - i] = 1.0;
  }
  for (int i = 1; i < spans; ++i) kv.knots[degree + i] = double(i) / spans;
  return kv;
}

KnotVector KnotVector::periodic_uniform(int n_ctrl, int degree) {
  KnotVector kv;
  kv.degree = degree;
  kv.periodic = true;
  kv.knots.resize(n_ctrl + 2 * degree + 1);
  for (int k = 0; k < int(kv.knots.size()); ++k)
    kv.knots[k] = double(k - degree) / n_ctrl;
  return kv;
}

double KnotVector::wrap(double t) const {
  const double begin = domain_begin(), p = period();
  double s = std::fmod(t - begin, p);
  if (s < 0.0) s += p;
  return begin + s;
}

void KnotVector::validate(int n_ctrl) const {
  check_degree(degree);
  const size_t expected = periodic ? size_t(n_ctrl + 2 * degree + 1) : size_t(n_ctrl + degree + 1);
  if (knots.size() != expected) throw std::invalid_argument("nurbs: knot count mismatch");
  for (size_t i = 1; i < knots.size(); ++i)
    if (knots[i] < knots[i - 1]) throw std::invalid_argument("nurbs: knots must be non-decreasing");
  if (!periodic) {
    for (int i = 0; i < degree; ++i)
      if (knots[i] != knots[degree] || knots[knots.size() - 1 - i] != knots[knots.size() - 1 - degree])
        throw std::invalid_argument("nurbs: clamped knots must repeat degree+1 times");
  } else {
    const double p = period();
    for (size_t i = 0; i + n_ctrl < knots.size(); ++i)
      if (std::abs(knots[i + n_ctrl] - knots[i] - p) > 1e-9 * std::max(1.0, std::abs(p)))
        throw std::invalid_argument("nurbs: periodic knots violate the wrap condition");
  }
}

int find_span(const KnotVector& kv, double t) {
  const int p = kv.degree;
  const int last = int(kv.knots.size()) - p - 2;  // last valid span index
  const double begin = kv.domain_begin(), end = kv.domain_end();
  if (t < begin - kDomainEps || t > end + kDomainEps)
    throw std::domain_error("nurbs: parameter outside knot domain");
  if (t >= end) {
    int i = last;
    while (i > p && kv.knots[i] == kv.knots[i + 1]) --i;
    return i;
  }
  if (t <= begin) return p;
  int lo = p, hi = last + 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (t < kv.knots[mid]) ? hi = mid : lo = mid;
  }
  return lo;
}

// Cox-de Boor recursion in the iterative triangular form.
void basis_functions(const KnotVector& kv, int span, double t, double* out) {
  const int p = kv.degree;
  double left[kMaxNurbsDegree + 1], right[kMaxNurbsDegree + 1];
  out[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - kv.knots[span + 1 - j];
    right[j] = kv.knots[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
}

std::vector<double> basis_functions(const KnotVector& kv, double t) {
  std::vector<double> out(kv.degree + 1);
  basis_functions(kv, find_span(kv, t), t, out.data());
  return out;
}

void basis_derivatives(const KnotVector& kv, int span, double t, double* n_out, double* dn_out) {
  const int p = kv.degree;
  basis_functions(kv, span, t, n_out);
  if (p == 0) {
    dn_out[0] = 0.0;
    return;
  }
  // degree p-1 basis at the same span: nonzero functions are indices
  // span-p+1 .. span
  KnotVector lower = kv;
  lower.degree = p - 1;
  double nm[kMaxNurbsDegree + 1] = {1.0, 0.0, 0.0, 0.0};
  if (p - 1 > 0) basis_functions(lower, span, t, nm);
  for (int r = 0; r <= p; ++r) {
    const int j = span - p + r;
    double a = 0.0, b = 0.0;
    if (r >= 1) {
      double denom = kv.knots[j + p] - kv.knots[j];
      if (denom > 0.0) a = nm[r - 1] / denom;
    }
    if (r <= p - 1) {
      double denom = kv.knots[j + p + 1] - kv.knots[j + 1];
      if (denom > 0.0) b = nm[r] / denom;
    }
    dn_out[r] = p * (a - b);
  }
}

NurbsCurve::NurbsCurve(std::vector<Vec3> cps, std::vector<double> w, int deg, KnotVector kv,
                       bool closed_)
    : control_points(std::move(cps)), weights(std::move(w)), degree(deg), knots(std::move(kv)),
      closed(closed_) {
  check_degree(degree);
  if (int(control_points.size()) < degree + 1)
    throw std::invalid_argument("nurbs: need at least degree+1 control points");
  if (weights.size() != control_points.size())
    throw std::invalid_argument("nurbs: weight count mismatch");
  for (double wi : weights)
    if (!(wi > 0.0)) throw std::invalid_argument("nurbs: weights must be positive");
  if (closed != knots.periodic)
    throw std::invalid_argument("nurbs: closed curves require periodic knots");
  if (knots.degree != degree) throw std::invalid_argument("nurbs: knot degree mismatch");
  knots.validate(count());
}

NurbsCurve NurbsCurve::clamped(std::vector<Vec3> cps, int degree) {
  const int n = int(cps.size());
  std::vector<double> w(n, 1.0);
  return NurbsCurve(std::move(cps), std::move(w), degree, KnotVector::clamped_uniform(n, degree),
                    false);
}

NurbsCurve NurbsCurve::periodic(std::vector<Vec3> cps, int degree) {
  const int n = int(cps.size());
  std::vector<double> w(n, 1.0);
  return NurbsCurve(std::move(cps), std::move(w), degree, KnotVector::periodic_uniform(n, degree),
                    true);
}

Vec3 NurbsCurve::point(double t) const {
  if (closed) t = knots.wrap(t);
  const int span = find_span(knots, t);
  double basis[kMaxNurbsDegree + 1];
  basis_functions(knots, span, t, basis);
  Vec3 num;
  double den = 0.0;
  for (int r = 0; r <= degree; ++r) {
    const int i = wrap_index(span - degree + r, count(), closed);
    const double bw = basis[r] * weights[i];
    num += control_points[i] * bw;
    den += bw;
  }
  return num / den;
}

void NurbsCurve::point_and_derivative(double t, Vec3* p, Vec3* d) const {
  if (closed) t = knots.wrap(t);
  const int span = find_span(knots, t);
  double basis[kMaxNurbsDegree + 1], dbasis[kMaxNurbsDegree + 1];
  basis_derivatives(knots, span, t, basis, dbasis);
  Vec3 a, da;
  double w = 0.0, dw = 0.0;
  for (int r = 0; r <= degree; ++r) {
    const int i = wrap_index(span - degree + r, count(), closed);
    a += control_points[i] * (basis[r] * weights[i]);
    da += control_points[i] * (dbasis[r] * weights[i]);
    w += basis[r] * weights[i];
    dw += dbasis[r] * weights[i];
  }
  const Vec3 pos = a / w;
  if (p) *p = pos;
  if (d) *d = (da - pos * dw) / w;
}

double NurbsCurve::sampled_length(int n_samples) const {
  double len = 0.0;
  Vec3 prev = point(domain_begin());
  for (int i = 1; i <= n_samples; ++i) {
    double t = domain_begin() + period() * double(i) / n_samples;
    Vec3 cur = point(t);
    len += norm(cur - prev);
    prev = cur;
  }
  return len;
}

NurbsSurface::NurbsSurface(int nu_, int nv_, std::vector<Vec3> net, std::vector<double> w,
                           int deg_u, int deg_v, bool closed_u_)
    : nu(nu_), nv(nv_), control_net(std::move(net)), weights(std::move(w)), degree_u(deg_u),
      degree_v(deg_v), closed_u(closed_u_) {
  check_degree(degree_u);
  check_degree(degree_v);
  if (nu < degree_u + 1 || nv < degree_v + 1)
    throw std::invalid_argument("nurbs: control net too small for degree");
  if (control_net.size() != size_t(nu) * nv || weights.size() != control_net.size())
    throw std::invalid_argument("nurbs: control net size mismatch");
  for (double wi : weights)
    if (!(wi > 0.0)) throw std::invalid_argument("nurbs: weights must be positive");
  knots_u = closed_u ? KnotVector::periodic_uniform(nu, degree_u)
                     : KnotVector::clamped_uniform(nu, degree_u);
  knots_v = KnotVector::clamped_uniform(nv, degree_v);
}

Vec3 NurbsSurface::point(double u, double v) const {
  if (closed_u) u = knots_u.wrap(u);
  const int su = find_span(knots_u, u), sv = find_span(knots_v, v);
  double bu[kMaxNurbsDegree + 1], bv[kMaxNurbsDegree + 1];
  basis_functions(knots_u, su, u, bu);
  basis_functions(knots_v, sv, v, bv);
  Vec3 num;
  double den = 0.0;
  for (int s = 0; s <= degree_v; ++s) {
    const int iv = sv - degree_v + s;
    for (int r = 0; r <= degree_u; ++r) {
      const int iu = wrap_index(su - degree_u + r, nu, closed_u);
      const double bw = bu[r] * bv[s] * weight(iu, iv);
      num += cp(iu, iv) * bw;
      den += bw;
    }
  }
  return num / den;
}

SurfaceFrame NurbsSurface::derivatives(double u, double v) const {
  if (closed_u) u = knots_u.wrap(u);
  const int su = find_span(knots_u, u), sv = find_span(knots_v, v);
  double bu[kMaxNurbsDegree + 1], dbu[kMaxNurbsDegree + 1];
  double bv[kMaxNurbsDegree + 1], dbv[kMaxNurbsDegree + 1];
  basis_derivatives(knots_u, su, u, bu, dbu);
  basis_derivatives(knots_v, sv, v, bv, dbv);

  Vec3 a, au, av;
  double w = 0.0, wu = 0.0, wv = 0.0;
  for (int s = 0; s <= degree_v; ++s) {
    const int iv = sv - degree_v + s;
    for (int r = 0; r <= degree_u; ++r) {
      const int iu = wrap_index(su - degree_u + r, nu, closed_u);
      const double wij = weight(iu, iv);
      const Vec3& p = cp(iu, iv);
      a += p * (bu[r] * bv[s] * wij);
      au += p * (dbu[r] * bv[s] * wij);
      av += p * (bu[r] * dbv[s] * wij);
      w += bu[r] * bv[s] * wij;
      wu += dbu[r] * bv[s] * wij;
      wv += bu[r] * dbv[s] * wij;
    }
  }

  SurfaceFrame f;
  f.position = a / w;
  // quotient rule over the homogeneous components
  f.tangent_u = (au - f.position * wu) / w;
  f.tangent_v = (av - f.position * wv) / w;
  Vec3 n = cross(f.tangent_u, f.tangent_v);
  const double len = norm(n);
  const double scale = norm(f.tangent_u) * norm(f.tangent_v);
  if (len <= 1e-12 * std::max(scale, 1e-300)) {
    f.degenerate = true;
    f.normal = Vec3{0, 0, 0};
  } else {
    f.normal = n / len;
  }
  return f;
}

}  // namespace loftgen
