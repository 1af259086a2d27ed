// Copyright 2026 The Loftgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "nurbs.h"

#include <Eigen/Dense>
#include <cmath>

namespace loftgen {

// Least-squares fit of a closed periodic B-spline to a closed planar
// polyline. Parameters come from chord length, including the closing segment
// back to samples[0], so the seam is treated like any other span.
NurbsCurve fit_closed_curve(const std::vector<Vec2>& samples, int degree, int n_ctrl) {
  const int m = int(samples.size());
  if (degree < 1 || degree > kMaxNurbsDegree)
    throw std::invalid_argument("fit_closed_curve: degree must be in [1,3]");
  if (n_ctrl < degree + 1) throw std::invalid_argument("fit_closed_curve: too few control points");
  if (m < n_ctrl) throw FitError("fit_closed_curve: fewer samples than control points");

  // chord-length parameters over [0,1), wrapping back to the first sample
  std::vector<double> chord(m + 1, 0.0);
  for (int i = 0; i < m; ++i)
    chord[i + 1] = chord[i] + norm(samples[(i + 1) % m] - samples[i]);
  const double total = chord[m];
  if (!(total > 0.0)) throw FitError("fit_closed_curve: degenerate sample polyline");

  const KnotVector kv = KnotVector::periodic_uniform(n_ctrl, degree);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n_ctrl);
  Eigen::MatrixXd b(m, 2);
  double basis[kMaxNurbsDegree + 1];
  for (int i = 0; i < m; ++i) {
    const double t = kv.wrap(chord[i] / total);
    const int span = find_span(kv, t);
    basis_functions(kv, span, t, basis);
    for (int r = 0; r <= degree; ++r) {
      int j = (span - degree + r) % n_ctrl;
      if (j < 0) j += n_ctrl;
      A(i, j) += basis[r];
    }
    b(i, 0) = samples[i].x;
    b(i, 1) = samples[i].y;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < n_ctrl)
    throw FitError("fit_closed_curve: rank-deficient system; samples under-constrain the curve");
  const Eigen::MatrixXd x = qr.solve(b);

  std::vector<Vec3> cps(n_ctrl);
  for (int j = 0; j < n_ctrl; ++j) cps[j] = Vec3{x(j, 0), x(j, 1), 0.0};
  return NurbsCurve::periodic(std::move(cps), degree);
}

}  // namespace loftgen
