#include <algorithm>
#include <cmath>

#include "heis/lemma_lab.hpp"

namespace heis {

TripleSolution triple_point_solve(const HPoint& v1, const HPoint& v2, const HPoint& v3) {
  const HPoint* v[3] = {&v1, &v2, &v3};
  TripleSolution sol;
  double scale = 1.0;
  for (const HPoint* p : v) scale = std::max({scale, std::abs(p->x()), std::abs(p->y())});
  sol.scale = scale;

  // rows (-2 y_i, 2 x_i, 1) . (x, y, t) = tau_i
  double A[3][4];
  for (int i = 0; i < 3; ++i) {
    A[i][0] = -2.0 * v[i]->y();
    A[i][1] = 2.0 * v[i]->x();
    A[i][2] = 1.0;
    A[i][3] = v[i]->t();
  }
  sol.det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
            A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  sol.wedge_det = 4.0 * (wedge(v1.z(), v2.z()) + wedge(v2.z(), v3.z()) + wedge(v3.z(), v1.z()));
  if (std::abs(sol.det) < 1e-10 * scale * scale * scale) {
    sol.degenerate = true;
    return sol;
  }

  double M[3][4];
  std::copy(&A[0][0], &A[0][0] + 12, &M[0][0]);
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    for (int j = 0; j < 4; ++j) std::swap(M[col][j], M[piv][j]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = M[r][col] / M[col][col];
      for (int j = col; j < 4; ++j) M[r][j] -= f * M[col][j];
    }
  }
  auto back_substitute = [&](const double (*U)[4], const double* b, double* x) {
    for (int i = 2; i >= 0; --i) {
      double s = b[i];
      for (int j = i + 1; j < 3; ++j) s -= U[i][j] * x[j];
      x[i] = s / U[i][i];
    }
  };
  // the elimination above applied the row operations to the rhs column
  double rhs[3] = {M[0][3], M[1][3], M[2][3]};
  double x[3];
  back_substitute(M, rhs, x);

  // one step of iterative refinement against the original system
  auto residuals = [&](const double* xs, double* out) {
    for (int i = 0; i < 3; ++i) out[i] = A[i][3] - (A[i][0] * xs[0] + A[i][1] * xs[1] + A[i][2] * xs[2]);
  };
  double res[3];
  residuals(x, res);
  {
    // redo the elimination on the residual vector
    double R[3][4];
    std::copy(&A[0][0], &A[0][0] + 12, &R[0][0]);
    for (int i = 0; i < 3; ++i) R[i][3] = res[i];
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r) {
        if (std::abs(R[r][col]) > std::abs(R[piv][col])) piv = r;
      }
      for (int j = 0; j < 4; ++j) std::swap(R[col][j], R[piv][j]);
      for (int r = col + 1; r < 3; ++r) {
        const double f = R[r][col] / R[col][col];
        for (int j = col; j < 4; ++j) R[r][j] -= f * R[col][j];
      }
    }
    double b[3] = {R[0][3], R[1][3], R[2][3]};
    double dx[3];
    back_substitute(R, b, dx);
    for (int i = 0; i < 3; ++i) x[i] += dx[i];
  }

  sol.point = HPoint(x[0], x[1], x[2]);
  for (const HPoint* p : v) {
    sol.residual = std::max(sol.residual, std::abs(sol.point.t() - p->t() - 2.0 * wedge(sol.point.z(), p->z())));
  }
  return sol;
}

GapCheck second_component_gap(const HPoint& v, const HPoint& w, const Angle& theta, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("second_component_gap: delta must be positive");
  GapCheck out;
  out.gap = std::abs(v.t() - w.t() - 2.0 * wedge(v.z(), w.z()));
  out.projected_distance = chart_distance(projected_chart(theta, v), projected_chart(theta, w));
  out.within = out.projected_distance <= delta;
  out.implied_ok = !out.within || out.gap <= kGapConstant * delta;
  return out;
}

}  // namespace heis
