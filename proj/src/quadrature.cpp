// SPDX-License-Identifier: Apache-2.0
#include "edgefem/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace edgefem {

QuadratureRule gauss_legendre(int npoints) {
  if (npoints < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  QuadratureRule r;
  r.dim = 1;
  r.degree = 2 * npoints - 1;
  const int n = npoints;
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  for (int i = 0; i < n; ++i) {
    r.points.push_back(Vec3(0.5 * (x[i] + 1.0), 0.0, 0.0));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}

QuadratureRule segment_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("negative quadrature degree");
  QuadratureRule r = gauss_legendre(degree / 2 + 1);
  r.degree = degree;
  return r;
}

namespace {

int points_for(int degree) { return degree / 2 + 1; }

}  // namespace

QuadratureRule rule_for(CellKind kind, int degree) {
  if (degree < 0) throw std::invalid_argument("negative quadrature degree");
  if (kind.dim != 2 && kind.dim != 3) throw std::invalid_argument("unsupported cell kind");
  QuadratureRule r;
  r.dim = kind.dim;
  r.degree = degree;
  if (kind.family == Family::cube) {
    const QuadratureRule g = gauss_legendre(points_for(degree));
    const std::size_t n = g.size();
    const std::size_t nz = kind.dim == 3 ? n : 1;
    for (std::size_t k = 0; k < nz; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
          Vec3 p(g.points[i][0], g.points[j][0], kind.dim == 3 ? g.points[k][0] : 0.0);
          double w = g.weights[i] * g.weights[j] * (kind.dim == 3 ? g.weights[k] : 1.0);
          r.points.push_back(p);
          r.weights.push_back(w);
        }
    return r;
  }
  // Collapsed coordinates: x = u, y = v (1 - u), z = w (1 - u)(1 - v).
  if (kind.dim == 2) {
    const QuadratureRule gu = gauss_legendre(points_for(degree + 1));
    const QuadratureRule gv = gauss_legendre(points_for(degree));
    for (std::size_t i = 0; i < gu.size(); ++i)
      for (std::size_t j = 0; j < gv.size(); ++j) {
        const double u = gu.points[i][0], v = gv.points[j][0];
        r.points.push_back(Vec3(u, v * (1.0 - u), 0.0));
        r.weights.push_back(gu.weights[i] * gv.weights[j] * (1.0 - u));
      }
    return r;
  }
  const QuadratureRule gu = gauss_legendre(points_for(degree + 2));
  const QuadratureRule gv = gauss_legendre(points_for(degree + 1));
  const QuadratureRule gw = gauss_legendre(points_for(degree));
  for (std::size_t i = 0; i < gu.size(); ++i)
    for (std::size_t j = 0; j < gv.size(); ++j)
      for (std::size_t l = 0; l < gw.size(); ++l) {
        const double u = gu.points[i][0], v = gv.points[j][0], w = gw.points[l][0];
        r.points.push_back(Vec3(u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)));
        r.weights.push_back(gu.weights[i] * gv.weights[j] * gw.weights[l] * (1.0 - u) *
                            (1.0 - u) * (1.0 - v));
      }
  return r;
}

}  // namespace edgefem
