// SPDX-License-Identifier: Apache-2.0
// Oracles shared by the unit and acceptance tests.
#pragma once

#include "edgefem/amr.hpp"
#include "edgefem/assembly.hpp"
#include "edgefem/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace edgefem::testing {

// Reference coordinates of x in cell c when x lies in its closure.
inline std::optional<Vec3> reference_point(const Mesh& mesh, std::size_t c, const Vec3& x, double tol = 1e-10) {
  const Vec3 xh = mesh.map(c).apply_inverse(x);
  const int d = mesh.dim();
  if (mesh.kind().family == Family::cube) {
    for (int a = 0; a < d; ++a)
      if (xh[a] < -tol || xh[a] > 1 + tol) return std::nullopt;
  } else {
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      if (xh[a] < -tol) return std::nullopt;
      s += xh[a];
    }
    if (s > 1 + tol) return std::nullopt;
  }
  return xh;
}

// Outward unit normal of local facet f of cell c.
inline Vec3 facet_normal(const Mesh& mesh, std::size_t c, int f) {
  const CellKind kind = mesh.kind();
  const EntityRef& facet = entities(kind, kind.dim - 1)[f];
  const auto& cv = mesh.cell_vertices(c);
  const auto& V = mesh.vertices();
  Vec3 centroid = Vec3::Zero(), fc = Vec3::Zero();
  for (int v : cv) centroid += V[v];
  centroid /= static_cast<double>(cv.size());
  for (int v : facet.vertices) fc += V[cv[v]];
  fc /= static_cast<double>(facet.vertices.size());
  Vec3 n;
  if (kind.dim == 2) {
    const Vec3 t = V[cv[facet.vertices[1]]] - V[cv[facet.vertices[0]]];
    n = Vec3(t[1], -t[0], 0.0);
  } else {
    n = (V[cv[facet.vertices[1]]] - V[cv[facet.vertices[0]]])
            .cross(V[cv[facet.vertices[2]]] - V[cv[facet.vertices[0]]]);
  }
  n.normalize();
  if (n.dot(fc - centroid) < 0) n = -n;
  return n;
}

// Largest |n x (u_K - u_K')| over quadrature points of every interior facet,
// with K' the cell on the other side of the point (found geometrically, so
// hanging interfaces are covered).
inline double max_tangential_jump(const FEFunction& u, int degree = 6) {
  const Mesh& mesh = u.space().mesh();
  const CellKind kind = mesh.kind();
  double worst = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double size = std::cbrt(mesh.map(c).measure());
    for (int f = 0; f < num_entities(kind, kind.dim - 1); ++f) {
      const Vec3 n = facet_normal(mesh, c, f);
      const QuadratureRule rule = entity_rule(kind, entities(kind, kind.dim - 1)[f], degree);
      for (const Vec3& xh : rule.points) {
        const Vec3 x = mesh.map(c).apply(xh);
        const Vec3 probe = x + 1e-7 * size * n;
        for (std::size_t o = 0; o < mesh.num_cells(); ++o) {
          if (o == c || !reference_point(mesh, o, probe, 0.0)) continue;
          const auto xo = reference_point(mesh, o, x);
          if (!xo) continue;
          const Vec3 jump = u.value(c, xh) - u.value(o, *xo);
          worst = std::max(worst, n.cross(jump).norm());
          break;
        }
      }
    }
  }
  return worst;
}

// Random values on the unconstrained DOFs, constrained ones from their rows.
inline FEFunction random_member(std::shared_ptr<const Space> space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector free(space->num_free());
  for (auto& v : free) v = dist(rng);
  Vector dirichlet = Vector::Zero(space->num_dofs());
  for (int g = 0; g < space->num_dofs(); ++g)
    if (space->status(g) == DofStatus::dirichlet) dirichlet[g] = dist(rng);
  return finalize(space, free, dirichlet);
}

}  // namespace edgefem::testing
