// SPDX-License-Identifier: Apache-2.0
#include "edgefem/interpolation.hpp"

#include <cmath>

namespace edgefem {

namespace {

void set_constrained(const Space& space, Vector& v) {
  for (const auto& [g, row] : space.constraints().rows) {
    double s = 0.0;
    for (const auto& [master, c] : row) s += c * v[master];
    v[g] = s;
  }
}

// Fills the DOFs of every entity accepted by `use` with moments of the field.
template <class Pred>
void entity_moments(const Space& space, const PhysicalField& field, Vector& out, Pred use) {
  const Mesh& mesh = space.mesh();
  const ReferenceElement& element = space.element();
  const DofMap& dm = space.dofs();
  for (int m = 1; m <= mesh.dim(); ++m) {
    if (dm.dofs_per_entity[m] == 0) continue;
    for (std::size_t id = 0; id < mesh.num_entities(m); ++id) {
      const int first = dm.offset[m][id];
      if (!use(m, static_cast<int>(id), first)) continue;
      const auto [cell, local] = mesh.entity_owner(m, static_cast<int>(id));
      const Vector v = element.apply_entity_moments(m, local, mesh.map(cell).pull_field(field));
      for (Eigen::Index i = 0; i < v.size(); ++i) out[first + i] = v[i];
    }
  }
}

}  // namespace

Vector interpolate_dofs(const Space& space, const PhysicalField& field) {
  Vector out = Vector::Zero(space.num_dofs());
  entity_moments(space, field, out, [&](int, int, int first) {
    return space.status(first) != DofStatus::constrained;
  });
  set_constrained(space, out);
  return out;
}

FEFunction interpolate(std::shared_ptr<const Space> space, const PhysicalField& field) {
  Vector v = interpolate_dofs(*space, field);
  return FEFunction(std::move(space), std::move(v));
}

Vector impose_dirichlet(const Space& space, const PhysicalField& g) {
  Vector out = Vector::Zero(space.num_dofs());
  entity_moments(space, g, out, [&](int m, int, int first) {
    return m < space.mesh().dim() && space.status(first) == DofStatus::dirichlet;
  });
  return out;
}

ErrorNorms error_norms(const FEFunction& uh, const AnalyticField& exact, int degree) {
  const Space& space = uh.space();
  const Mesh& mesh = space.mesh();
  const ReferenceElement& element = space.element();
  if (degree < 0) degree = 2 * element.order() + 2;
  const QuadratureRule rule = rule_for(mesh.kind(), degree);
  const auto tab = element.tabulate(rule);
  ErrorNorms out;
  out.cell_l2_sq.assign(mesh.num_cells(), 0.0);
  out.cell_curl_sq.assign(mesh.num_cells(), 0.0);
  double l2 = 0.0, curl = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = mesh.map(c);
    const Vector coef = uh.cell_coefficients(c);
    double el2 = 0.0, ecurl = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3 x = map.apply(rule.points[q]);
      const double w = rule.weights[q] * map.measure();
      const Vec3 v = map.push_value(tab[q].values.transpose() * coef);
      const Vec3 cv = map.push_curl(tab[q].curls.transpose() * coef);
      el2 += w * (v - exact.value(x)).squaredNorm();
      Vec3 dc = cv - exact.curl(x);
      if (mesh.dim() == 2) dc = Vec3(0.0, 0.0, dc[2]);
      ecurl += w * dc.squaredNorm();
    }
    out.cell_l2_sq[c] = el2;
    out.cell_curl_sq[c] = ecurl;
    l2 += el2;
    curl += ecurl;
  }
  out.l2 = std::sqrt(l2);
  out.curl = std::sqrt(curl);
  out.hcurl = std::sqrt(l2 + curl);
  return out;
}

}  // namespace edgefem
