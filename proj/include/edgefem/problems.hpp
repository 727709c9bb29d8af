// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/interpolation.hpp"
#include "edgefem/mesh.hpp"

#include <array>
#include <string>

namespace edgefem {

// Smooth fields on the unit box with their source for curl curl u + u = f.
AnalyticField manufactured_2d();
PhysicalField manufactured_2d_source();
AnalyticField manufactured_3d();
PhysicalField manufactured_3d_source();

// Gradient fields, so curl u = 0 and f = u. The L-shaped angle is taken in
// [0, 2 pi) which is continuous on the domain.
AnalyticField lshaped_field(int n);
AnalyticField fichera_field();

// Root grid of a benchmark domain: roots[i] cells of side root_size per axis
// starting at origin; `keep` drops the cells of the removed quadrant/octant.
struct Domain {
  int dim = 2;
  std::array<int, 3> roots{1, 1, 1};
  Vec3 origin = Vec3::Zero();
  double root_size = 1.0;
  CellFilter keep;
};

struct Problem {
  std::string id;  // unit2d, unit3d, lshaped, fichera
  AnalyticField exact;
  PhysicalField source;
  Domain domain;
};

// `divisions` is the number of root cells per axis (<= 0 picks the default:
// 4 for unit2d, 2 for unit3d, 8 for lshaped, 4 for fichera).
Problem make_problem(const std::string& id, int lshaped_n = 1, int divisions = 0);

// Structured mesh of the domain refined `level` times uniformly.
Mesh domain_mesh(const Domain& domain, int level);

}  // namespace edgefem
