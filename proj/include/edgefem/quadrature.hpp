// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/topology.hpp"

#include <vector>

namespace edgefem {

struct QuadratureRule {
  int dim = 0;
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

// n-point Gauss-Legendre rule on [0, 1].
QuadratureRule gauss_legendre(int npoints);

// Rule on [0, 1] exact up to the given degree.
QuadratureRule segment_rule(int degree);

// Rule on the reference cell. Cubes use tensor Gauss rules exact per
// direction; simplices collapse a tensor rule (Duffy) and are exact for total
// degree.
QuadratureRule rule_for(CellKind kind, int degree);

}  // namespace edgefem
