// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/space.hpp"

namespace edgefem {

// A vector field with its curl; 2D fields return the scalar curl in z.
struct AnalyticField {
  PhysicalField value;
  PhysicalField curl;
};

// Physical moments of a field for every unconstrained DOF, computed from one
// incident cell through the pullback; constrained entries follow their rows.
Vector interpolate_dofs(const Space& space, const PhysicalField& field);

FEFunction interpolate(std::shared_ptr<const Space> space, const PhysicalField& field);

// Moments of g on the Dirichlet DOFs; every other entry is zero.
Vector impose_dirichlet(const Space& space, const PhysicalField& g);

struct ErrorNorms {
  double l2 = 0.0;
  double curl = 0.0;
  double hcurl = 0.0;
  std::vector<double> cell_l2_sq;
  std::vector<double> cell_curl_sq;
};

// Cellwise quadrature of |u_h - u|^2 and |curl u_h - curl u|^2. A negative
// degree selects 2k + 2.
ErrorNorms error_norms(const FEFunction& uh, const AnalyticField& exact, int degree = -1);

}  // namespace edgefem
