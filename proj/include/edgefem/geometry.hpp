// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/types.hpp"

#include <functional>

namespace edgefem {

using PhysicalField = std::function<Vec3(const Vec3&)>;

// x = A x_hat + b. In 2D the matrix is embedded in 3x3 with A(2,2) = 1 so
// that every transform below works on three-component vectors.
class AffineMap {
 public:
  AffineMap() : AffineMap(2, Mat3::Identity(), Vec3::Zero()) {}
  AffineMap(int dim, const Mat3& A, const Vec3& b);

  // Map of the reference simplex/cube given the images of the origin and of
  // the unit vectors.
  static AffineMap from_points(int dim, const Vec3& origin, const std::vector<Vec3>& axis_ends);

  int dim() const { return dim_; }
  const Mat3& jacobian() const { return A_; }
  const Mat3& inverse() const { return invA_; }
  const Vec3& offset() const { return b_; }
  double det() const { return det_; }
  double measure() const { return std::abs(det_); }

  Vec3 apply(const Vec3& xhat) const { return A_ * xhat + b_; }
  Vec3 apply_inverse(const Vec3& x) const { return invA_ * (x - b_); }

  // Covariant Piola transform of a value: A^{-T} v_hat.
  Vec3 push_value(const Vec3& vhat) const { return invAT_ * vhat; }
  // Matching curl transform: (1/det) A c_hat; the 2D scalar curl sits in z.
  Vec3 push_curl(const Vec3& chat) const { return A_ * chat / det_; }
  // Inverse covariant Piola: A^T u.
  Vec3 pull_value(const Vec3& u) const { return A_.transpose() * u; }
  // x_hat -> A^T u(Phi(x_hat)).
  std::function<Vec3(const Vec3&)> pull_field(PhysicalField u) const;

  // The map composed with x_hat -> scale * x_hat + shift on the reference side.
  AffineMap compose_reference(double scale, const Vec3& shift) const;

 private:
  int dim_;
  Mat3 A_, invA_, invAT_;
  Vec3 b_;
  double det_;
};

}  // namespace edgefem
