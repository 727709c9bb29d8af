// SPDX-License-Identifier: Apache-2.0
#include "edgefem/geometry.hpp"

#include <cmath>

namespace edgefem {

AffineMap::AffineMap(int dim, const Mat3& A, const Vec3& b) : dim_(dim), A_(A), b_(b) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("affine map dimension must be 2 or 3");
  if (dim == 2) {
    A_.row(2).setZero();
    A_.col(2).setZero();
    A_(2, 2) = 1.0;
    b_[2] = 0.0;
  }
  det_ = A_.determinant();
  const double scale = A_.cwiseAbs().maxCoeff();
  if (!(std::abs(det_) > 1e-14 * std::pow(scale, dim)))
    throw ConstructionError("degenerate affine map (det " + std::to_string(det_) + ")");
  invA_ = A_.inverse();
  invAT_ = invA_.transpose();
}

AffineMap AffineMap::from_points(int dim, const Vec3& origin, const std::vector<Vec3>& axis_ends) {
  if (static_cast<int>(axis_ends.size()) != dim)
    throw std::invalid_argument("from_points needs one point per axis");
  Mat3 A = Mat3::Zero();
  for (int a = 0; a < dim; ++a) A.col(a) = axis_ends[a] - origin;
  return AffineMap(dim, A, origin);
}

std::function<Vec3(const Vec3&)> AffineMap::pull_field(PhysicalField u) const {
  return [map = *this, u = std::move(u)](const Vec3& xhat) {
    return map.pull_value(u(map.apply(xhat)));
  };
}

AffineMap AffineMap::compose_reference(double scale, const Vec3& shift) const {
  return AffineMap(dim_, A_ * scale, A_ * shift + b_);
}

}  // namespace edgefem
