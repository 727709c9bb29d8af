// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace edgefem {

// Points and vectors are always stored with three components. Two-dimensional
// objects leave the z component at zero; a 2D scalar curl lives in z.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

}  // namespace edgefem
