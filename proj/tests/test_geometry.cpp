// SPDX-License-Identifier: Apache-2.0
#include "edgefem/geometry.hpp"
#include "edgefem/reference_element.hpp"

#include <doctest.h>

#include <random>

using namespace edgefem;

namespace {

AffineMap random_map(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Mat3 A = Mat3::Identity();
    Vec3 b = Vec3::Zero();
    for (int i = 0; i < dim; ++i) {
      b[i] = u(rng);
      for (int j = 0; j < dim; ++j) A(i, j) += 0.5 * u(rng);
    }
    if (std::abs(A.topLeftCorner(dim, dim).determinant()) > 0.2) return AffineMap(dim, A, b);
  }
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("apply and inverse") {
  std::mt19937_64 rng(1);
  for (int dim : {2, 3}) {
    const AffineMap m = random_map(dim, rng);
    const Vec3 x(0.2, 0.5, dim == 3 ? 0.1 : 0.0);
    CHECK((m.apply_inverse(m.apply(x)) - x).norm() < 1e-13);
    if (dim == 2) {
      CHECK(m.apply(x)[2] == 0.0);
      CHECK(m.jacobian()(2, 2) == 1.0);
    }
  }
}

TEST_CASE("from_points maps the reference vertices") {
  const Vec3 o(1, 2, 3), a(2, 2, 3), b(1, 4, 3), c(1, 2, 6);
  const AffineMap m = AffineMap::from_points(3, o, {a, b, c});
  CHECK(m.apply(Vec3(1, 0, 0)).isApprox(a));
  CHECK(m.apply(Vec3(0, 0, 1)).isApprox(c));
  CHECK(m.det() == doctest::Approx(6.0));
  CHECK_THROWS_AS(AffineMap::from_points(3, o, {a, a, c}), ConstructionError);
  CHECK_THROWS_AS(AffineMap::from_points(2, o, {a}), std::invalid_argument);
}

TEST_CASE("covariant Piola transforms") {
  std::mt19937_64 rng(2);
  const AffineMap m = random_map(3, rng);
  const Vec3 v(0.3, -0.2, 1.1);
  CHECK((m.pull_value(m.push_value(v)) - v).norm() < 1e-13);
  // Tangential components are preserved: (A^{-T} v).(A t) == v.t
  const Vec3 t(0.4, 0.1, -0.7);
  CHECK(m.push_value(v).dot(m.jacobian() * t) == doctest::Approx(v.dot(t)));
}

TEST_CASE("scaling of values and curls") {
  const double h = 0.25;
  const AffineMap m3(3, h * Mat3::Identity(), Vec3::Zero());
  const Vec3 c(1.0, -2.0, 0.5);
  CHECK(m3.push_curl(c).isApprox(c / (h * h)));
  CHECK(m3.push_value(c).isApprox(c / h));
  const AffineMap m2(2, h * Mat3::Identity(), Vec3::Zero());
  CHECK(m2.push_curl(Vec3(0, 0, 3.0))[2] == doctest::Approx(3.0 / (h * h)));
}

TEST_CASE("compose_reference") {
  std::mt19937_64 rng(3);
  const AffineMap m = random_map(3, rng);
  const Vec3 shift(0.5, 0.0, 0.5);
  const AffineMap child = m.compose_reference(0.5, shift);
  const Vec3 x(0.1, 0.7, 0.3);
  CHECK((child.apply(x) - m.apply(0.5 * x + shift)).norm() < 1e-13);
  CHECK(child.det() == doctest::Approx(m.det() / 8));
}

TEST_CASE("edge moments agree along both paths") {
  // Physical: integral of u . t over the physical edge with the unit tangent.
  // Reference: the element's edge moment of the pulled-back field.
  std::mt19937_64 rng(4);
  const auto e = get_element(simplex3, 1);
  const PhysicalField u = [](const Vec3& x) {
    return Vec3(x[1] * x[1], x[0] * x[2], 0.3 * x[0] - x[1]);
  };
  for (int trial = 0; trial < 3; ++trial) {
    const AffineMap m = random_map(3, rng);
    const Vector ref = e->apply_moments(m.pull_field(u));
    for (const EntityRef& edge : entities(simplex3, 1)) {
      const Vec3 a = m.apply(reference_vertices(simplex3)[edge.vertices[0]]);
      const Vec3 b = m.apply(reference_vertices(simplex3)[edge.vertices[1]]);
      const Vec3 t = (b - a).normalized();
      const QuadratureRule g = gauss_legendre(8);
      double phys = 0.0;
      for (std::size_t q = 0; q < g.size(); ++q)
        phys += g.weights[q] * (b - a).norm() * u(a + g.points[q][0] * (b - a)).dot(t);
      CHECK(ref[e->dof_index(1, edge.local_index, 0)] == doctest::Approx(phys).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate maps are rejected") {
  Mat3 A = Mat3::Zero();
  A(0, 0) = 1.0;
  CHECK_THROWS_AS(AffineMap(3, A, Vec3::Zero()), ConstructionError);
  CHECK_THROWS_AS(AffineMap(4, Mat3::Identity(), Vec3::Zero()), std::invalid_argument);
}

}
