// SPDX-License-Identifier: Apache-2.0
#include "edgefem/polynomial.hpp"

#include <doctest.h>

#include <Eigen/SVD>
#include <random>

using namespace edgefem;

namespace {

Vec3 random_point(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec3 x = Vec3::Zero();
  for (int a = 0; a < d; ++a) x[a] = u(rng);
  return x;
}

// Numerical rank of the basis sampled at many random points.
int sampled_rank(const VectorBasis& b, int d, std::mt19937_64& rng) {
  const int npts = 4 * static_cast<int>(b.size()) + 10;
  Matrix M(npts * d, b.size());
  for (int p = 0; p < npts; ++p) {
    const Vec3 x = random_point(rng, d);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Vec3 v = b.terms[j](x);
      for (int a = 0; a < d; ++a) M(p * d + a, j) = v[a];
    }
  }
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-10 * s[0]) ++r;
  return r;
}

}  // namespace

TEST_SUITE("polynomials") {

TEST_CASE("space dimensions") {
  CHECK(dim_P(2, 2) == 6);
  CHECK(dim_P(3, 3) == 20);
  CHECK(dim_homogeneous(2, 3) == 6);
  CHECK(dim_homogeneous(4, 2) == 5);
  for (int k = 1; k <= 6; ++k) {
    CHECK(dim_S(k, 2) == k);
    CHECK(dim_S(k, 3) == k * (k + 2));
    CHECK(static_cast<long>(monomial_P(k, 3).size()) == dim_P(k, 3));
    CHECK(monomial_Q({k, k}).size() == static_cast<std::size_t>((k + 1) * (k + 1)));
  }
  CHECK(monomial_Q({1, 2, 0}).size() == 6u);
}

TEST_CASE("multi-index ordering") {
  const auto q = q_indices({1, 2});
  REQUIRE(q.size() == 6u);
  CHECK(q[0] == MultiIndex{0, 0, 0});
  CHECK(q[1] == MultiIndex{0, 1, 0});
  CHECK(q[5] == MultiIndex{1, 2, 0});
  const auto p = p_indices(2, 2);
  REQUIRE(p.size() == 6u);
  for (const auto& a : p) CHECK(total_degree(a) <= 2);
}

TEST_CASE("arithmetic and derivatives") {
  const Polynomial x = Polynomial::linear(0, 1.0, 0.0);
  const Polynomial y = Polynomial::linear(1, 1.0, 0.0);
  const Polynomial p = x * x * y + Polynomial::constant(3.0) - y * 2.0;
  const Vec3 pt(0.3, -0.7, 0.2);
  CHECK(p(pt) == doctest::Approx(0.09 * -0.7 + 3.0 + 1.4));
  CHECK(p.degree() == 3);
  CHECK(p.degree_in(0) == 2);
  CHECK(p.derivative(0)(pt) == doctest::Approx(2 * 0.3 * -0.7));
  CHECK((p - p).is_zero());
  const Vec3 g = p.gradient(pt);
  const double h = 1e-6;
  for (int a = 0; a < 3; ++a) {
    Vec3 e = Vec3::Zero();
    e[a] = h;
    CHECK(g[a] == doctest::Approx((p(pt + e) - p(pt - e)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("curl of simple fields") {
  const Polynomial x1 = Polynomial::linear(0, 1.0, 0.0);
  const Polynomial x2 = Polynomial::linear(1, 1.0, 0.0);
  const Polynomial x3 = Polynomial::linear(2, 1.0, 0.0);
  VectorPolynomial rot;
  rot.comp = {-x2, x1, Polynomial{}};
  CHECK(rot.curl(Vec3(0.2, 0.4, 0.1)).isApprox(Vec3(0, 0, 2)));
  VectorPolynomial rot_x;
  rot_x.comp = {Polynomial{}, -x3, x2};
  CHECK(rot_x.curl(Vec3(0.5, 0.1, 0.9)).isApprox(Vec3(2, 0, 0)));
  const VectorPolynomial c = rot_x.curl();
  CHECK(c(Vec3(0.3, 0.3, 0.3)).isApprox(Vec3(2, 0, 0)));
}

TEST_CASE("curl agrees with finite differences") {
  std::mt19937_64 rng(7);
  const VectorBasis b = sk_basis(3, 3);
  const double h = 1e-6;
  for (const auto& v : b.terms) {
    const Vec3 x = random_point(rng, 3);
    Mat3 J;
    for (int a = 0; a < 3; ++a) {
      Vec3 e = Vec3::Zero();
      e[a] = h;
      J.col(a) = (v(x + e) - v(x - e)) / (2 * h);
    }
    const Vec3 fd(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
    CHECK((v.curl(x) - fd).norm() < 1e-7);
  }
}

TEST_CASE("S_k spanning sets") {
  std::mt19937_64 rng(11);
  CHECK(sk_basis(1, 3).size() == 3u);
  CHECK(sk_basis(2, 2).size() == 2u);
  CHECK(sk_basis(3, 3).size() == 15u);
  for (int d : {2, 3})
    for (int k = 1; k <= 5; ++k) {
      CAPTURE(d);
      CAPTURE(k);
      const VectorBasis b = sk_basis(k, d);
      CHECK(static_cast<long>(b.size()) == dim_S(k, d));
      for (const auto& v : b.terms) {
        CHECK(v.dot_position().is_zero());
        for (const auto& c : v.comp)
          if (!c.is_zero()) CHECK(c.degree() == k);
        if (d == 2) CHECK(v.comp[2].is_zero());
      }
      CHECK(sampled_rank(b, d, rng) == static_cast<int>(b.size()));
    }
  CHECK_THROWS_AS(sk_basis(0, 3), std::invalid_argument);
}

TEST_CASE("1D Lagrange bases") {
  const LagrangeBasis1D zero = lagrange_1d(0);
  REQUIRE(zero.nodes.size() == 1u);
  CHECK(zero.nodes[0] == doctest::Approx(0.5));
  CHECK(zero.polys[0](Vec3(0.9, 0, 0)) == doctest::Approx(1.0));
  for (int k = 1; k <= 6; ++k) {
    const LagrangeBasis1D b = lagrange_1d(k);
    REQUIRE(b.nodes.size() == static_cast<std::size_t>(k + 1));
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j)
        CHECK(b.polys[i](Vec3(b.nodes[j], 0, 0)) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    std::vector<double> value, deriv;
    for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      lagrange_1d_eval(k, x, value, deriv);
      double sum = 0.0, dsum = 0.0;
      for (int i = 0; i <= k; ++i) {
        CHECK(value[i] == doctest::Approx(b.polys[i](Vec3(x, 0, 0))));
        CHECK(deriv[i] == doctest::Approx(b.polys[i].derivative(0)(Vec3(x, 0, 0))).epsilon(1e-9));
        sum += value[i];
        dsum += deriv[i];
      }
      CHECK(sum == doctest::Approx(1.0));
      CHECK(std::abs(dsum) < 1e-9);
    }
  }
}

TEST_CASE("tensor Lagrange bases") {
  const std::vector<int> orders{2, 1, 3};
  const LagrangeTensor t = lagrange_tensor(orders);
  const auto idx = q_indices(orders);
  REQUIRE(t.polys.size() == 24u);
  for (std::size_t i = 0; i < t.polys.size(); ++i) {
    for (std::size_t j = 0; j < t.nodes.size(); ++j)
      CHECK(std::abs(t.polys[i](t.nodes[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
    const Vec3 x(0.31, 0.62, 0.17);
    CHECK(lagrange_tensor_value(orders, idx[i], x) == doctest::Approx(t.polys[i](x)));
  }
  const Vec3 x(0.4, 0.9, 0.25);
  double sum = 0.0;
  for (const auto& p : t.polys) sum += p(x);
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("eval_basis matches term evaluation") {
  const VectorBasis b = sk_basis(2, 3);
  const Vec3 x(0.2, 0.3, 0.4);
  const BasisValues v = eval_basis(b, x);
  REQUIRE(v.values.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(v.values[i].isApprox(b.terms[i](x)));
    CHECK((v.curls[i] - b.terms[i].curl(x)).norm() < 1e-14);
  }
}

}
