// SPDX-License-Identifier: Apache-2.0
#include "edgefem/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgefem {

namespace {
constexpr double pi = std::numbers::pi;
}

AnalyticField manufactured_2d() {
  AnalyticField u;
  u.value = [](const Vec3& x) {
    return Vec3(std::cos(pi * x[0]) * std::cos(pi * x[1]), std::sin(pi * x[0]) * std::sin(pi * x[1]), 0.0);
  };
  // d u2/dx - d u1/dy
  u.curl = [](const Vec3& x) {
    return Vec3(0.0, 0.0, 2 * pi * std::cos(pi * x[0]) * std::sin(pi * x[1]));
  };
  return u;
}

PhysicalField manufactured_2d_source() {
  return [u = manufactured_2d().value](const Vec3& x) -> Vec3 { return (2 * pi * pi + 1) * u(x); };
}

AnalyticField manufactured_3d() {
  AnalyticField u;
  u.value = [](const Vec3& x) {
    const double c0 = std::cos(pi * x[0]), c1 = std::cos(pi * x[1]), c2 = std::cos(pi * x[2]);
    const double s1 = std::sin(pi * x[1]), s2 = std::sin(pi * x[2]);
    return Vec3(c0 * c1, s1 * s2, c0 * c2);
  };
  u.curl = [](const Vec3& x) {
    const double c0 = std::cos(pi * x[0]), c2 = std::cos(pi * x[2]);
    const double s0 = std::sin(pi * x[0]), s1 = std::sin(pi * x[1]);
    return Vec3(-pi * s1 * c2, pi * s0 * c2, pi * c0 * s1);
  };
  return u;
}

PhysicalField manufactured_3d_source() {
  return [u = manufactured_3d().value](const Vec3& x) -> Vec3 {
    const double s0 = std::sin(pi * x[0]), s1 = std::sin(pi * x[1]), s2 = std::sin(pi * x[2]);
    const double c1 = std::cos(pi * x[1]), c2 = std::cos(pi * x[2]);
    return (pi * pi + 1) * u(x) + pi * pi * Vec3(s0 * s2, s0 * s1, c1 * c2);
  };
}

AnalyticField lshaped_field(int n) {
  if (n < 1) throw std::invalid_argument("lshaped exponent n must be >= 1");
  const double a = 2.0 * n / 3.0;
  AnalyticField u;
  u.value = [a](const Vec3& x) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return Vec3::Zero().eval();
    double theta = std::atan2(x[1], x[0]);
    if (theta < 0) theta += 2 * pi;
    const double m = a * std::pow(r, a - 1);
    return Vec3(m * std::sin((a - 1) * theta), m * std::cos((a - 1) * theta), 0.0);
  };
  u.curl = [](const Vec3&) { return Vec3::Zero().eval(); };
  return u;
}

AnalyticField fichera_field() {
  AnalyticField u;
  // grad of r^(2/3) sin(2t/3), t = acos(w), w = xyz / r
  u.value = [](const Vec3& x) {
    const double r = x.norm();
    if (r == 0.0) return Vec3::Zero().eval();
    const double w = x[0] * x[1] * x[2] / r;
    const double t = std::acos(w);
    const Vec3 grad_r = x / r;
    const Vec3 grad_w =
        Vec3(x[1] * x[2], x[0] * x[2], x[0] * x[1]) / r - (x[0] * x[1] * x[2] / (r * r * r)) * x;
    const Vec3 grad_t = -grad_w / std::sqrt(1.0 - w * w);
    const double k = 2.0 / 3.0;
    return (k * std::pow(r, k - 1) * std::sin(k * t) * grad_r +
            std::pow(r, k) * k * std::cos(k * t) * grad_t)
        .eval();
  };
  u.curl = [](const Vec3&) { return Vec3::Zero().eval(); };
  return u;
}

Problem make_problem(const std::string& id, int lshaped_n, int divisions) {
  Problem p;
  p.id = id;
  Domain& d = p.domain;
  if (id == "unit2d" || id == "unit3d") {
    d.dim = id == "unit2d" ? 2 : 3;
    const int n = divisions > 0 ? divisions : (d.dim == 2 ? 4 : 2);
    d.roots = {n, n, d.dim == 3 ? n : 1};
    d.root_size = 1.0 / n;
    p.exact = d.dim == 2 ? manufactured_2d() : manufactured_3d();
    p.source = d.dim == 2 ? manufactured_2d_source() : manufactured_3d_source();
    return p;
  }
  if (id == "lshaped" || id == "fichera") {
    d.dim = id == "lshaped" ? 2 : 3;
    const int n = divisions > 0 ? divisions : (d.dim == 2 ? 8 : 4);
    if (n % 2 != 0) throw std::invalid_argument("divisions must be even for " + id);
    d.roots = {n, n, d.dim == 3 ? n : 1};
    d.origin = d.dim == 2 ? Vec3(-1, -1, 0) : Vec3(-1, -1, -1);
    d.root_size = 2.0 / n;
    if (d.dim == 2) {
      d.keep = [](const Vec3& c) { return !(c[0] > 0 && c[1] < 0); };
      p.exact = lshaped_field(lshaped_n);
    } else {
      d.keep = [](const Vec3& c) { return !(c[0] < 0 && c[1] < 0 && c[2] < 0); };
      p.exact = fichera_field();
    }
    p.source = p.exact.value;
    return p;
  }
  throw std::invalid_argument("unknown problem '" + id + "'");
}

Mesh domain_mesh(const Domain& domain, int level) {
  std::array<int, 3> n = domain.roots;
  for (int a = 0; a < domain.dim; ++a) n[a] <<= level;
  Vec3 hi = domain.origin;
  for (int a = 0; a < domain.dim; ++a) hi[a] += domain.roots[a] * domain.root_size;
  return structured_hex_mesh(domain.dim, n, domain.origin, hi, domain.keep);
}

}  // namespace edgefem
