// SPDX-License-Identifier: Apache-2.0
#include "edgefem/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace edgefem {

namespace {

constexpr int kMaxPower = 32;

struct Powers {
  std::array<std::array<double, kMaxPower>, 3> p;
  Powers(const Vec3& x, int max_degree) {
    if (max_degree >= kMaxPower) throw std::invalid_argument("polynomial degree too high");
    for (int a = 0; a < 3; ++a) {
      p[a][0] = 1.0;
      for (int e = 1; e <= max_degree; ++e) p[a][e] = p[a][e - 1] * x[a];
    }
  }
  double operator()(const MultiIndex& e) const { return p[0][e[0]] * p[1][e[1]] * p[2][e[2]]; }
};

}  // namespace

Polynomial Polynomial::constant(double c) { return monomial({0, 0, 0}, c); }

Polynomial Polynomial::monomial(const MultiIndex& exponents, double coefficient) {
  Polynomial p;
  if (coefficient != 0.0) p.terms_.emplace_back(exponents, coefficient);
  return p;
}

Polynomial Polynomial::linear(int axis, double slope, double offset) {
  MultiIndex e{0, 0, 0};
  e[axis] = 1;
  return monomial(e, slope) + constant(offset);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

int Polynomial::degree_in(int axis) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[axis]);
  return d;
}

bool Polynomial::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const Term& t) { return std::abs(t.second) <= tol; });
}

double Polynomial::operator()(const Vec3& x) const {
  if (terms_.empty()) return 0.0;
  Powers pw(x, degree());
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * pw(e);
  return s;
}

Vec3 Polynomial::gradient(const Vec3& x) const {
  Vec3 g = Vec3::Zero();
  if (terms_.empty()) return g;
  Powers pw(x, degree());
  for (const auto& [e, c] : terms_) {
    for (int a = 0; a < 3; ++a) {
      if (e[a] == 0) continue;
      MultiIndex d = e;
      d[a] -= 1;
      g[a] += c * e[a] * pw(d);
    }
  }
  return g;
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    MultiIndex d = e;
    d[axis] -= 1;
    out.terms_.emplace_back(d, c * e[axis]);
  }
  out.compress();
  return out;
}

void Polynomial::add_term(const MultiIndex& e, double c) { terms_.emplace_back(e, c); }

void Polynomial::compress() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.second == 0.0; });
  terms_ = std::move(merged);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  out.compress();
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_)
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  out.compress();
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second *= s;
  out.compress();
  return out;
}

Vec3 VectorPolynomial::operator()(const Vec3& x) const {
  return {comp[0](x), comp[1](x), comp[2](x)};
}

Vec3 VectorPolynomial::curl(const Vec3& x) const {
  const Vec3 g0 = comp[0].gradient(x);
  const Vec3 g1 = comp[1].gradient(x);
  const Vec3 g2 = comp[2].gradient(x);
  return {g2[1] - g1[2], g0[2] - g2[0], g1[0] - g0[1]};
}

VectorPolynomial VectorPolynomial::curl() const {
  VectorPolynomial c;
  c.comp[0] = comp[2].derivative(1) - comp[1].derivative(2);
  c.comp[1] = comp[0].derivative(2) - comp[2].derivative(0);
  c.comp[2] = comp[1].derivative(0) - comp[0].derivative(1);
  return c;
}

Polynomial VectorPolynomial::dot(const VectorPolynomial& o) const {
  return comp[0] * o.comp[0] + comp[1] * o.comp[1] + comp[2] * o.comp[2];
}

Polynomial VectorPolynomial::dot_position() const {
  Polynomial s;
  for (int a = 0; a < 3; ++a) {
    MultiIndex e{0, 0, 0};
    e[a] = 1;
    s = s + comp[a] * Polynomial::monomial(e);
  }
  return s;
}

std::vector<MultiIndex> q_indices(const std::vector<int>& orders) {
  if (orders.empty() || orders.size() > 3) throw std::invalid_argument("1 to 3 orders expected");
  std::vector<MultiIndex> out;
  MultiIndex e{0, 0, 0};
  const int d = static_cast<int>(orders.size());
  for (int o : orders)
    if (o < 0) throw std::invalid_argument("negative polynomial order");
  // Odometer with the last axis fastest.
  while (true) {
    out.push_back(e);
    int a = d - 1;
    while (a >= 0 && e[a] == orders[a]) {
      e[a] = 0;
      --a;
    }
    if (a < 0) break;
    ++e[a];
  }
  return out;
}

std::vector<MultiIndex> p_indices(int k, int d) {
  if (k < 0) throw std::invalid_argument("negative polynomial degree");
  std::vector<MultiIndex> out;
  for (const auto& e : q_indices(std::vector<int>(d, k)))
    if (total_degree(e) <= k) out.push_back(e);
  return out;
}

ScalarBasis monomial_Q(const std::vector<int>& orders) {
  ScalarBasis b{static_cast<int>(orders.size()), {}};
  for (const auto& e : q_indices(orders)) b.terms.push_back(Polynomial::monomial(e));
  return b;
}

ScalarBasis monomial_P(int k, int d) {
  ScalarBasis b{d, {}};
  for (const auto& e : p_indices(k, d)) b.terms.push_back(Polynomial::monomial(e));
  return b;
}

long dim_P(int k, int d) {
  // T^d_n = prod_{i=1..d} (n + i - 1) / d!  with n = k + 1
  long num = 1, den = 1;
  for (int i = 1; i <= d; ++i) {
    num *= (k + 1) + i - 1;
    den *= i;
  }
  return num / den;
}

long dim_homogeneous(int k, int d) { return k < 0 ? 0 : dim_P(k, d - 1); }

long dim_S(int k, int d) { return d * dim_homogeneous(k, d) - dim_homogeneous(k + 1, d); }

LagrangeBasis1D lagrange_1d(int order) {
  if (order < 0) throw std::invalid_argument("negative Lagrange order");
  LagrangeBasis1D b;
  b.order = order;
  if (order == 0) {
    b.nodes = {0.5};
    b.polys = {Polynomial::constant(1.0)};
    return b;
  }
  for (int i = 0; i <= order; ++i) b.nodes.push_back(static_cast<double>(i) / order);
  for (int i = 0; i <= order; ++i) {
    Polynomial l = Polynomial::constant(1.0);
    for (int n = 0; n <= order; ++n) {
      if (n == i) continue;
      const double inv = 1.0 / (b.nodes[i] - b.nodes[n]);
      l = l * Polynomial::linear(0, inv, -b.nodes[n] * inv);
    }
    b.polys.push_back(l);
  }
  return b;
}

void lagrange_1d_eval(int order, double x, std::vector<double>& value, std::vector<double>& derivative) {
  value.assign(order + 1, 1.0);
  derivative.assign(order + 1, 0.0);
  if (order == 0) return;
  const double p = order;
  for (int i = 0; i <= order; ++i) {
    // factors (p x - m) / (i - m) keep the nodes exact
    double v = 1.0;
    for (int m = 0; m <= order; ++m)
      if (m != i) v *= (p * x - m) / (i - m);
    double d = 0.0;
    for (int j = 0; j <= order; ++j) {
      if (j == i) continue;
      double t = p / (i - j);
      for (int m = 0; m <= order; ++m)
        if (m != i && m != j) t *= (p * x - m) / (i - m);
      d += t;
    }
    value[i] = v;
    derivative[i] = d;
  }
}

double lagrange_tensor_value(const std::vector<int>& orders, const MultiIndex& idx, const Vec3& x) {
  double v = 1.0;
  std::vector<double> val, der;
  for (std::size_t a = 0; a < orders.size(); ++a) {
    lagrange_1d_eval(orders[a], x[static_cast<Eigen::Index>(a)], val, der);
    v *= val[idx[a]];
  }
  return v;
}

namespace {

// Re-expresses a univariate polynomial in x_1 as one in x_{axis+1}.
Polynomial move_to_axis(const Polynomial& p, int axis) {
  Polynomial out;
  for (const auto& [e, c] : p.terms()) {
    MultiIndex m{0, 0, 0};
    m[axis] = e[0];
    out = out + Polynomial::monomial(m, c);
  }
  return out;
}

}  // namespace

LagrangeTensor lagrange_tensor(const std::vector<int>& orders) {
  const int d = static_cast<int>(orders.size());
  std::vector<LagrangeBasis1D> axes;
  std::vector<std::vector<Polynomial>> axis_polys;
  for (int a = 0; a < d; ++a) {
    axes.push_back(lagrange_1d(orders[a]));
    std::vector<Polynomial> ps;
    for (const auto& p : axes.back().polys) ps.push_back(move_to_axis(p, a));
    axis_polys.push_back(std::move(ps));
  }
  // Node counts per axis equal order + 1 (order 0 has one node).
  LagrangeTensor t;
  t.orders = orders;
  for (const auto& e : q_indices(orders)) {
    Polynomial p = Polynomial::constant(1.0);
    Vec3 node = Vec3::Zero();
    for (int a = 0; a < d; ++a) {
      p = p * axis_polys[a][e[a]];
      node[a] = axes[a].nodes[e[a]];
    }
    t.polys.push_back(p);
    t.nodes.push_back(node);
  }
  return t;
}

namespace {

Polynomial mono3(int a, int b, int c, double coef = 1.0) {
  return Polynomial::monomial({a, b, c}, coef);
}

}  // namespace

VectorBasis sk_basis(int k, int d) {
  if (k < 1) throw std::invalid_argument("S_k needs k >= 1");
  if (d != 2 && d != 3) throw std::invalid_argument("S_k needs d in {2, 3}");
  VectorBasis b{d, {}};
  if (d == 2) {
    for (int a = 1; a <= k; ++a) {
      VectorPolynomial v;
      v.comp[0] = mono3(a - 1, k - a + 1, 0, -1.0);
      v.comp[1] = mono3(a, k - a, 0);
      b.terms.push_back(v);
    }
    return b;
  }
  for (int be = 1; be <= k; ++be) {
    for (int a = 1; a <= k + 1 - be; ++a) {
      VectorPolynomial v1;
      v1.comp[0] = mono3(a - 1, k - a - be + 2, be - 1, -1.0);
      v1.comp[1] = mono3(a, k - a - be + 1, be - 1);
      b.terms.push_back(v1);
      VectorPolynomial v2;
      v2.comp[0] = mono3(k - a - be + 1, be - 1, a, -1.0);
      v2.comp[2] = mono3(k - a - be + 2, be - 1, a - 1);
      b.terms.push_back(v2);
    }
  }
  for (int a = 1; a <= k; ++a) {
    VectorPolynomial v;
    v.comp[1] = mono3(0, a - 1, k - a + 1, -1.0);
    v.comp[2] = mono3(0, a, k - a);
    b.terms.push_back(v);
  }
  return b;
}

BasisValues eval_basis(const VectorBasis& basis, const Vec3& point) {
  BasisValues out;
  out.values.reserve(basis.size());
  out.curls.reserve(basis.size());
  for (const auto& t : basis.terms) {
    out.values.push_back(t(point));
    out.curls.push_back(t.curl(point));
  }
  return out;
}

}  // namespace edgefem
