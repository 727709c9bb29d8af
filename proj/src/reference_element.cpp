// SPDX-License-Identifier: Apache-2.0
#include "edgefem/reference_element.hpp"

#include <array>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace edgefem {

namespace {

Vec3 unit(int axis) {
  Vec3 e = Vec3::Zero();
  e[axis] = 1.0;
  return e;
}

struct LagrangeTest {
  Polynomial poly;
  std::vector<int> orders;
  MultiIndex node;
};

std::vector<LagrangeTest> lagrange_tests(const std::vector<int>& orders) {
  const LagrangeTensor t = lagrange_tensor(orders);
  const auto idx = q_indices(orders);
  std::vector<LagrangeTest> out;
  for (std::size_t i = 0; i < t.polys.size(); ++i) out.push_back({t.polys[i], orders, idx[i]});
  return out;
}

std::vector<Polynomial> monomials(int k, int d) {
  if (k < 0) return {};
  return monomial_P(k, d).terms;
}

}  // namespace

EntityChart entity_chart(CellKind kind, const EntityRef& entity) {
  const auto& v = reference_vertices(kind);
  EntityChart c;
  if (entity.dim == kind.dim) {
    c.origin = Vec3::Zero();
    for (int a = 0; a < kind.dim; ++a) c.axes.push_back(unit(a));
    c.measure_factor = 1.0;
    c.param_kind = kind;
    return c;
  }
  if (entity.dim != 1 && entity.dim != 2)
    throw std::invalid_argument("entity_chart supports edges, faces and cells");
  c.origin = v[entity.vertices[0]];
  for (int i = 1; i <= entity.dim; ++i) c.axes.push_back(v[entity.vertices[i]] - c.origin);
  if (entity.dim == 1) {
    c.measure_factor = c.axes[0].norm();
    c.param_kind = CellKind{kind.family, 1};
  } else {
    c.measure_factor = c.axes[0].cross(c.axes[1]).norm();
    c.param_kind = CellKind{kind.family, 2};
  }
  return c;
}

QuadratureRule entity_rule(CellKind kind, const EntityRef& entity, int degree) {
  const EntityChart chart = entity_chart(kind, entity);
  const QuadratureRule base =
      entity.dim == 1 ? segment_rule(degree) : rule_for(chart.param_kind, degree);
  QuadratureRule r;
  r.dim = kind.dim;
  r.degree = degree;
  for (std::size_t p = 0; p < base.size(); ++p) {
    Vec3 x = chart.origin;
    for (std::size_t a = 0; a < chart.axes.size(); ++a) x += base.points[p][a] * chart.axes[a];
    r.points.push_back(x);
    r.weights.push_back(base.weights[p] * chart.measure_factor);
  }
  return r;
}

int expected_num_dofs(CellKind kind, int k) {
  if (kind.family == Family::cube)
    return kind.dim == 2 ? 2 * k * (k + 1) : 3 * k * (k + 1) * (k + 1);
  return kind.dim == 2 ? k * (k + 2) : k * (k * k + 5 * k + 6) / 2;
}

ReferenceElement::ReferenceElement(CellKind kind, int order) : kind_(kind), order_(order) {
  if (order < 1) throw std::invalid_argument("element order must be >= 1");
  if (kind.dim != 2 && kind.dim != 3) throw std::invalid_argument("unsupported cell kind");
  build_prebasis();
  build_moments();
  build_entity_quadrature();
  build_change_of_basis();
}

void ReferenceElement::build_prebasis() {
  const int d = kind_.dim, k = order_;
  prebasis_.dim = d;
  if (kind_.family == Family::cube) {
    for (int c = 0; c < d; ++c) {
      std::vector<int> orders(d, k);
      orders[c] = k - 1;
      const LagrangeTensor t = lagrange_tensor(orders);
      const auto idx = q_indices(orders);
      for (std::size_t i = 0; i < t.polys.size(); ++i) {
        prebasis_node_index_.push_back(idx[i]);
        VectorPolynomial v;
        v.comp[c] = t.polys[i];
        prebasis_.terms.push_back(v);
        prebasis_component_.push_back(c);
        prebasis_nodes_.push_back(t.nodes[i]);
      }
    }
    return;
  }
  for (int c = 0; c < d; ++c)
    for (const auto& m : monomials(k - 1, d)) {
      VectorPolynomial v;
      v.comp[c] = m;
      prebasis_.terms.push_back(v);
    }
  for (const auto& s : sk_basis(k, d).terms) prebasis_.terms.push_back(s);
}

void ReferenceElement::build_moments() {
  const int d = kind_.dim, k = order_;
  const bool cube = kind_.family == Family::cube;
  dofs_per_entity_.assign(d + 1, 0);
  entity_dofs_.resize(d + 1);
  for (int m = 0; m <= d; ++m) entity_dofs_[m].resize(num_entities(kind_, m));

  auto add = [&](const EntityRef& e, const Vec3& dir, const Polynomial& q, double scale) {
    auto& list = entity_dofs_[e.dim][e.local_index];
    Moment mo;
    mo.entity_dim = e.dim;
    mo.entity_index = e.local_index;
    mo.local_index = static_cast<int>(list.size());
    mo.direction = dir;
    mo.test = q;
    mo.scale = scale;
    list.push_back(static_cast<int>(moments_.size()));
    moments_.push_back(std::move(mo));
  };
  auto add_lagrange = [&](const EntityRef& e, const Vec3& dir, const std::vector<int>& orders) {
    for (const auto& t : lagrange_tests(orders)) {
      add(e, dir, t.poly, 1.0);
      moments_.back().test_orders = t.orders;
      moments_.back().test_node = t.node;
    }
  };

  for (const auto& e : entities(kind_, 1)) add_lagrange(e, edge_tangent(kind_, e), {k - 1});

  if (d == 3 && k >= 2) {
    for (const auto& f : entities(kind_, 2)) {
      const FaceFrame frame = face_frame(kind_, f);
      const Vec3& t1 = frame.tangents[0];
      const Vec3& t2 = frame.tangents[1];
      if (cube) {
        // (u x n) . q with n the normal induced by the face orientation, so
        // that both cells sharing the face produce the same functional.
        const Vec3 n = t1.cross(t2).normalized();
        add_lagrange(f, n.cross(t1), {k - 2, k - 1});
        add_lagrange(f, n.cross(t2), {k - 1, k - 2});
      } else {
        const double area = 0.5 * t1.cross(t2).norm();
        for (const Vec3& t : {t1, t2})
          for (const auto& q : monomials(k - 2, 2)) add(f, t, q, 1.0 / area);
      }
    }
  }

  const EntityRef& cell = entities(kind_, d).front();
  if (cube && k >= 2) {
    for (int c = 0; c < d; ++c) {
      std::vector<int> orders(d, k - 2);
      orders[c] = k - 1;
      add_lagrange(cell, unit(c), orders);
    }
  } else if (!cube && k >= d) {
    for (int c = 0; c < d; ++c)
      for (const auto& q : monomials(k - d, d)) add(cell, unit(c), q, 1.0);
  }

  for (int m = 0; m <= d; ++m)
    if (!entity_dofs_[m].empty()) dofs_per_entity_[m] = static_cast<int>(entity_dofs_[m][0].size());
}

void ReferenceElement::build_entity_quadrature() {
  const int d = kind_.dim;
  const int degree = 2 * order_ + 2;
  entity_quad_.resize(d + 1);
  for (int m = 1; m <= d; ++m) {
    entity_quad_[m].resize(num_entities(kind_, m));
    for (const auto& e : entities(kind_, m)) {
      const auto& dofs = entity_dofs_[m][e.local_index];
      if (dofs.empty()) continue;
      const EntityChart chart = entity_chart(kind_, e);
      const QuadratureRule base =
          m == 1 ? segment_rule(degree) : rule_for(chart.param_kind, degree);
      EntityQuadrature& eq = entity_quad_[m][e.local_index];
      for (const auto& xi : base.points) {
        Vec3 x = chart.origin;
        for (std::size_t a = 0; a < chart.axes.size(); ++a) x += xi[a] * chart.axes[a];
        eq.points.push_back(x);
      }
      for (int dof : dofs) {
        const Moment& mo = moments_[dof];
        std::vector<Vec3> w;
        for (std::size_t p = 0; p < base.size(); ++p)
          w.push_back(mo.scale * base.weights[p] * chart.measure_factor *
                      mo.test_value(base.points[p]) * mo.direction);
        eq.weights.push_back(std::move(w));
      }
    }
  }
}

void ReferenceElement::build_change_of_basis() {
  const int n = num_dofs();
  if (static_cast<int>(prebasis_.size()) != n)
    throw ConstructionError(kind_.name() + " order " + std::to_string(order_) +
                            ": pre-basis size " + std::to_string(prebasis_.size()) +
                            " differs from moment count " + std::to_string(n));
  C_ = Matrix::Zero(n, n);
  for (int m = 1; m <= kind_.dim; ++m)
    for (std::size_t e = 0; e < entity_quad_[m].size(); ++e) {
      const EntityQuadrature& eq = entity_quad_[m][e];
      const auto& dofs = entity_dofs_[m][e];
      for (std::size_t p = 0; p < eq.points.size(); ++p) {
        const ShapeValues pre = eval_prebasis(eq.points[p]);
        for (std::size_t i = 0; i < dofs.size(); ++i) {
          const Vec3& w = eq.weights[i][p];
          C_.row(dofs[i]) += (pre.values * w).transpose();
        }
      }
    }
  Eigen::PartialPivLU<Matrix> lu(C_);
  rcond_ = lu.rcond();
  if (!(rcond_ > 1e-12))
    throw ConstructionError(kind_.name() + " order " + std::to_string(order_) +
                            ": moment matrix is singular or ill-conditioned (rcond " +
                            std::to_string(rcond_) + ")");
  const Matrix QT = lu.solve(Matrix::Identity(n, n));
  Q_ = QT.transpose();
}

ShapeValues ReferenceElement::eval_prebasis(const Vec3& x) const {
  const std::size_t n = prebasis_.size();
  ShapeValues s;
  s.values.resize(n, 3);
  s.curls.resize(n, 3);
  if (nodal_prebasis()) {
    // Component c of function i is prod_a L_a(x_a) with order k - 1 along c
    // and k elsewhere; slot 0 holds order k, slot 1 order k - 1.
    const int d = kind_.dim;
    std::array<std::array<std::vector<double>, 3>, 2> val, der;
    for (int a = 0; a < d; ++a) {
      lagrange_1d_eval(order_, x[a], val[0][a], der[0][a]);
      lagrange_1d_eval(order_ - 1, x[a], val[1][a], der[1][a]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int c = prebasis_component_[i];
      const MultiIndex& idx = prebasis_node_index_[i];
      double v = 1.0;
      Vec3 grad = Vec3::Zero();
      for (int b = 0; b < d; ++b) {
        double g = 1.0;
        for (int a = 0; a < d; ++a) {
          const int slot = a == c ? 1 : 0;
          g *= a == b ? der[slot][a][idx[a]] : val[slot][a][idx[a]];
        }
        grad[b] = g;
        v *= val[b == c ? 1 : 0][b][idx[b]];
      }
      Vec3 e = Vec3::Zero();
      e[c] = 1.0;
      s.values.row(i) = v * e.transpose();
      s.curls.row(i) = grad.cross(e).transpose();
    }
    return s;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const VectorPolynomial& t = prebasis_.terms[i];
    s.values.row(i) = t(x).transpose();
    s.curls.row(i) = t.curl(x).transpose();
  }
  return s;
}

ShapeValues ReferenceElement::eval_shapes(const Vec3& x) const {
  ShapeValues pre = eval_prebasis(x);
  ShapeValues s;
  s.values = Q_ * pre.values;
  s.curls = Q_ * pre.curls;
  return s;
}

std::vector<ShapeValues> ReferenceElement::tabulate(const QuadratureRule& rule) const {
  std::vector<ShapeValues> out;
  out.reserve(rule.size());
  for (const auto& p : rule.points) out.push_back(eval_shapes(p));
  return out;
}

Vector ReferenceElement::apply_entity_moments(int dim, int index, const ReferenceField& field) const {
  const auto& dofs = entity_dofs_.at(dim).at(index);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dofs.size()));
  if (dofs.empty()) return out;
  const EntityQuadrature& eq = entity_quad_[dim][index];
  for (std::size_t p = 0; p < eq.points.size(); ++p) {
    const Vec3 v = field(eq.points[p]);
    for (std::size_t i = 0; i < dofs.size(); ++i) out[i] += eq.weights[i][p].dot(v);
  }
  return out;
}

Vector ReferenceElement::apply_moments(const ReferenceField& field) const {
  Vector out(num_dofs());
  for (int m = 1; m <= kind_.dim; ++m)
    for (int e = 0; e < num_entities(kind_, m); ++e) {
      const auto& dofs = entity_dofs_[m][e];
      if (dofs.empty()) continue;
      const Vector v = apply_entity_moments(m, e, field);
      for (std::size_t i = 0; i < dofs.size(); ++i) out[dofs[i]] = v[i];
    }
  return out;
}

std::shared_ptr<const ReferenceElement> get_element(CellKind kind, int order) {
  static std::shared_mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const ReferenceElement>> cache;
  const auto key = std::make_tuple(static_cast<int>(kind.family), kind.dim, order);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto element = std::make_shared<const ReferenceElement>(kind, order);
  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(element)).first->second;
}

}  // namespace edgefem
