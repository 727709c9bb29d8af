// SPDX-License-Identifier: Apache-2.0
#include "edgefem/amr.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

namespace edgefem {

std::size_t CellKeyHash::operator()(const CellKey& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.level) * 0x9E3779B97F4A7C15ull;
  for (auto a : k.anchor) h ^= std::hash<std::int64_t>{}(a) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Box {
  IPoint lo{0, 0, 0};
  IPoint hi{0, 0, 0};
};

Box cell_box(const CellKey& k, std::int64_t size, int dim) {
  Box b;
  b.lo = k.anchor;
  b.hi = k.anchor;
  for (int a = 0; a < dim; ++a) b.hi[a] += size;
  return b;
}

IPoint corner(const CellKey& k, std::int64_t size, int bits) {
  IPoint p = k.anchor;
  for (int a = 0; a < 3; ++a)
    if ((bits >> a) & 1) p[a] += size;
  return p;
}

Box entity_box(const CellKey& k, std::int64_t size, const EntityRef& e) {
  Box b;
  b.lo = corner(k, size, e.vertices.front());
  b.hi = corner(k, size, e.vertices.back());
  return b;
}

// Points (doubled units) just off the entity midpoint in every direction
// perpendicular to it.
std::vector<IPoint> probe_points(const Box& b, int dim) {
  std::vector<int> perp;
  for (int a = 0; a < dim; ++a)
    if (b.lo[a] == b.hi[a]) perp.push_back(a);
  IPoint mid{0, 0, 0};
  for (int a = 0; a < dim; ++a) mid[a] = b.lo[a] + b.hi[a];
  std::vector<IPoint> out;
  int combos = 1;
  for (std::size_t i = 0; i < perp.size(); ++i) combos *= 3;
  for (int c = 0; c < combos; ++c) {
    IPoint p = mid;
    int code = c;
    bool zero = true;
    for (int a : perp) {
      const int delta = code % 3 - 1;
      code /= 3;
      p[a] += delta;
      if (delta != 0) zero = false;
    }
    if (!zero) out.push_back(p);
  }
  return out;
}

bool key_less(const CellKey& a, const CellKey& b) {
  return std::tie(a.anchor[2], a.anchor[1], a.anchor[0], a.level) <
         std::tie(b.anchor[2], b.anchor[1], b.anchor[0], b.level);
}

CellKind cube_of(int dim) { return CellKind{Family::cube, dim}; }

int find_entity(CellKind kind, int m, const std::vector<int>& tuple) {
  for (const auto& e : entities(kind, m))
    if (e.vertices == tuple) return e.local_index;
  throw std::logic_error("entity tuple not found");
}

}  // namespace

Forest::Forest(int dim, const std::array<int, 3>& roots, const Vec3& origin, double root_size,
               const CellFilter& keep)
    : dim_(dim), roots_(roots), origin_(origin), root_size_(root_size) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("forest dimension must be 2 or 3");
  if (dim == 2) roots_[2] = 1;
  for (int a = 0; a < 3; ++a)
    if (roots_[a] < 1) throw std::invalid_argument("forest needs at least one root per axis");
  if (!(root_size > 0)) throw std::invalid_argument("root size must be positive");
  root_active_.assign(static_cast<std::size_t>(roots_[0]) * roots_[1] * roots_[2], 0);
  const std::int64_t s = cell_size(0);
  for (int k = 0; k < roots_[2]; ++k)
    for (int j = 0; j < roots_[1]; ++j)
      for (int i = 0; i < roots_[0]; ++i) {
        Vec3 center = origin_ + root_size_ * Vec3(i + 0.5, j + 0.5, dim == 3 ? k + 0.5 : 0.0);
        if (dim == 2) center[2] = 0.0;
        if (keep && !keep(center)) continue;
        root_active_[i + roots_[0] * (j + roots_[1] * k)] = 1;
        leaves_.push_back(CellKey{0, {i * s, j * s, k * s}});
      }
  if (leaves_.empty()) throw std::invalid_argument("forest has no active root cells");
  rebuild_index();
}

int Forest::max_level() const {
  int l = 0;
  for (const auto& k : leaves_) l = std::max(l, k.level);
  return l;
}

Vec3 Forest::to_physical(const IPoint& p) const {
  const double unit = root_size_ / static_cast<double>(cell_size(0));
  Vec3 x = origin_;
  for (int a = 0; a < dim_; ++a) x[a] += unit * static_cast<double>(p[a]);
  if (dim_ == 2) x[2] = 0.0;
  return x;
}

IPoint Forest::to_lattice(const Vec3& x) const {
  const double unit = root_size_ / static_cast<double>(cell_size(0));
  IPoint p{0, 0, 0};
  for (int a = 0; a < dim_; ++a) p[a] = std::llround((x[a] - origin_[a]) / unit);
  return p;
}

bool Forest::root_active(const IPoint& anchor) const {
  std::array<std::int64_t, 3> r{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    r[a] = anchor[a] / cell_size(0);
    if (r[a] < 0 || r[a] >= roots_[a]) return false;
  }
  return root_active_[r[0] + roots_[0] * (r[1] + roots_[1] * r[2])] != 0;
}

void Forest::rebuild_index() {
  std::sort(leaves_.begin(), leaves_.end(), key_less);
  leaf_index_.clear();
  for (std::size_t i = 0; i < leaves_.size(); ++i) leaf_index_.emplace(leaves_[i], static_cast<int>(i));
}

std::optional<int> Forest::locate(const IPoint& doubled) const {
  for (int l = 0; l <= kMaxLevel; ++l) {
    const std::int64_t s = cell_size(l);
    CellKey key{l, {0, 0, 0}};
    for (int a = 0; a < dim_; ++a) key.anchor[a] = floor_div(doubled[a], 2 * s) * s;
    if (l == 0 && !root_active(key.anchor)) return std::nullopt;
    if (auto it = leaf_index_.find(key); it != leaf_index_.end()) return it->second;
    if (!internal_.count(key)) return std::nullopt;
  }
  return std::nullopt;
}

void Forest::split(const std::vector<int>& marked) {
  std::set<int> uniq(marked.begin(), marked.end());
  std::vector<CellKey> next;
  next.reserve(leaves_.size() + uniq.size() * (1u << dim_));
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    const CellKey& k = leaves_[i];
    if (!uniq.count(static_cast<int>(i))) {
      next.push_back(k);
      continue;
    }
    if (k.level >= kMaxLevel - 1) throw std::invalid_argument("maximum refinement level reached");
    internal_.insert(k);
    const std::int64_t half = cell_size(k.level + 1);
    for (int s = 0; s < (1 << dim_); ++s) next.push_back(CellKey{k.level + 1, corner(k, half, s)});
  }
  leaves_ = std::move(next);
  rebuild_index();
}

std::vector<int> Forest::balance_violations() const {
  std::set<int> bad;
  const CellKind kind = cube_of(dim_);
  for (const auto& k : leaves_) {
    if (k.level < 2) continue;
    const std::int64_t s = cell_size(k.level);
    for (int m = 1; m < dim_; ++m)
      for (const auto& e : entities(kind, m))
        for (const auto& p : probe_points(entity_box(k, s, e), dim_))
          if (auto c = locate(p); c && leaves_[*c].level < k.level - 1) bad.insert(*c);
  }
  return {bad.begin(), bad.end()};
}

void Forest::refine_unbalanced(const std::vector<int>& marked) {
  for (int i : marked)
    if (i < 0 || i >= static_cast<int>(leaves_.size())) throw std::invalid_argument("marked leaf out of range");
  split(marked);
}

void Forest::refine(const std::vector<int>& marked) {
  refine_unbalanced(marked);
  for (auto bad = balance_violations(); !bad.empty(); bad = balance_violations()) split(bad);
}

void Forest::refine_all() {
  std::vector<int> all(leaves_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  split(all);
}

bool Forest::is_balanced() const { return balance_violations().empty(); }

Mesh Forest::leaf_mesh() const {
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, int> ids;
  for (const auto& k : leaves_)
    for (int v = 0; v < (1 << dim_); ++v) {
      const IPoint p = corner(k, cell_size(k.level), v);
      ids.emplace(std::make_tuple(p[2], p[1], p[0]), 0);
    }
  std::vector<Vec3> vertices;
  for (auto& [key, id] : ids) {
    id = static_cast<int>(vertices.size());
    vertices.push_back(to_physical({std::get<2>(key), std::get<1>(key), std::get<0>(key)}));
  }
  std::vector<std::vector<int>> cells;
  std::vector<int> levels;
  for (const auto& k : leaves_) {
    std::vector<int> c;
    for (int v = 0; v < (1 << dim_); ++v) {
      const IPoint p = corner(k, cell_size(k.level), v);
      c.push_back(ids.at(std::make_tuple(p[2], p[1], p[0])));
    }
    cells.push_back(std::move(c));
    levels.push_back(k.level);
  }
  Mesh mesh(cube_of(dim_), std::move(vertices), std::move(cells));
  mesh.set_levels(std::move(levels));
  for (int m = 1; m < dim_; ++m)
    for (std::size_t id = 0; id < mesh.num_entities(m); ++id) {
      const auto& ev = mesh.entity_vertices(m, static_cast<int>(id));
      Box b{to_lattice(mesh.vertices()[ev.front()]), to_lattice(mesh.vertices()[ev.back()])};
      bool outside = false;
      for (const auto& p : probe_points(b, dim_))
        if (!locate(p)) outside = true;
      mesh.set_boundary(m, static_cast<int>(id), outside);
    }
  return mesh;
}

std::vector<HangingEntity> Forest::find_hanging(const Mesh& mesh) const {
  if (!is_balanced()) throw std::invalid_argument("find_hanging needs a balanced forest");
  if (mesh.num_cells() != leaves_.size()) throw std::invalid_argument("mesh does not match forest");
  const CellKind kind = cube_of(dim_);
  std::vector<HangingEntity> out;
  for (int m = 0; m < dim_; ++m) {
    const std::size_t ne = mesh.num_entities(m);
    for (std::size_t id = 0; id < ne; ++id) {
      Box g;
      if (m == 0) {
        g.lo = g.hi = to_lattice(mesh.vertices()[id]);
      } else {
        const auto& ev = mesh.entity_vertices(m, static_cast<int>(id));
        g.lo = to_lattice(mesh.vertices()[ev.front()]);
        g.hi = to_lattice(mesh.vertices()[ev.back()]);
      }
      std::int64_t g_size = 0;
      for (int a = 0; a < dim_; ++a) g_size = std::max(g_size, g.hi[a] - g.lo[a]);
      std::optional<int> coarse;
      for (const auto& p : probe_points(g, dim_)) {
        auto c = locate(p);
        if (!c) continue;
        const CellKey& ck = leaves_[*c];
        const Box cb = cell_box(ck, cell_size(ck.level), dim_);
        bool is_entity = true;  // g is a full entity of this leaf
        for (int a = 0; a < dim_; ++a) {
          const bool perp = g.lo[a] == g.hi[a];
          if (perp && g.lo[a] != cb.lo[a] && g.lo[a] != cb.hi[a]) is_entity = false;
          if (!perp && (g.lo[a] != cb.lo[a] || g.hi[a] != cb.hi[a])) is_entity = false;
        }
        const bool coarser = m == 0 || cell_size(ck.level) > g_size;
        if (!is_entity && coarser && (!coarse || ck.level < leaves_[*coarse].level)) coarse = c;
      }
      if (!coarse) continue;

      HangingEntity h;
      h.dim = m;
      h.entity = static_cast<int>(id);
      if (m > 0) {
        auto [fc, fl] = mesh.entity_owner(m, static_cast<int>(id));
        h.fine_cell = fc;
        h.fine_local = fl;
      }
      h.coarse_cell = *coarse;
      const CellKey& ck = leaves_[*coarse];
      const std::int64_t cs = cell_size(ck.level);
      const Box cb = cell_box(ck, cs, dim_);
      int fixed_mask = 0, fixed_bits = 0;
      for (int a = 0; a < dim_; ++a) {
        if (g.lo[a] != g.hi[a]) continue;
        if (g.lo[a] == cb.lo[a]) {
          fixed_mask |= 1 << a;
        } else if (g.lo[a] == cb.hi[a]) {
          fixed_mask |= 1 << a;
          fixed_bits |= 1 << a;
        }
      }
      std::vector<int> tuple;
      for (int v = 0; v < (1 << dim_); ++v)
        if ((v & fixed_mask) == fixed_bits) tuple.push_back(v);
      h.container_dim = dim_ - std::popcount(static_cast<unsigned>(fixed_mask));
      if (h.container_dim >= dim_) throw std::logic_error("hanging entity inside a coarse cell");
      h.container_local = find_entity(kind, h.container_dim, tuple);
      h.container = mesh.cell_entity(h.coarse_cell, h.container_dim, h.container_local);

      const std::int64_t half = cs / 2;
      for (int s = 0; s < (1 << dim_) && h.child < 0; ++s) {
        const CellKey child{ck.level + 1, corner(ck, half, s)};
        const Box b = cell_box(child, half, dim_);
        bool inside = true;
        for (int a = 0; a < dim_; ++a)
          if (g.lo[a] < b.lo[a] || g.hi[a] > b.hi[a]) inside = false;
        if (!inside) continue;
        int mask = 0, bits = 0;
        for (int a = 0; a < dim_; ++a) {
          if (g.lo[a] != g.hi[a]) continue;
          if (g.lo[a] != b.lo[a] && g.lo[a] != b.hi[a]) inside = false;
          mask |= 1 << a;
          if (g.lo[a] == b.hi[a]) bits |= 1 << a;
        }
        if (!inside) continue;
        std::vector<int> ct;
        for (int v = 0; v < (1 << dim_); ++v)
          if ((v & mask) == bits) ct.push_back(v);
        h.child = s;
        h.child_local = find_entity(kind, m, ct);
      }
      if (h.child < 0) throw std::logic_error("no child of the coarse cell carries the hanging entity");
      out.push_back(h);
    }
  }
  return out;
}

Vec3 child_shift(int dim, int child) {
  Vec3 s = Vec3::Zero();
  for (int a = 0; a < dim; ++a) s[a] = 0.5 * ((child >> a) & 1);
  return s;
}

LagrangeRestriction lagrange_restriction(int dim, const VectorBasis& basis,
                                         const std::vector<int>& component,
                                         const std::vector<Vec3>& nodes) {
  const std::size_t n = basis.size();
  if (component.size() != n || nodes.size() != n)
    throw std::invalid_argument("lagrange_restriction needs one node per basis function");
  LagrangeRestriction r;
  std::map<std::tuple<int, long long, long long, long long>, int> patch;
  auto key_of = [](int comp, const Vec3& x) {
    auto q = [](double v) { return std::llround(v * 1e9); };
    return std::make_tuple(comp, q(x[0]), q(x[1]), q(x[2]));
  };
  const int nchildren = 1 << dim;
  r.w.assign(nchildren, std::vector<int>(n, -1));
  for (int s = 0; s < nchildren; ++s)
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 x = 0.5 * nodes[i] + child_shift(dim, s);
      auto [it, inserted] = patch.emplace(key_of(component[i], x), static_cast<int>(r.patch_nodes.size()));
      if (inserted) {
        r.patch_nodes.push_back(x);
        r.patch_component.push_back(component[i]);
      }
      r.w[s][i] = it->second;
    }
  r.R.resize(static_cast<Eigen::Index>(r.patch_nodes.size()), static_cast<Eigen::Index>(n));
  for (std::size_t p = 0; p < r.patch_nodes.size(); ++p)
    for (std::size_t j = 0; j < n; ++j)
      r.R(p, j) = basis.terms[j].comp[r.patch_component[p]](r.patch_nodes[p]);
  for (int s = 0; s < nchildren; ++s) {
    Matrix Rs(n, n);
    for (std::size_t i = 0; i < n; ++i) Rs.row(i) = r.R.row(r.w[s][i]);
    r.per_child.push_back(std::move(Rs));
  }
  return r;
}

EdgeRestriction edge_restriction(const ReferenceElement& element) {
  if (!element.nodal_prebasis())
    throw std::invalid_argument("edge restriction needs a cube element with a nodal pre-basis");
  const int dim = element.kind().dim;
  EdgeRestriction e;
  e.lagrange = lagrange_restriction(dim, element.prebasis(), element.prebasis_component(),
                                    element.prebasis_nodes());
  // Nodal values again in product form, which is exact at the nodes.
  for (Eigen::Index p = 0; p < e.lagrange.R.rows(); ++p) {
    const ShapeValues pre = element.eval_prebasis(e.lagrange.patch_nodes[p]);
    e.lagrange.R.row(p) = pre.values.col(e.lagrange.patch_component[p]).transpose();
  }
  for (int s = 0; s < (1 << dim); ++s)
    for (Eigen::Index i = 0; i < e.lagrange.R.cols(); ++i)
      e.lagrange.per_child[s].row(i) = e.lagrange.R.row(e.lagrange.w[s][i]);
  // Child DOFs = C (child nodal values) with the Piola factor of the halved
  // Jacobian; coarse nodal values = Q^T (coarse DOFs).
  const Matrix& C = element.moment_matrix();
  const Matrix QT = element.qmat().transpose();
  for (const Matrix& Rs : e.lagrange.per_child) e.per_child.push_back(0.5 * C * (Rs * QT));
  return e;
}

const EdgeRestriction& cached_edge_restriction(const ReferenceElement& element) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<EdgeRestriction>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{element.kind().dim, element.order()}];
  if (!slot) slot = std::make_unique<EdgeRestriction>(edge_restriction(element));
  return *slot;
}

namespace {

// Local DOFs on the closure of a reference entity: the tangential trace on it
// depends on these alone, so the remaining restriction entries are round-off.
std::vector<int> closure_dofs(const ReferenceElement& element, int dim, int local) {
  const CellKind kind = element.kind();
  const auto& owner = entities(kind, dim)[local].vertices;
  std::vector<int> out;
  for (int m = 1; m <= dim; ++m)
    for (const EntityRef& e : entities(kind, m)) {
      const bool inside = std::all_of(e.vertices.begin(), e.vertices.end(), [&](int v) {
        return std::find(owner.begin(), owner.end(), v) != owner.end();
      });
      if (inside)
        for (int d : element.entity_dofs(m, e.local_index)) out.push_back(d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ConstraintSet build_constraints(const DofMap& dofs, const ReferenceElement& element,
                                const std::vector<HangingEntity>& hanging) {
  ConstraintSet cs;
  if (hanging.empty()) return cs;
  const EdgeRestriction& restriction = cached_edge_restriction(element);
  for (const auto& h : hanging) {
    if (h.dim == 0) continue;
    const int per = dofs.dofs_per_entity[h.dim];
    const auto coarse = dofs.cell(h.coarse_cell);
    const Matrix& Rs = restriction.per_child[h.child];
    const std::vector<int> support = closure_dofs(element, h.container_dim, h.container_local);
    for (int m = 0; m < per; ++m) {
      const int g = dofs.entity_dof(h.dim, h.entity, m);
      if (cs.rows.count(g)) continue;
      const int row = element.dof_index(h.dim, h.child_local, m);
      const double scale = std::max(1.0, Rs.row(row).cwiseAbs().maxCoeff());
      std::vector<std::pair<int, double>> entries;
      for (int j : support)
        if (std::abs(Rs(row, j)) > 1e-12 * scale) entries.emplace_back(coarse[j], Rs(row, j));
      cs.rows.emplace(g, std::move(entries));
    }
  }
  // Masters on hanging entities (possible for edges of a coarse face in 3D)
  // are replaced by their own rows until every master is unconstrained.
  for (int pass = 0;; ++pass) {
    if (pass > 64) throw std::logic_error("constraint chains do not terminate");
    bool changed = false;
    for (auto& [g, row] : cs.rows) {
      std::map<int, double> merged;
      bool substituted = false;
      for (const auto& [master, c] : row) {
        auto it = cs.rows.find(master);
        if (it == cs.rows.end()) {
          merged[master] += c;
          continue;
        }
        if (master == g) throw std::logic_error("self-referencing constraint");
        substituted = true;
        for (const auto& [mm, cc] : it->second) merged[mm] += c * cc;
      }
      if (!substituted) continue;
      changed = true;
      row.assign(merged.begin(), merged.end());
    }
    if (!changed) break;
  }
  return cs;
}

}  // namespace edgefem
