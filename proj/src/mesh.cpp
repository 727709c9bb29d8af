// SPDX-License-Identifier: Apache-2.0
#include "edgefem/mesh.hpp"

#include <algorithm>
#include <map>

namespace edgefem {

namespace {

AffineMap cell_map(CellKind kind, const std::vector<Vec3>& x) {
  const auto& ref = reference_vertices(kind);
  std::vector<Vec3> ends;
  for (int a = 0; a < kind.dim; ++a) ends.push_back(x[kind.family == Family::cube ? (1 << a) : a + 1]);
  AffineMap map = AffineMap::from_points(kind.dim, x[0], ends);
  double scale = 0.0;
  for (const auto& p : x) scale = std::max(scale, (p - x[0]).norm());
  for (std::size_t v = 0; v < x.size(); ++v)
    if ((map.apply(ref[v]) - x[v]).norm() > 1e-10 * scale)
      throw ConstructionError("cell is not an affine image of the reference " + kind.name());
  return map;
}

}  // namespace

Mesh::Mesh(CellKind kind, std::vector<Vec3> vertices, std::vector<std::vector<int>> cells)
    : kind_(kind), vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const int d = kind_.dim;
  const int nv = kind_.num_vertices();
  maps_.reserve(cells_.size());
  for (const auto& c : cells_) {
    if (static_cast<int>(c.size()) != nv)
      throw std::invalid_argument("cell has " + std::to_string(c.size()) + " vertices, expected " +
                                  std::to_string(nv));
    std::vector<Vec3> x;
    for (int v : c) {
      if (v < 0 || v >= static_cast<int>(vertices_.size()))
        throw std::invalid_argument("cell references unknown vertex");
      x.push_back(vertices_[v]);
    }
    maps_.push_back(cell_map(kind_, x));
  }

  entity_vertices_.assign(d + 1, {});
  cell_entities_.assign(d + 1, {});
  entity_owner_.assign(d + 1, {});
  incidence_.assign(d + 1, {});
  for (int m = 1; m < d; ++m) {
    std::map<std::vector<int>, int> ids;
    const auto& refs = entities(kind_, m);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      for (const auto& e : refs) {
        std::vector<int> g;
        for (int lv : e.vertices) g.push_back(cells_[c][lv]);
        if (!std::is_sorted(g.begin(), g.end()) ||
            std::adjacent_find(g.begin(), g.end()) != g.end())
          oriented_ = false;
        std::vector<int> key = g;
        std::sort(key.begin(), key.end());
        auto [it, inserted] = ids.emplace(key, static_cast<int>(entity_vertices_[m].size()));
        if (inserted) {
          entity_vertices_[m].push_back(key);
          entity_owner_[m].emplace_back(static_cast<int>(c), e.local_index);
          incidence_[m].push_back(0);
        }
        ++incidence_[m][it->second];
        cell_entities_[m].push_back(it->second);
      }
    }
  }
  entity_vertices_[d].resize(cells_.size());
  entity_owner_[d].resize(cells_.size());
  incidence_[d].assign(cells_.size(), 1);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    entity_vertices_[d][c] = cells_[c];
    entity_owner_[d][c] = {static_cast<int>(c), 0};
  }

  boundary_.assign(d + 1, {});
  for (int m = 0; m <= d; ++m) boundary_[m].assign(entity_vertices_[m].size(), 0);
  // Codim-1 entities with one incident cell, then their sub-entities.
  const auto& facets = entities(kind_, d - 1);
  for (std::size_t c = 0; c < cells_.size(); ++c)
    for (const auto& f : facets) {
      const int fid = cell_entity(c, d - 1, f.local_index);
      if (incidence_[d - 1][fid] != 1) continue;
      boundary_[d - 1][fid] = 1;
      for (int m = 1; m < d - 1; ++m)
        for (const auto& e : entities(kind_, m))
          if (std::includes(f.vertices.begin(), f.vertices.end(), e.vertices.begin(),
                            e.vertices.end()))
            boundary_[m][cell_entity(c, m, e.local_index)] = 1;
    }
}

std::size_t Mesh::num_entities(int m) const {
  if (m == 0) return vertices_.size();
  return entity_vertices_.at(m).size();
}

int Mesh::cell_entity(std::size_t c, int m, int local) const {
  if (m == kind_.dim) return static_cast<int>(c);
  return cell_entities_[m][c * edgefem::num_entities(kind_, m) + local];
}

double Mesh::max_cell_size() const {
  double h = 0.0;
  for (const auto& c : cells_)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        h = std::max(h, (vertices_[c[i]] - vertices_[c[j]]).norm());
  return h;
}

Mesh structured_hex_mesh(int dim, const std::array<int, 3>& n, const Vec3& lo, const Vec3& hi,
                         const CellFilter& keep) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("mesh dimension must be 2 or 3");
  for (int a = 0; a < dim; ++a)
    if (n[a] < 1) throw std::invalid_argument("structured mesh needs n >= 1 per axis");
  const int nx = n[0], ny = n[1], nz = dim == 3 ? n[2] : 0;
  auto vid = [&](int i, int j, int k) { return i + (nx + 1) * (j + (ny + 1) * k); };
  std::vector<Vec3> vertices;
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        Vec3 x(lo[0] + (hi[0] - lo[0]) * i / nx, lo[1] + (hi[1] - lo[1]) * j / ny, 0.0);
        if (dim == 3) x[2] = lo[2] + (hi[2] - lo[2]) * k / nz;
        vertices.push_back(x);
      }
  std::vector<std::vector<int>> cells;
  std::vector<char> used(vertices.size(), 0);
  const int cz = dim == 3 ? nz : 1;
  for (int k = 0; k < cz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        std::vector<int> c;
        for (int v = 0; v < (1 << dim); ++v)
          c.push_back(vid(i + (v & 1), j + ((v >> 1) & 1), k + ((v >> 2) & 1)));
        Vec3 center = Vec3::Zero();
        for (int v : c) center += vertices[v];
        center /= static_cast<double>(c.size());
        if (keep && !keep(center)) continue;
        for (int v : c) used[v] = 1;
        cells.push_back(std::move(c));
      }
  // Drop unused vertices; renumbering keeps the order, hence the orientation.
  std::vector<int> renum(vertices.size(), -1);
  std::vector<Vec3> kept;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (used[v]) {
      renum[v] = static_cast<int>(kept.size());
      kept.push_back(vertices[v]);
    }
  for (auto& c : cells)
    for (int& v : c) v = renum[v];
  return Mesh(CellKind{Family::cube, dim}, std::move(kept), std::move(cells));
}

Mesh transformed(const Mesh& mesh, const Mat3& A, const Vec3& b) {
  std::vector<Vec3> x;
  for (const auto& v : mesh.vertices()) {
    Vec3 y = A * v + b;
    if (mesh.dim() == 2) y[2] = 0.0;
    x.push_back(y);
  }
  Mesh out(mesh.kind(), std::move(x), mesh.cells());
  out.set_levels(mesh.levels());
  return out;
}

std::vector<std::vector<int>> oriented_cells(std::vector<std::vector<int>> cells) {
  for (auto& c : cells) std::sort(c.begin(), c.end());
  return cells;
}

Mesh tetrahedralize(const Mesh& hex) {
  if (hex.kind().family != Family::cube) throw std::invalid_argument("tetrahedralize needs a cube mesh");
  const int d = hex.dim();
  std::vector<std::vector<int>> cells;
  for (const auto& c : hex.cells()) {
    // The lowest global id sits at local vertex 0 on oriented hex meshes, so
    // the split diagonal runs from local 0 to the opposite corner.
    if (*std::min_element(c.begin(), c.end()) != c[0])
      throw ConstructionError("tetrahedralize expects oriented hex cells");
    if (d == 2) {
      cells.push_back({c[0], c[1], c[3]});
      cells.push_back({c[0], c[2], c[3]});
    } else {
      std::array<int, 3> axes{0, 1, 2};
      do {
        const int v1 = 1 << axes[0];
        const int v2 = v1 | (1 << axes[1]);
        cells.push_back({c[0], c[v1], c[v2], c[7]});
      } while (std::next_permutation(axes.begin(), axes.end()));
    }
  }
  return Mesh(CellKind{Family::simplex, d}, hex.vertices(), oriented_cells(std::move(cells)));
}

DofMap build_dof_map(const Mesh& mesh, const ReferenceElement& element) {
  if (!(mesh.kind() == element.kind()))
    throw std::invalid_argument("mesh and element cell kinds differ");
  if (!mesh.oriented()) throw std::invalid_argument("mesh is not oriented");
  const int d = mesh.dim();
  DofMap dm;
  dm.n_local = element.num_dofs();
  dm.offset.assign(d + 1, {});
  dm.dofs_per_entity.assign(d + 1, 0);
  int next = 0;
  for (int m = 1; m <= d; ++m) {
    const int per = element.dofs_per_entity(m);
    dm.dofs_per_entity[m] = per;
    const std::size_t ne = mesh.num_entities(m);
    dm.offset[m].resize(ne);
    for (std::size_t id = 0; id < ne; ++id) {
      dm.offset[m][id] = next;
      next += per;
    }
  }
  dm.n_dofs = next;
  dm.boundary.assign(next, 0);
  for (int m = 1; m < d; ++m)
    for (std::size_t id = 0; id < mesh.num_entities(m); ++id)
      if (mesh.on_boundary(m, static_cast<int>(id)))
        for (int i = 0; i < dm.dofs_per_entity[m]; ++i) dm.boundary[dm.offset[m][id] + i] = 1;

  dm.cell_dofs.assign(mesh.num_cells() * dm.n_local, -1);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c)
    for (int m = 1; m <= d; ++m)
      for (int e = 0; e < edgefem::num_entities(mesh.kind(), m); ++e) {
        const auto& local = element.entity_dofs(m, e);
        const int gid = mesh.cell_entity(c, m, e);
        for (std::size_t i = 0; i < local.size(); ++i)
          dm.cell_dofs[c * dm.n_local + local[i]] = dm.offset[m][gid] + static_cast<int>(i);
      }
  return dm;
}

}  // namespace edgefem
