// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/geometry.hpp"
#include "edgefem/reference_element.hpp"
#include "edgefem/topology.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace edgefem {

// Conforming mesh of affine cells of one kind. Cells list global vertex ids in
// the cell's local vertex order; edges and faces are deduplicated by their
// sorted global vertex tuple.
class Mesh {
 public:
  // Validates affinity and builds entities; boundary entities are those codim-1
  // entities with a single incident cell and everything in their closure.
  Mesh(CellKind kind, std::vector<Vec3> vertices, std::vector<std::vector<int>> cells);

  CellKind kind() const { return kind_; }
  int dim() const { return kind_.dim; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_entities(int m) const;

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<int>& cell_vertices(std::size_t c) const { return cells_[c]; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const AffineMap& map(std::size_t c) const { return maps_[c]; }

  // Global id of local entity `local` of dimension m in cell c. For m == dim
  // the id is the cell index.
  int cell_entity(std::size_t c, int m, int local) const;
  const std::vector<int>& entity_vertices(int m, int id) const { return entity_vertices_[m][id]; }
  // One incident (cell, local index) pair per entity.
  std::pair<int, int> entity_owner(int m, int id) const { return entity_owner_[m][id]; }
  bool on_boundary(int m, int id) const { return boundary_[m][id] != 0; }
  void set_boundary(int m, int id, bool flag) { boundary_[m][id] = flag ? 1 : 0; }
  // Number of cells incident to each entity.
  int incidence(int m, int id) const { return incidence_[m][id]; }

  // True when every local entity orientation matches the global one.
  bool oriented() const { return oriented_; }

  // Optional per-cell refinement level (forest leaves).
  const std::vector<int>& levels() const { return levels_; }
  void set_levels(std::vector<int> levels) { levels_ = std::move(levels); }

  double max_cell_size() const;

 private:
  CellKind kind_;
  std::vector<Vec3> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<AffineMap> maps_;
  std::vector<std::vector<std::vector<int>>> entity_vertices_;  // [m][id]
  std::vector<std::vector<int>> cell_entities_;                 // [m] flat per cell
  std::vector<std::vector<std::pair<int, int>>> entity_owner_;  // [m][id]
  std::vector<std::vector<char>> boundary_;
  std::vector<std::vector<int>> incidence_;
  std::vector<int> levels_;
  bool oriented_ = true;
};

using CellFilter = std::function<bool(const Vec3& center)>;

// Structured grid of axis-aligned boxes over [lo, hi]; the filter drops cells
// whose center it rejects. Vertex ids are lexicographic (x fastest), which
// orients the mesh.
Mesh structured_hex_mesh(int dim, const std::array<int, 3>& n, const Vec3& lo, const Vec3& hi,
                         const CellFilter& keep = {});

// Applies x -> A x + b to all vertices.
Mesh transformed(const Mesh& mesh, const Mat3& A, const Vec3& b);

// Sorts the vertices of every simplex by global id.
std::vector<std::vector<int>> oriented_cells(std::vector<std::vector<int>> cells);

// Splits quads into 2 triangles and hexes into 6 tetrahedra along diagonals
// through each cell's lowest-id vertex, then orients the result.
Mesh tetrahedralize(const Mesh& hex_mesh);

// Global DOF numbering by equivalence classes (global entity, entity-local index).
struct DofMap {
  int n_local = 0;
  int n_dofs = 0;
  std::vector<int> cell_dofs;             // n_cells * n_local
  std::vector<std::vector<int>> offset;   // [m][entity id] -> first global DOF
  std::vector<int> dofs_per_entity;       // [m]
  std::vector<char> boundary;             // per global DOF

  std::span<const int> cell(std::size_t c) const {
    return {cell_dofs.data() + c * n_local, static_cast<std::size_t>(n_local)};
  }
  int entity_dof(int m, int id, int local) const { return offset[m][id] + local; }
};

DofMap build_dof_map(const Mesh& mesh, const ReferenceElement& element);

}  // namespace edgefem
