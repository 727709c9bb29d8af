// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/mesh.hpp"
#include "edgefem/reference_element.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace edgefem {

using IPoint = std::array<std::int64_t, 3>;

// Cell of the refinement tree: anchor (lowest corner) in integer lattice
// units of the finest admissible level.
struct CellKey {
  int level = 0;
  IPoint anchor{0, 0, 0};
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept;
};

struct HangingEntity {
  int dim = 0;             // 0 vertex, 1 edge, 2 face
  int entity = -1;         // id in the leaf mesh (vertex id for dim 0)
  int fine_cell = -1;      // a leaf having g as an entity
  int fine_local = -1;     // local index of g in fine_cell
  int coarse_cell = -1;    // leaf whose entity G(g) strictly contains g
  int container_dim = 0;   // G(g) as an entity of coarse_cell
  int container_local = -1;
  int container = -1;      // id of G(g) in the leaf mesh
  int child = -1;          // s(g): child of coarse_cell having g as an entity
  int child_local = -1;    // local index of g in that child
};

// Quadtree/octree forest over a structured root grid with optional removed
// root cells. Children are numbered lexicographically within the parent and
// inherit its orientation.
class Forest {
 public:
  static constexpr int kMaxLevel = 20;

  Forest(int dim, const std::array<int, 3>& roots, const Vec3& origin, double root_size,
         const CellFilter& keep = {});

  int dim() const { return dim_; }
  std::size_t num_leaves() const { return leaves_.size(); }
  const std::vector<CellKey>& leaves() const { return leaves_; }
  int max_level() const;

  // Refines the marked leaves (indices into leaves()) and then enough
  // neighbours to restore the 2:1 balance.
  void refine(const std::vector<int>& marked);
  void refine_all();
  // Refines without balancing; leaves the forest possibly unbalanced.
  void refine_unbalanced(const std::vector<int>& marked);
  bool is_balanced() const;

  // Leaf containing a point given in doubled lattice units, if inside the domain.
  std::optional<int> locate(const IPoint& doubled) const;

  // Physical hex mesh of the leaves (cell c is leaves()[c]) with levels set and
  // boundary flags taken from the domain geometry.
  Mesh leaf_mesh() const;

  // Hanging vertices, edges and faces of the leaf mesh.
  std::vector<HangingEntity> find_hanging(const Mesh& leaf_mesh) const;

  std::int64_t cell_size(int level) const { return std::int64_t{1} << (kMaxLevel - level); }
  Vec3 to_physical(const IPoint& p) const;
  IPoint to_lattice(const Vec3& x) const;

 private:
  void rebuild_index();
  void split(const std::vector<int>& marked);
  std::vector<int> balance_violations() const;
  bool root_active(const IPoint& anchor) const;

  int dim_;
  std::array<int, 3> roots_;
  Vec3 origin_;
  double root_size_;
  std::vector<char> root_active_;
  std::vector<CellKey> leaves_;
  std::unordered_map<CellKey, int, CellKeyHash> leaf_index_;
  std::unordered_set<CellKey, CellKeyHash> internal_;
};

// Nodal restriction for a Lagrange (component, node) basis: R(p, j) is basis
// function j at patch node p; w[s][i] is the patch node of node i of child s;
// per_child[s] = R restricted to the rows w[s].
struct LagrangeRestriction {
  std::vector<Vec3> patch_nodes;
  std::vector<int> patch_component;
  Matrix R;
  std::vector<std::vector<int>> w;
  std::vector<Matrix> per_child;
};

LagrangeRestriction lagrange_restriction(int dim, const VectorBasis& basis,
                                         const std::vector<int>& component,
                                         const std::vector<Vec3>& nodes);

// Restriction of edge element DOFs from a coarse cell onto its child s.
struct EdgeRestriction {
  LagrangeRestriction lagrange;
  std::vector<Matrix> per_child;
};

// Reference map of child s: x_hat -> scale * x_hat + shift(s) with scale 1/2.
Vec3 child_shift(int dim, int child);

// Built from the element's nodal pre-basis and its change of basis; the
// factor 1/2 of the covariant Piola map between child and parent is included.
EdgeRestriction edge_restriction(const ReferenceElement& element);
const EdgeRestriction& cached_edge_restriction(const ReferenceElement& element);

// Rows of the constraint matrix: constrained global DOF -> (master, coefficient).
struct ConstraintSet {
  std::map<int, std::vector<std::pair<int, double>>> rows;

  bool empty() const { return rows.empty(); }
  bool constrained(int dof) const { return rows.count(dof) != 0; }
};

// Masters are resolved transitively, so no master is itself constrained.
ConstraintSet build_constraints(const DofMap& dofs, const ReferenceElement& element,
                                const std::vector<HangingEntity>& hanging);

}  // namespace edgefem
