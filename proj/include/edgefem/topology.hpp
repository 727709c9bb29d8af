// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace edgefem {

enum class Family { cube, simplex };

struct CellKind {
  Family family = Family::cube;
  int dim = 2;

  int num_vertices() const { return family == Family::cube ? (1 << dim) : dim + 1; }
  std::string name() const;
  friend bool operator==(const CellKind&, const CellKind&) = default;
};

inline constexpr CellKind cube2{Family::cube, 2};
inline constexpr CellKind cube3{Family::cube, 3};
inline constexpr CellKind simplex2{Family::simplex, 2};
inline constexpr CellKind simplex3{Family::simplex, 3};

// Parses "cube2", "simplex3", ... Throws std::invalid_argument otherwise.
CellKind parse_cell_kind(const std::string& name);

// A sub-entity of the reference cell. The vertex tuple is strictly increasing
// and its order is the entity's reference orientation.
struct EntityRef {
  int dim = 0;
  int local_index = 0;
  std::vector<int> vertices;
};

// Cube vertices are numbered lexicographically (bit i of the index is the
// x_{i+1} coordinate); simplex vertices are the origin followed by e_1..e_d.
const std::vector<Vec3>& reference_vertices(CellKind kind);

// All entities of the given dimension, ordered lexicographically by vertex
// tuple. dim == kind.dim returns the cell itself.
const std::vector<EntityRef>& entities(CellKind kind, int dim);

inline int num_entities(CellKind kind, int dim) {
  return static_cast<int>(entities(kind, dim).size());
}

// Unit vector from the first to the second vertex of the edge.
Vec3 edge_tangent(CellKind kind, const EntityRef& edge);

// Edge vector from the first to the second vertex (not normalized).
Vec3 edge_vector(CellKind kind, const EntityRef& edge);

struct FaceFrame {
  Vec3 normal;                   // outward unit normal
  std::array<Vec3, 2> tangents;  // v_b - v_a, v_c - v_a for tuple (a, b, c, ...)
};

FaceFrame face_frame(CellKind kind, const EntityRef& face);

// Lebesgue measure of the reference cell.
double reference_volume(CellKind kind);

}  // namespace edgefem
