// SPDX-License-Identifier: Apache-2.0
#include "edgefem/topology.hpp"

#include <algorithm>
#include <bit>

namespace edgefem {

namespace {

int kind_slot(CellKind kind) {
  if (kind.dim != 2 && kind.dim != 3)
    throw std::invalid_argument("cell dimension must be 2 or 3");
  return (kind.family == Family::cube ? 0 : 2) + (kind.dim - 2);
}

std::vector<Vec3> make_vertices(CellKind kind) {
  std::vector<Vec3> out;
  if (kind.family == Family::cube) {
    for (int v = 0; v < (1 << kind.dim); ++v) {
      Vec3 x = Vec3::Zero();
      for (int i = 0; i < kind.dim; ++i) x[i] = (v >> i) & 1;
      out.push_back(x);
    }
  } else {
    out.push_back(Vec3::Zero());
    for (int i = 0; i < kind.dim; ++i) {
      Vec3 x = Vec3::Zero();
      x[i] = 1.0;
      out.push_back(x);
    }
  }
  return out;
}

// Sub-entity vertex sets of dimension m.
std::vector<std::vector<int>> make_tuples(CellKind kind, int m) {
  std::vector<std::vector<int>> tuples;
  const int nv = kind.num_vertices();
  if (kind.family == Family::cube) {
    // Choose the m free axes and the bits of the fixed ones.
    for (int free_mask = 0; free_mask < (1 << kind.dim); ++free_mask) {
      if (std::popcount(static_cast<unsigned>(free_mask)) != m) continue;
      for (int fixed = 0; fixed < (1 << kind.dim); ++fixed) {
        if (fixed & free_mask) continue;
        std::vector<int> t;
        for (int v = 0; v < nv; ++v)
          if ((v & ~free_mask) == fixed) t.push_back(v);
        tuples.push_back(t);
      }
    }
  } else {
    std::vector<int> pick(nv, 0);
    std::fill(pick.begin(), pick.begin() + m + 1, 1);
    do {
      std::vector<int> t;
      for (int v = 0; v < nv; ++v)
        if (pick[v]) t.push_back(v);
      tuples.push_back(t);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  std::sort(tuples.begin(), tuples.end());
  return tuples;
}

struct Tables {
  std::vector<Vec3> vertices;
  std::vector<std::vector<EntityRef>> by_dim;
};

const Tables& tables(CellKind kind) {
  static const std::array<Tables, 4> all = [] {
    std::array<Tables, 4> t;
    for (CellKind k : {cube2, cube3, simplex2, simplex3}) {
      Tables& tk = t[kind_slot(k)];
      tk.vertices = make_vertices(k);
      tk.by_dim.resize(k.dim + 1);
      for (int m = 0; m <= k.dim; ++m) {
        auto tuples = make_tuples(k, m);
        for (std::size_t i = 0; i < tuples.size(); ++i)
          tk.by_dim[m].push_back(EntityRef{m, static_cast<int>(i), tuples[i]});
      }
    }
    return t;
  }();
  return all[kind_slot(kind)];
}

}  // namespace

std::string CellKind::name() const {
  return (family == Family::cube ? "cube" : "simplex") + std::to_string(dim);
}

CellKind parse_cell_kind(const std::string& name) {
  for (CellKind k : {cube2, cube3, simplex2, simplex3})
    if (k.name() == name) return k;
  if (name == "quad") return cube2;
  if (name == "hex") return cube3;
  if (name == "tri") return simplex2;
  if (name == "tet") return simplex3;
  throw std::invalid_argument("unknown cell kind '" + name + "'");
}

const std::vector<Vec3>& reference_vertices(CellKind kind) { return tables(kind).vertices; }

const std::vector<EntityRef>& entities(CellKind kind, int dim) {
  const auto& t = tables(kind);
  if (dim < 0 || dim > kind.dim)
    throw std::invalid_argument("entity dimension " + std::to_string(dim) + " out of range for " +
                                kind.name());
  return t.by_dim[dim];
}

Vec3 edge_vector(CellKind kind, const EntityRef& edge) {
  if (edge.dim != 1) throw std::invalid_argument("edge_vector needs an edge");
  const auto& v = reference_vertices(kind);
  return v[edge.vertices[1]] - v[edge.vertices[0]];
}

Vec3 edge_tangent(CellKind kind, const EntityRef& edge) {
  return edge_vector(kind, edge).normalized();
}

FaceFrame face_frame(CellKind kind, const EntityRef& face) {
  if (kind.dim != 3 || face.dim != 2)
    throw std::invalid_argument("face_frame needs a face of a 3D cell");
  const auto& v = reference_vertices(kind);
  const Vec3& a = v[face.vertices[0]];
  FaceFrame f;
  f.tangents = {v[face.vertices[1]] - a, v[face.vertices[2]] - a};
  Vec3 n = f.tangents[0].cross(f.tangents[1]).normalized();
  Vec3 centroid = Vec3::Zero();
  for (const auto& x : v) centroid += x;
  centroid /= static_cast<double>(v.size());
  if (n.dot(a - centroid) < 0) n = -n;
  f.normal = n;
  return f;
}

double reference_volume(CellKind kind) {
  if (kind.family == Family::cube) return 1.0;
  return kind.dim == 2 ? 0.5 : 1.0 / 6.0;
}

}  // namespace edgefem
