// SPDX-License-Identifier: Apache-2.0
#include "edgefem/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace edgefem {

namespace {

void expect(std::istream& in, const std::string& word) {
  std::string got;
  if (!(in >> got) || got != word)
    throw IoError("mesh file: expected '" + word + "', found '" + got + "'");
}

template <class T>
T read_value(std::istream& in, const char* what) {
  T v;
  if (!(in >> v)) throw IoError(std::string("mesh file: cannot read ") + what);
  return v;
}

}  // namespace

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << "edgefem-mesh 1\nkind " << mesh.kind().name() << '\n';
  out << "vertices " << mesh.num_vertices() << '\n' << std::setprecision(17);
  for (const Vec3& v : mesh.vertices()) out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  out << "cells " << mesh.num_cells() << '\n';
  const auto& levels = mesh.levels();
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    for (int v : mesh.cell_vertices(c)) out << v << ' ';
    out << (levels.empty() ? 0 : levels[c]) << '\n';
  }
  for (int m = 1; m < mesh.dim(); ++m) {
    std::vector<int> ids;
    for (std::size_t e = 0; e < mesh.num_entities(m); ++e)
      if (mesh.on_boundary(m, static_cast<int>(e))) ids.push_back(static_cast<int>(e));
    out << "boundary " << m << ' ' << ids.size() << '\n';
    for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << (i + 1 == ids.size() ? "\n" : " ");
  }
  out << "end\n";
}

Mesh read_mesh(std::istream& in) {
  expect(in, "edgefem-mesh");
  if (read_value<int>(in, "version") != 1) throw IoError("mesh file: unsupported version");
  expect(in, "kind");
  const CellKind kind = parse_cell_kind(read_value<std::string>(in, "kind"));
  expect(in, "vertices");
  const auto nv = read_value<std::size_t>(in, "vertex count");
  std::vector<Vec3> vertices(nv);
  for (auto& v : vertices)
    for (int a = 0; a < 3; ++a) v[a] = read_value<double>(in, "coordinate");
  expect(in, "cells");
  const auto nc = read_value<std::size_t>(in, "cell count");
  std::vector<std::vector<int>> cells(nc, std::vector<int>(kind.num_vertices()));
  std::vector<int> levels(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (int& v : cells[c]) v = read_value<int>(in, "cell vertex");
    levels[c] = read_value<int>(in, "level");
  }
  Mesh mesh(kind, std::move(vertices), std::move(cells));
  mesh.set_levels(std::move(levels));
  for (int m = 1; m < mesh.dim(); ++m) {
    expect(in, "boundary");
    if (read_value<int>(in, "boundary dimension") != m)
      throw IoError("mesh file: boundary sections out of order");
    for (std::size_t e = 0; e < mesh.num_entities(m); ++e) mesh.set_boundary(m, static_cast<int>(e), false);
    const auto n = read_value<std::size_t>(in, "boundary count");
    for (std::size_t i = 0; i < n; ++i) {
      const int id = read_value<int>(in, "boundary id");
      if (id < 0 || static_cast<std::size_t>(id) >= mesh.num_entities(m))
        throw IoError("mesh file: boundary id out of range");
      mesh.set_boundary(m, id, true);
    }
  }
  expect(in, "end");
  return mesh;
}

void write_vtk(std::ostream& out, const Mesh& mesh, const std::map<std::string, std::vector<double>>& cell_data) {
  const CellKind kind = mesh.kind();
  // VTK orders quad/hex vertices counter-clockwise; ours are lexicographic.
  static const std::vector<int> quad{0, 1, 3, 2}, hex{0, 1, 3, 2, 4, 5, 7, 6};
  std::vector<int> order(kind.num_vertices());
  for (int i = 0; i < kind.num_vertices(); ++i) order[i] = i;
  int type = kind.dim == 2 ? 5 : 10;
  if (kind.family == Family::cube) {
    order = kind.dim == 2 ? quad : hex;
    type = kind.dim == 2 ? 9 : 12;
  }
  out << "# vtk DataFile Version 3.0\nedgefem mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n" << std::setprecision(17);
  for (const Vec3& v : mesh.vertices()) out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  out << "CELLS " << mesh.num_cells() << ' ' << mesh.num_cells() * (kind.num_vertices() + 1) << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    out << kind.num_vertices();
    for (int i : order) out << ' ' << mesh.cell_vertices(c)[i];
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) out << type << '\n';
  std::map<std::string, std::vector<double>> data = cell_data;
  if (!mesh.levels().empty())
    data.emplace("level", std::vector<double>(mesh.levels().begin(), mesh.levels().end()));
  if (data.empty()) return;
  out << "CELL_DATA " << mesh.num_cells() << '\n';
  for (const auto& [name, values] : data) {
    if (values.size() != mesh.num_cells())
      throw std::invalid_argument("cell data '" + name + "' has the wrong length");
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << v << '\n';
  }
}

void write_element_csv(std::ostream& out, const ReferenceElement& element, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples per axis");
  const CellKind kind = element.kind();
  const int d = kind.dim;
  out << "function,x,y,z,vx,vy,vz,curlx,curly,curlz\n" << std::setprecision(12);
  const int nz = d == 3 ? samples : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < samples; ++j)
      for (int i = 0; i < samples; ++i) {
        const double h = 1.0 / (samples - 1);
        const Vec3 x(i * h, j * h, d == 3 ? k * h : 0.0);
        if (kind.family == Family::simplex && x.sum() > 1.0 + 1e-12) continue;
        const ShapeValues s = element.eval_shapes(x);
        for (Eigen::Index f = 0; f < s.values.rows(); ++f) {
          out << f << ',' << x[0] << ',' << x[1] << ',' << x[2];
          for (int a = 0; a < 3; ++a) out << ',' << s.values(f, a);
          for (int a = 0; a < 3; ++a) out << ',' << s.curls(f, a);
          out << '\n';
        }
      }
}

}  // namespace edgefem
