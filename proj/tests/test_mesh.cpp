// SPDX-License-Identifier: Apache-2.0
#include "edgefem/io.hpp"
#include "edgefem/mesh.hpp"
#include "edgefem/space.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace edgefem;
using edgefem::testing::max_tangential_jump;
using edgefem::testing::random_member;

namespace {

std::shared_ptr<const Mesh> grid(int dim, int n) {
  return std::make_shared<const Mesh>(
      structured_hex_mesh(dim, {n, n, dim == 3 ? n : 1}, Vec3::Zero(), Vec3::Ones()));
}

Mesh two_tets() {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  return Mesh(simplex3, v, {{0, 1, 2, 3}, {1, 2, 3, 4}});
}

double total_volume(const Mesh& m) {
  double s = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) s += m.map(c).measure() * reference_volume(m.kind());
  return s;
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("structured grid entity counts") {
  const auto m = grid(2, 2);
  CHECK(m->num_cells() == 4u);
  CHECK(m->num_entities(1) == 12u);
  CHECK(m->num_vertices() == 9u);
  CHECK(m->oriented());
  int boundary_edges = 0;
  for (std::size_t e = 0; e < m->num_entities(1); ++e) boundary_edges += m->on_boundary(1, static_cast<int>(e));
  CHECK(boundary_edges == 8);
  const auto h = grid(3, 2);
  CHECK(h->num_entities(1) == 54u);
  CHECK(h->num_entities(2) == 36u);
}

TEST_CASE("global DOF counts") {
  CHECK(make_space(grid(2, 4), 1)->num_dofs() == 40);
  const auto s = make_space(grid(2, 2), 1);
  CHECK(s->num_dofs() == 12);
  CHECK(s->num_free() == 4);
  // k = 2 on a 2x2 quad grid: 12 edges x 2 + 4 cells x 4 interior moments.
  CHECK(make_space(grid(2, 2), 2)->num_dofs() == 40);

  Mesh one(simplex3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2, 3}});
  CHECK(make_space(std::make_shared<const Mesh>(one), 2)->num_dofs() == 20);
  const auto two = make_space(std::make_shared<const Mesh>(two_tets()), 1);
  CHECK(two->num_dofs() == 9);
  CHECK(two->num_free() == 0);
}

TEST_CASE("cell DOFs are shared through entities") {
  const auto s = make_space(grid(3, 2), 2);
  const DofMap& dm = s->dofs();
  std::set<int> seen;
  for (std::size_t c = 0; c < s->mesh().num_cells(); ++c)
    for (int g : dm.cell(c)) seen.insert(g);
  CHECK(static_cast<int>(seen.size()) == dm.n_dofs);
  CHECK(dm.n_local == s->element().num_dofs());
}

TEST_CASE("tetrahedralization") {
  for (int dim : {2, 3}) {
    const auto hex = grid(dim, 2);
    const Mesh tets = tetrahedralize(*hex);
    CHECK(tets.num_cells() == hex->num_cells() * (dim == 2 ? 2u : 6u));
    CHECK(tets.oriented());
    CHECK(total_volume(tets) == doctest::Approx(1.0));
    for (std::size_t c = 0; c < tets.num_cells(); ++c) CHECK(tets.map(c).measure() > 0);
    // Every interior facet is shared by exactly two cells.
    for (std::size_t f = 0; f < tets.num_entities(dim - 1); ++f) {
      const int inc = tets.incidence(dim - 1, static_cast<int>(f));
      CHECK(inc == (tets.on_boundary(dim - 1, static_cast<int>(f)) ? 1 : 2));
    }
  }
  CHECK_THROWS_AS(tetrahedralize(two_tets()), std::invalid_argument);
}

TEST_CASE("random fields are tangentially continuous") {
  std::mt19937_64 rng(21);
  for (int k = 1; k <= 2; ++k) {
    for (int dim : {2, 3}) {
      const auto hex = grid(dim, 2);
      CHECK(max_tangential_jump(random_member(make_space(hex, k), rng)) < 1e-10);
      const auto tets = std::make_shared<const Mesh>(tetrahedralize(*hex));
      CHECK(max_tangential_jump(random_member(make_space(tets, k), rng)) < 1e-10);
    }
  }
}

TEST_CASE("orientation") {
  const auto sorted = oriented_cells({{3, 1, 2, 0}, {4, 2, 1, 3}});
  CHECK(sorted[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(oriented_cells(sorted) == sorted);
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  const Mesh unsorted(simplex3, v, {{1, 0, 2, 3}, {1, 2, 3, 4}});
  CHECK_FALSE(unsorted.oriented());
  CHECK_THROWS_AS(build_dof_map(unsorted, *get_element(simplex3, 1)), std::invalid_argument);
  const Mesh fixed(simplex3, v, oriented_cells(unsorted.cells()));
  CHECK(fixed.oriented());
}

TEST_CASE("invalid meshes") {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1.3, 1, 0}};
  CHECK_THROWS_AS(Mesh(cube2, v, {{0, 1, 2, 3}}), ConstructionError);
  CHECK_THROWS_AS(Mesh(cube2, v, {{0, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Mesh(simplex2, v, {{0, 1, 9}}), std::invalid_argument);
  CHECK_THROWS_AS(structured_hex_mesh(2, {0, 1, 1}, Vec3::Zero(), Vec3::Ones()), std::invalid_argument);
}

TEST_CASE("filtered grid and transforms") {
  const Mesh l = structured_hex_mesh(2, {2, 2, 1}, Vec3(-1, -1, 0), Vec3(1, 1, 0),
                                     [](const Vec3& c) { return !(c[0] > 0 && c[1] < 0); });
  CHECK(l.num_cells() == 3u);
  CHECK(l.num_vertices() == 8u);
  Mat3 A = Mat3::Identity();
  A(0, 1) = 0.5;
  const Mesh t = transformed(l, A, Vec3(1, 0, 0));
  CHECK(total_volume(t) == doctest::Approx(3.0));
}

TEST_CASE("mesh file round trip") {
  const Mesh m = tetrahedralize(*grid(3, 2));
  std::stringstream ss;
  write_mesh(ss, m);
  const Mesh back = read_mesh(ss);
  CHECK(back.kind() == m.kind());
  CHECK(back.cells() == m.cells());
  REQUIRE(back.num_vertices() == m.num_vertices());
  for (std::size_t i = 0; i < m.num_vertices(); ++i) CHECK((back.vertices()[i] - m.vertices()[i]).norm() < 1e-15);
  for (int d = 1; d < 3; ++d)
    for (std::size_t e = 0; e < m.num_entities(d); ++e)
      CHECK(back.on_boundary(d, static_cast<int>(e)) == m.on_boundary(d, static_cast<int>(e)));
  std::stringstream bad("edgefem-mesh 7");
  CHECK_THROWS_AS(read_mesh(bad), IoError);
}

TEST_CASE("vtk output") {
  const auto m = grid(2, 2);
  std::stringstream ss;
  write_vtk(ss, *m, {{"error", std::vector<double>(4, 1.0)}});
  const std::string s = ss.str();
  CHECK(s.find("CELL_TYPES 4") != std::string::npos);
  CHECK(s.find("error") != std::string::npos);
  CHECK_THROWS_AS(write_vtk(ss, *m, {{"error", std::vector<double>(3, 1.0)}}), std::invalid_argument);
}

}
