// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/mesh.hpp"
#include "edgefem/reference_element.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace edgefem {

// Plain-text mesh: kind, vertices, cells with refinement levels, and the ids
// of boundary edges/faces (kept explicitly since non-conforming meshes cannot
// recover them by counting).
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

// Legacy ASCII VTK unstructured grid with optional cell scalars.
void write_vtk(std::ostream& out, const Mesh& mesh,
               const std::map<std::string, std::vector<double>>& cell_data = {});

// Shape functions and curls sampled on a lattice of the reference cell:
// one CSV row per (function, point).
void write_element_csv(std::ostream& out, const ReferenceElement& element, int samples);

}  // namespace edgefem
