#pragma once

#include <random>
#include <vector>

#include "cubetop/complex.hpp"
#include "cubetop/cstructure.hpp"
#include "cubetop/fpgroup.hpp"

namespace testsupport {

// Connected random cube blob grown from the origin, mostly through faces
// with occasional diagonal contacts.
cubetop::ToplexSet random_connected_complex(std::mt19937_64& rng, int cubes);

// Solid nx x ny x nz block of cubes.
cubetop::ToplexSet solid_block(int nx, int ny, int nz);

// 3x3x1 ring of cubes with the middle column missing (a solid torus).
cubetop::ToplexSet torus_ring();

// Hollow 3x3x3 shell (center cube removed).
cubetop::ToplexSet hollow_shell();

// Connected random C-structure: a connected multigraph plus faces whose
// boundary words are closed walks.
cubetop::CStructure random_cstructure(std::mt19937_64& rng, int vertices, int extra_edges,
                                      int faces);

// Independent H_1 oracle: Smith normal form of the boundary matrices of the
// original structure. rank = dim ker d1 - rank d2, torsion from d2.
cubetop::AbelianGroup h1_from_boundary_matrices(const cubetop::CStructure& c);

}  // namespace testsupport
