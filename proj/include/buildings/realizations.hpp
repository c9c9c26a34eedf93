#pragma once

#include <cstddef>
#include <vector>

#include "buildings/building.hpp"
#include "buildings/complex.hpp"

namespace buildings {

/// A residue used as a vertex: (J, sorted chamber set) identifies it.
struct ResidueVertex {
  GeneratorSet colors;
  std::vector<ChamberId> chambers;
  friend auto operator<=>(const ResidueVertex&, const ResidueVertex&) = default;
};

struct Realization {
  SimplicialComplex complex;
  std::vector<ResidueVertex> residues;  // residues[v] is vertex v
  /// Tits: the facet index of each chamber's maximal simplex.
  /// Davis: the vertex of each chamber (its J = {} residue).
  std::vector<std::size_t> chamber_map;
};

/// Vertices are the residues of cotype one, Res_{I - {i}}(c); each chamber
/// spans the simplex of its cotype-one residues. Throws RankZero.
///
/// Vertex labels are "{J}:name" with J the residue's colors and name the
/// least chamber name in it. In rank 1 the cotype-one residues are the
/// chambers themselves, so the result is a discrete set of points.
Realization tits_realization(const Building& b);

/// Vertices are the spherical residues; simplices are chains of nested
/// residues Res_{J0}(c) < ... < Res_{Jm}(c). For balls, residues that are
/// not complete (do not form a building of type W_J inside the ball) are
/// left out.
Realization davis_realization(const Building& b);

/// Number of chambers opposite c, i.e. at Weyl distance w0. Throws InfiniteW.
std::size_t opposite_count(const Building& b, ChamberId c);

}  // namespace buildings
