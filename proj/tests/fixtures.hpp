// Small buildings shared by the test suites.
#pragma once

#include "buildings/building.hpp"
#include "buildings/constructions.hpp"
#include "buildings/coxeter.hpp"

namespace fixtures {

using namespace buildings;

inline CoxeterSystem dihedral(int m) { return validate_matrix({{1, m}, {m, 1}}); }

/// Thin I2(3) building: the 2-colored hexagon.
inline Building hexagon() { return cayley_building(dihedral(3), 0).building; }

inline FlagBuilding fano() { return flag_building_from_incidence(cyclic_projective_plane(2)); }

/// Rank-1 building with a single panel of the given size.
inline Building panel(std::size_t size) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < size; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t j = 0; j < i; ++j) edges.push_back({j, i, 0});
  }
  return Building(validate_matrix({{1}}), names, edges);
}

/// Rebuilds `b` with its edge list replaced.
inline Building with_edges(const Building& b, std::vector<Edge> edges) {
  return Building(b.system(), b.names(), std::move(edges), b.ball());
}

inline GraphProductSpec graph_product(std::vector<std::size_t> orders, std::vector<std::pair<int, int>> gamma) {
  GraphProductSpec spec;
  for (auto k : orders) spec.groups.push_back(FiniteGroupTable::cyclic(k));
  spec.gamma_edges = std::move(gamma);
  return spec;
}

inline FiniteGroupTable klein_four() {
  return FiniteGroupTable({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

}  // namespace fixtures
