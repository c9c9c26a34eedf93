#include <algorithm>
#include <random>

#include "buildings/complex.hpp"
#include "buildings/error.hpp"
#include "buildings/realizations.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace buildings;
using fixtures::dihedral;

namespace {

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

SimplicialComplex cyclic_complex(std::size_t n, std::vector<std::vector<std::size_t>> offsets) {
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& off : offsets) {
      Simplex f;
      for (std::size_t o : off) f.push_back((i + o) % n);
      facets.push_back(f);
    }
  return SimplicialComplex(numbered(n), facets);
}

std::vector<std::size_t> oracle_betti(const SimplicialComplex& k) {
  return oracle::betti_numbers(k.facets(), static_cast<std::size_t>(std::max(k.dimension(), 0)));
}

// Dense product of two boundary matrices, for the dd = 0 check.
bool composes_to_zero(const SparseMatrix& outer, const SparseMatrix& inner) {
  for (const auto& col : inner.columns) {
    std::vector<long long> acc(outer.rows, 0);
    for (const auto& [mid, v] : col)
      for (const auto& [row, w] : outer.columns[mid]) acc[row] += v * w;
    if (std::any_of(acc.begin(), acc.end(), [](long long x) { return x != 0; })) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("simplicial complexes keep maximal facets") {
  const SimplicialComplex k(numbered(5), {{0, 1, 2}, {1, 0}, {2, 3}, {2, 1, 0}});
  CHECK(k.facets() == std::vector<Simplex>{{0, 1, 2}, {2, 3}, {4}});
  CHECK(k.dimension() == 2);
  CHECK(k.simplices(0).size() == 5);
  CHECK(k.simplices(1).size() == 4);
  CHECK(k.simplices(2).size() == 1);
  CHECK(k.simplices(3).empty());
  CHECK(k.contains(std::vector<VertexId>{0, 2}));
  CHECK_FALSE(k.contains(std::vector<VertexId>{1, 3}));
  CHECK(k.find("v3") == VertexId{3});
  CHECK(k.star(2).size() == 2);

  CHECK_THROWS_AS(SimplicialComplex(numbered(2), {{0, 0}}), Error);
  CHECK_THROWS_AS(SimplicialComplex(numbered(2), {{0, 2}}), Error);
  CHECK_THROWS_AS(SimplicialComplex(numbered(2), {{}}), Error);
  CHECK_THROWS_AS(SimplicialComplex({"a", "a"}, {}), Error);
}

TEST_CASE("boundary of a boundary vanishes") {
  const std::vector<SimplicialComplex> complexes{
      cyclic_complex(7, {{0, 1, 3}, {0, 2, 3}}),          // 7-vertex torus
      SimplicialComplex(numbered(5), {{0, 1, 2, 3, 4}}),  // 4-simplex
      tits_realization(fixtures::fano().building).complex,
      davis_realization(cayley_building(validate_matrix({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}), 0).building).complex};
  for (const auto& k : complexes) {
    const ChainComplex cc = chain_complex(k, k.dimension());
    for (std::size_t d = 2; d < cc.boundaries.size(); ++d) CHECK(composes_to_zero(cc.boundaries[d - 1], cc.boundaries[d]));
  }
}

TEST_CASE("homology of small complexes") {
  CHECK(homology_ranks(cyclic_complex(6, {{0, 1}})) == std::vector<std::size_t>{1, 1});
  CHECK(homology_ranks(cyclic_complex(7, {{0, 1, 3}, {0, 2, 3}})) == std::vector<std::size_t>{1, 2, 1});
  for (std::size_t n = 1; n <= 6; ++n) {
    Simplex f(n);
    std::iota(f.begin(), f.end(), 0);
    const SimplicialComplex simplex(numbered(n), {f});
    std::vector<std::size_t> expected(n, 0);
    expected[0] = 1;
    CHECK(homology_ranks(simplex) == expected);
  }
  // Boundary of the tetrahedron is a 2-sphere.
  const SimplicialComplex sphere(numbered(4), {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(homology_ranks(sphere) == std::vector<std::size_t>{1, 0, 1});
  // 6-vertex real projective plane: no rational homology above degree 0.
  const SimplicialComplex rp2(numbered(6), {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
  CHECK(homology_ranks(rp2) == std::vector<std::size_t>{1, 0, 0});
  CHECK(homology_ranks(sphere, 4) == std::vector<std::size_t>{1, 0, 1, 0, 0});
  CHECK(homology_ranks(SimplicialComplex(numbered(3), {})) == std::vector<std::size_t>{3});

  // Against the dense mod-p oracle on random complexes.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Simplex> facets;
    for (int f = 0; f < 8; ++f) {
      Simplex s;
      for (VertexId v = 0; v < 7; ++v)
        if (rng() % 3 == 0) s.push_back(v);
      if (!s.empty()) facets.push_back(s);
    }
    const SimplicialComplex k(numbered(7), facets);
    CHECK(homology_ranks(k) == oracle_betti(k));
  }
}

TEST_CASE("rank survives int64 overflow") {
  std::mt19937_64 rng(5);
  std::vector<std::vector<long long>> a(12, std::vector<long long>(6)), b(6, std::vector<long long>(12));
  for (auto& row : a)
    for (auto& x : row) x = static_cast<long long>(rng() % 2000001) - 1000000;
  for (auto& row : b)
    for (auto& x : row) x = static_cast<long long>(rng() % 2000001) - 1000000;
  std::vector<std::vector<long long>> dense(12, std::vector<long long>(12, 0));
  SparseMatrix m{12, std::vector<std::vector<std::pair<std::size_t, long long>>>(12)};
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      for (std::size_t k = 0; k < 6; ++k) dense[i][j] += a[i][k] * b[k][j];
      if (dense[i][j] != 0) m.columns[j].push_back({i, dense[i][j]});
    }
  CHECK(oracle::rank_mod_p(dense) == 6);
  CHECK(rank(m) == 6);
}

TEST_CASE("Tits realization") {
  const auto hex = tits_realization(fixtures::hexagon());
  CHECK(hex.complex.vertex_count() == 6);
  CHECK(hex.complex.simplices(1).size() == 6);
  CHECK(homology_ranks(hex.complex) == std::vector<std::size_t>{1, 1});

  const auto fano = fixtures::fano();
  const auto tf = tits_realization(fano.building);
  CHECK(tf.complex.vertex_count() == 14);
  CHECK(tf.complex.simplices(1).size() == 21);
  CHECK(homology_ranks(tf.complex) == std::vector<std::size_t>{1, 8});
  CHECK(tf.complex.label(0).rfind("{1}:", 0) == 0);

  const auto panel = tits_realization(fixtures::panel(3));
  CHECK(panel.complex.vertex_count() == 3);
  CHECK(panel.complex.dimension() == 0);

  try {
    tits_realization(Building(validate_matrix({}), {"c"}, {}));
    FAIL("expected RankZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RankZero);
  }
}

TEST_CASE("Tits realization: chambers are maximal simplices, adjacency is a shared face") {
  const std::vector<Building> cases{fixtures::fano().building,
                                    cayley_building(validate_matrix({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}), 0).building,
                                    flag_building_from_incidence(cyclic_projective_plane(3)).building};
  for (const Building& b : cases) {
    const auto r = tits_realization(b);
    CHECK(r.complex.facets().size() == b.size());
    std::vector<std::size_t> sorted = r.chamber_map;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    for (ChamberId c = 0; c < b.size(); ++c)
      for (ChamberId d = c + 1; d < b.size(); ++d) {
        const Simplex& fc = r.complex.facets()[r.chamber_map[c]];
        const Simplex& fd = r.complex.facets()[r.chamber_map[d]];
        Simplex common;
        std::set_intersection(fc.begin(), fc.end(), fd.begin(), fd.end(), std::back_inserter(common));
        CHECK((common.size() + 1 == fc.size()) == b.edge_color(c, d).has_value());
      }
  }
}

TEST_CASE("Solomon-Tits at desk scale") {
  struct Case {
    Building b;
    std::size_t opposite;
  };
  const std::vector<Case> cases{
      {fixtures::hexagon(), 1},
      {fixtures::fano().building, 8},
      {flag_building_from_incidence(cyclic_projective_plane(3)).building, 27},
      {cayley_building(validate_matrix({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}), 0).building, 1},
      {cayley_building(validate_matrix({{1, 4, 2}, {4, 1, 3}, {2, 3, 1}}), 0).building, 1},
      {graph_product_building(fixtures::graph_product({3, 2}, {{0, 1}}), 0).building, 2},
  };
  for (const auto& [b, q] : cases) {
    for (ChamberId c = 0; c < b.size(); ++c) CHECK(opposite_count(b, c) == q);
    std::vector<std::size_t> expected(static_cast<std::size_t>(b.rank()), 0);
    expected[0] = 1;
    expected.back() = q;
    CHECK(homology_ranks(tits_realization(b).complex) == expected);
  }
  // Rank 1: a panel of k points; reduced b_0 counts the k - 1 opposite chambers.
  for (std::size_t k = 2; k <= 5; ++k) {
    const Building p = fixtures::panel(k);
    CHECK(opposite_count(p, 0) == k - 1);
    CHECK(homology_ranks(tits_realization(p).complex) == std::vector<std::size_t>{k});
  }
  CHECK_THROWS_AS(opposite_count(cayley_building(dihedral(kInfinity), 2).building, 0), Error);
}

TEST_CASE("Davis realization") {
  const auto hex = davis_realization(fixtures::hexagon());
  CHECK(hex.complex.vertex_count() == 13);
  CHECK(hex.complex.dimension() == 2);
  CHECK(homology_ranks(hex.complex, 1) == std::vector<std::size_t>{1, 0});
  CHECK(homology_ranks(hex.complex) == std::vector<std::size_t>{1, 0, 0});

  // Vertex census for thin buildings: sum over spherical J of |W| / |W_J|.
  const auto a3 = validate_matrix({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}});
  const auto da3 = davis_realization(cayley_building(a3, 0).building);
  CHECK(da3.complex.vertex_count() == 24 + 3 * 12 + 4 + 4 + 6 + 1);
  CHECK(homology_ranks(da3.complex) == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(da3.complex.label(da3.chamber_map[0]) == "{}:e");

  const auto fano = davis_realization(fixtures::fano().building);
  CHECK(fano.complex.vertex_count() == 21 + 7 + 7 + 1);
  CHECK(homology_ranks(fano.complex) == std::vector<std::size_t>{1, 0, 0});

  // Infinite dihedral ball of radius 2: a subdivided path.
  const auto line = davis_realization(cayley_building(dihedral(kInfinity), 2).building);
  CHECK(line.complex.vertex_count() == 9);
  CHECK(line.complex.simplices(1).size() == 8);
  CHECK(homology_ranks(line.complex) == std::vector<std::size_t>{1, 0});

  const auto edge = davis_realization(fixtures::panel(2));
  CHECK(edge.complex.vertex_count() == 3);
  CHECK(edge.complex.simplices(1).size() == 2);

  // A ball in a free product of two Z3's is a tree.
  const auto tree = davis_realization(graph_product_building(fixtures::graph_product({3, 3}, {}), 2).building);
  CHECK(homology_ranks(tree.complex) == std::vector<std::size_t>{1, 0});
  // Every chamber is a vertex.
  CHECK(tree.chamber_map.size() == 13);
}

TEST_CASE("Davis realization matches the homology oracle") {
  for (const Building& b : {fixtures::hexagon(), fixtures::fano().building,
                            cayley_building(validate_matrix({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}), 2).building}) {
    const auto d = davis_realization(b);
    CHECK(homology_ranks(d.complex) == oracle_betti(d.complex));
  }
}
