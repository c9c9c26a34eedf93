#include <algorithm>
#include <functional>
#include <set>

#include "buildings/building.hpp"
#include "buildings/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace buildings;
using fixtures::dihedral;

namespace {

// All galleries of length exactly m from a, by brute-force path enumeration.
std::vector<Gallery> all_galleries(const Building& b, ChamberId a, std::size_t m) {
  std::vector<Gallery> out;
  Gallery g{{a}, {}};
  std::function<void()> grow = [&] {
    if (g.type.size() == m) {
      out.push_back(g);
      return;
    }
    for (const Neighbor& n : b.neighbors(g.chambers.back())) {
      g.chambers.push_back(n.chamber);
      g.type.push_back(n.color);
      grow();
      g.chambers.pop_back();
      g.type.pop_back();
    }
  };
  grow();
  return out;
}

}  // namespace

TEST_CASE("construction rejects malformed graphs") {
  const auto sys = dihedral(3);
  CHECK_THROWS_AS(Building(sys, {"a", "a"}, {}), Error);
  CHECK_THROWS_AS(Building(sys, {"a", "b"}, {{0, 0, 0}}), Error);
  CHECK_THROWS_AS(Building(sys, {"a", "b"}, {{0, 1, 0}, {1, 0, 1}}), Error);
  CHECK_THROWS_AS(Building(sys, {"a", "b"}, {{0, 1, 2}}), Error);
  CHECK_THROWS_AS(Building(sys, {"a", "b"}, {{0, 5, 0}}), Error);
  try {
    Building(sys, {"a", "b"}, {{0, 1, 0}, {0, 1, 0}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedGraph);
  }
}

TEST_CASE("verify_axioms on the hexagon and its mutations") {
  const Building hex = fixtures::hexagon();
  CHECK(verify_axioms(hex).ok());
  CHECK(verify_axioms(hex).exhaustive);

  std::vector<Edge> edges = hex.edges();
  edges[0].color = 1 - edges[0].color;
  const AxiomReport bad = verify_axioms(fixtures::with_edges(hex, edges));
  CHECK_FALSE(bad.ok());
  const bool b1 = std::any_of(bad.violations.begin(), bad.violations.end(), [](const Violation& v) {
    return v.kind == Violation::Kind::NonTransitiveAdjacency || v.kind == Violation::Kind::MissingAdjacency;
  });
  CHECK(b1);
  CHECK_FALSE(bad.violations.front().describe(fixtures::with_edges(hex, edges)).empty());
}

TEST_CASE("verify_axioms detects a building of the wrong type") {
  // The hexagon satisfies (B1) but not (B2) over I2(4) or I2(2).
  const Building hex = fixtures::hexagon();
  for (int m : {2, 4, 5}) {
    const Building wrong(dihedral(m), hex.names(), hex.edges());
    const AxiomReport r = verify_axioms(wrong);
    CHECK_FALSE(r.ok());
    CHECK(std::all_of(r.violations.begin(), r.violations.end(), [](const Violation& v) {
      return v.kind == Violation::Kind::WeylDistanceMismatch ||
             v.kind == Violation::Kind::NonReducedMinimalGallery;
    }));
  }
}

TEST_CASE("rank zero single chamber is a building") {
  const Building single(validate_matrix({}), {"c"}, {});
  CHECK(verify_axioms(single).ok());
  CHECK(weyl_distance(single, 0, 0).empty());
}

TEST_CASE("disconnected graphs are reported") {
  const Building two(validate_matrix({{1}}), {"a", "b", "c", "d"}, {{0, 1, 0}, {2, 3, 0}});
  const AxiomReport r = verify_axioms(two);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.front().kind == Violation::Kind::Disconnected);
  CHECK_THROWS_AS(weyl_distance(two, 0, 2), Error);
  CHECK_THROWS_AS(minimal_gallery(two, 0, 3), Error);
}

TEST_CASE("weyl distance in thin buildings is a^-1 b") {
  for (const auto& m : std::vector<std::vector<std::vector<int>>>{
           {{1, 3}, {3, 1}}, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}, {{1, 4, 2}, {4, 1, 3}, {2, 3, 1}}}) {
    const auto sys = validate_matrix(m);
    const auto cb = cayley_building(sys, 0);
    for (ChamberId a = 0; a < cb.building.size(); ++a) {
      const auto all = weyl_distances_from(cb.building, a);
      for (ChamberId c = 0; c < cb.building.size(); ++c) {
        const Word expected = sys.multiply(sys.inverse(cb.elements[a]), cb.elements[c]);
        CHECK(sys.normal_form(*all[c]) == expected);
      }
    }
  }
  const Building hex = fixtures::hexagon();
  CHECK(weyl_distance(hex, 0, 0).empty());
}

TEST_CASE("Fano building: delta of opposite flags and l(delta) = graph distance") {
  const auto fano = fixtures::fano();
  const Building& b = fano.building;
  REQUIRE(b.size() == 21);
  for (ChamberId a = 0; a < b.size(); ++a) {
    const auto dist = graph_distances_from(b, a);
    for (ChamberId c = 0; c < b.size(); ++c) {
      const Word d = weyl_distance(b, a, c);
      CHECK(d.size() == dist[c]);
      CHECK(weyl_distance(b, c, a) == b.system().inverse(d));
      CHECK((d.empty() == (a == c)));
      if (dist[c] == 3) CHECK(d == Word{0, 1, 0});
    }
  }
  // Oracle: every minimal gallery between chambers at distance 3 has an
  // alternating type of length 3.
  for (const Gallery& g : all_galleries(b, 0, 3)) {
    if (graph_distances_from(b, 0)[g.chambers.back()] != 3) continue;
    CHECK(g.type[0] != g.type[1]);
    CHECK(g.type[1] != g.type[2]);
  }
}

TEST_CASE("minimal_gallery and gallery_of_type") {
  const Building hex = fixtures::hexagon();
  const ChamberId far = hex.at("0.1.0");
  const Gallery g = minimal_gallery(hex, 0, far);
  CHECK(g.chambers.size() == 4);
  CHECK(g.type.size() == 3);

  const auto trivial = gallery_of_type(hex, 2, Word{});
  REQUIRE(trivial);
  CHECK(trivial->chambers == std::vector<ChamberId>{2});
  CHECK_THROWS_AS(gallery_of_type(hex, 0, Word{0, 0}), Error);

  const auto fano = fixtures::fano();
  const Building& b = fano.building;
  const Word type{0, 1, 0};
  for (ChamberId a = 0; a < b.size(); ++a) {
    const auto first = gallery_of_type(b, a, type);
    REQUIRE(first);
    CHECK(gallery_of_type(b, a, type)->chambers == first->chambers);
    std::map<ChamberId, int> count;
    for (const Gallery& gal : all_galleries(b, a, 3))
      if (gal.type == type) ++count[gal.chambers.back()];
    const auto delta = weyl_distances_from(b, a);
    for (ChamberId c = 0; c < b.size(); ++c) {
      const bool opposite = b.system().normal_form(*delta[c]) == type;
      CHECK(count[c] == (opposite ? 1 : 0));
      const auto to_c = gallery_of_type(b, a, type, c);
      CHECK(to_c.has_value() == opposite);
      if (to_c) CHECK(to_c->chambers.back() == c);
    }
  }
}

TEST_CASE("residues") {
  const auto fano = fixtures::fano();
  const Building& b = fano.building;
  CHECK(residue(b, 4, GeneratorSet{}).chambers == std::vector<ChamberId>{4});
  const Residue p = residue(b, 4, GeneratorSet(0b01));
  CHECK(p.chambers.size() == 3);
  CHECK(p.building.rank() == 1);
  CHECK(verify_axioms(p.building).ok());
  CHECK(residue(b, 4, GeneratorSet(0b11)).chambers.size() == 21);
  CHECK_THROWS_AS(residue(b, 0, GeneratorSet(0b100)), Error);

  // Every residue of every test building is a building of type (W_J, J).
  for (const Building& bb : {fixtures::hexagon(), b}) {
    for (ChamberId c = 0; c < bb.size(); ++c)
      for (std::uint32_t bits = 0; bits < 4; ++bits) CHECK(verify_axioms(residue(bb, c, GeneratorSet(bits)).building).ok());
  }
}

TEST_CASE("thin, thick, locally finite") {
  CHECK(is_thin(fixtures::hexagon()));
  CHECK_FALSE(is_thick(fixtures::hexagon()));
  CHECK(is_thick(fixtures::fano().building));
  CHECK_FALSE(is_thin(fixtures::fano().building));
  const auto mixed = graph_product_building(fixtures::graph_product({2, 3}, {{0, 1}}), 0).building;
  CHECK(verify_axioms(mixed).ok());
  CHECK_FALSE(is_thin(mixed));
  CHECK_FALSE(is_thick(mixed));
  CHECK(is_locally_finite(mixed));
}

TEST_CASE("apartments") {
  CHECK(enumerate_apartments(fixtures::hexagon()).size() == 1);

  const auto panel = enumerate_apartments(fixtures::panel(3));
  REQUIRE(panel.size() == 3);
  CHECK(panel[0].chambers == std::vector<ChamberId>{0, 1});
  CHECK(panel[1].chambers == std::vector<ChamberId>{0, 2});
  CHECK(panel[2].chambers == std::vector<ChamberId>{1, 2});

  // Oracle: apartments of the Fano flag building are the flags of triangles
  // (three non-collinear points and the three lines joining them).
  const auto fano = fixtures::fano();
  const auto plane = oracle::fano_plane();
  std::set<std::vector<ChamberId>> expected;
  const auto line_through = [&](std::size_t p, std::size_t q) {
    for (std::size_t l = 0; l < plane.lines.size(); ++l) {
      const auto& L = plane.lines[l];
      if (std::count(L.begin(), L.end(), p) && std::count(L.begin(), L.end(), q)) return l;
    }
    return plane.lines.size();
  };
  for (std::size_t p = 0; p < 7; ++p)
    for (std::size_t q = p + 1; q < 7; ++q)
      for (std::size_t r = q + 1; r < 7; ++r) {
        const std::size_t pq = line_through(p, q), pr = line_through(p, r), qr = line_through(q, r);
        if (pq == pr) continue;  // collinear
        std::vector<ChamberId> flags;
        for (ChamberId c = 0; c < fano.flags.size(); ++c) {
          const auto [pt, ln] = fano.flags[c];
          if ((pt == p && (ln == pq || ln == pr)) || (pt == q && (ln == pq || ln == qr)) ||
              (pt == r && (ln == pr || ln == qr)))
            flags.push_back(c);
        }
        expected.insert(flags);
      }
  REQUIRE(expected.size() == 28);
  const auto apartments = enumerate_apartments(fano.building);
  CHECK(apartments.size() == 28);
  std::set<std::vector<ChamberId>> found;
  for (const auto& a : apartments) found.insert(a.chambers);
  CHECK(found == expected);

  CHECK_THROWS_AS(enumerate_apartments(cayley_building(dihedral(kInfinity), 2).building), Error);
}

TEST_CASE("balls") {
  const Building hex = fixtures::hexagon();
  CHECK(ball(hex, 0, 0).size() == 1);
  const Building b1 = ball(hex, 0, 1);
  CHECK(b1.size() == 3);
  CHECK(b1.edges().size() == 2);
  CHECK(b1.ball().has_value());
  CHECK(verify_axioms(b1).ok());
  const Building f1 = ball(fixtures::fano().building, 0, 1);
  CHECK(f1.size() == 5);
  CHECK(verify_axioms(f1).ok());
  CHECK(verify_axioms(ball(fixtures::fano().building, 3, 2)).ok());
}
