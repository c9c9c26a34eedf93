#include <doctest.h>

#include "buildings/error.hpp"
#include "buildings/io.hpp"
#include "buildings/realizations.hpp"
#include "fixtures.hpp"

using namespace buildings;
using io::Json;

namespace {

Json reparse(const Json& doc) { return io::parse(io::dump(doc)); }

bool same_building(const Building& a, const Building& b) {
  if (a.names() != b.names() || !(a.system().matrix() == b.system().matrix())) return false;
  if (a.ball().has_value() != b.ball().has_value()) return false;
  if (a.ball() && (a.ball()->center != b.ball()->center || a.ball()->radius != b.ball()->radius)) return false;
  for (ChamberId x = 0; x < a.size(); ++x)
    for (ChamberId y = 0; y < a.size(); ++y)
      if (a.edge_color(x, y) != b.edge_color(x, y)) return false;
  return true;
}

}  // namespace

TEST_CASE("dump sorts keys and prints 12 significant digits") {
  const Json doc{{"b", 1.0 / 3.0}, {"a", Json::array({1, 2})}, {"c", {{"z", true}, {"y", nullptr}}}};
  CHECK(io::dump(doc) == "{\n  \"a\": [1, 2],\n  \"b\": 0.333333333333,\n  \"c\": {\n    \"y\": null,\n    \"z\": true\n  }\n}\n");
  CHECK(io::dump(Json(std::numeric_limits<double>::infinity())) == "null\n");
  CHECK(io::dump(Json::array({Json::array({1}), Json::array()})) == "[\n  [1],\n  []\n]\n");
}

TEST_CASE("Coxeter and word round trips") {
  const auto W = validate_matrix({{1, 4, 2}, {4, 1, kInfinity}, {2, kInfinity, 1}});
  const Json doc = io::to_json(W);
  CHECK(doc["m"][1][2] == 0);
  CHECK(io::coxeter_from_json(reparse(doc)).matrix() == W.matrix());
  CHECK(io::word_from_json(io::word_to_json(Word{0, 2, 1})) == Word{0, 2, 1});
  CHECK_THROWS_AS(io::coxeter_from_json(Json{{"rank", 2}, {"m", {{1, 3, 2}, {3, 1, 2}, {2, 2, 1}}}}), Error);
  CHECK_THROWS_AS(io::coxeter_from_json(Json{{"rank", 2}}), Error);
  CHECK_THROWS_AS(io::coxeter_from_json(Json{{"m", "x"}}), Error);
  // Module validation errors pass through unchanged.
  try {
    io::coxeter_from_json(Json{{"m", {{1, 3}, {2, 1}}}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AsymmetricMatrix);
  }
}

TEST_CASE("building round trips") {
  for (const Building& b :
       {fixtures::hexagon(), fixtures::fano().building,
        cayley_building(fixtures::dihedral(kInfinity), 3).building,
        ball(fixtures::fano().building, 5, 2)}) {
    const Building back = io::building_from_json(reparse(io::to_json(b)));
    CHECK(same_building(b, back));
    CHECK(verify_axioms(back).ok() == verify_axioms(b).ok());
  }
  const Json bad_edge = {{"coxeter", io::to_json(fixtures::dihedral(3))}, {"chambers", {"a", "b"}}, {"edges", {{"a", "b"}}}};
  CHECK_THROWS_AS(io::building_from_json(bad_edge), Error);
  const Json unknown = {{"coxeter", io::to_json(fixtures::dihedral(3))}, {"chambers", {"a"}}, {"edges", {{"a", "q", 0}}}};
  CHECK_THROWS_AS(io::building_from_json(unknown), Error);
}

TEST_CASE("construction specs") {
  const auto g = io::group_from_json(reparse(io::to_json(fixtures::klein_four())));
  CHECK(g.table() == fixtures::klein_four().table());
  CHECK(io::group_from_json(Json(5)).order() == 5);
  CHECK_THROWS_AS(io::group_from_json(Json(0)), Error);
  CHECK_THROWS_AS(io::group_from_json(Json{{"order", 2}, {"table", {{0, 1}, {1, 1}}}}), Error);

  const auto spec = fixtures::graph_product({2, 3, 2}, {{0, 1}});
  const auto back = io::graph_product_from_json(reparse(io::to_json(spec)));
  CHECK(back.gamma_edges == spec.gamma_edges);
  CHECK(back.groups.size() == 3);
  CHECK(back.groups[1].table() == spec.groups[1].table());
  CHECK(io::graph_product_from_json(Json{{"groups", {2, 2}}}).rank() == 2);

  const auto plane = cyclic_projective_plane(2);
  const auto geometry = io::incidence_from_json(reparse(io::to_json(plane)));
  CHECK(geometry.points == plane.points);
  CHECK(geometry.lines == plane.lines);
  CHECK_THROWS_AS(io::incidence_from_json(Json{{"points", {"p"}}, {"lines", {{0, 1}}}}), Error);
}

TEST_CASE("complex and shape round trips") {
  const auto r = tits_realization(fixtures::fano().building);
  const auto k = io::complex_from_json(reparse(io::to_json(r.complex)));
  CHECK(k.labels() == r.complex.labels());
  CHECK(k.facets() == r.complex.facets());

  const std::string off = io::to_off(r.complex);
  CHECK(off.rfind("OFF\n14 21 0\n", 0) == 0);

  // Unit square split along the diagonal {0, 2}.
  const SimplicialComplex square({"a", "b", "c", "d"}, {{0, 1, 2}, {0, 2, 3}});
  const Shape right{{{0, 1, std::sqrt(2.0)}, {1, 0, 1}, {std::sqrt(2.0), 1, 0}}};
  const MZeroComplex mc(square, {right}, {{0, 0, {0, 1, 2}}, {1, 0, {0, 2, 1}}});
  const MZeroComplex back = io::shapes_from_json(reparse(io::shapes_to_json(mc)), square);
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = 0; v < 4; ++v)
      if (square.contains(std::vector<VertexId>{std::min(u, v), std::max(u, v)}))
        CHECK(back.edge_length(u, v) == doctest::Approx(mc.edge_length(u, v)).epsilon(1e-11));

  const Json not_facet = {{"shapes", {{{"dim", 1}, {"edge_lengths", {{0, 1}, {1, 0}}}}}}, {"assignment", {{{0, 1}, 0, {0, 1}}}}};
  CHECK_THROWS_AS(io::shapes_from_json(not_facet, square), Error);
  const Json bad_dim = {{"shapes", {{{"dim", 3}, {"edge_lengths", {{0, 1}, {1, 0}}}}}}, {"assignment", Json::array()}};
  CHECK_THROWS_AS(io::shapes_from_json(bad_dim, square), Error);
}

TEST_CASE("action round trip") {
  auto b = std::make_shared<const Building>(fixtures::fano().building);
  const ActionSpec aut = automorphism_group(b);
  const ActionSpec back = io::action_from_json(reparse(io::to_json(aut)));
  CHECK(back.generators == aut.generators);
  CHECK(back.order == aut.order);
  CHECK(same_building(*back.building, *b));
  CHECK(io::order_to_json(GroupOrder(168)) == 168);
  GroupOrder huge = 1;
  for (int i = 1; i <= 30; ++i) huge *= i;
  CHECK(io::order_to_json(huge).is_string());
  CHECK(io::action_from_json(Json{{"building", io::to_json(*b)}, {"generators", Json::array()}, {"order", huge.str()}}).order ==
        huge);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(io::parse("{"), Error);
  CHECK_THROWS_AS(io::read_file("data/does-not-exist.json"), Error);
  try {
    io::parse("[1,");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}
