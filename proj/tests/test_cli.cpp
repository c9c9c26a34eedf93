#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "buildings/cli.hpp"
#include "buildings/error.hpp"
#include "buildings/realizations.hpp"
#include "fixtures.hpp"

using namespace buildings;
using cli::Status;
using io::Json;

namespace {

cli::CommandResult run(std::vector<std::string> args) { return cli::run(args); }

// A scratch file under the system temp directory.
std::string scratch(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "buildings-cli-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string scratch(const std::string& name, const Json& doc) { return scratch(name, io::dump(doc)); }

}  // namespace

TEST_CASE("documented examples") {
  auto r = run({"verify", "--building", "data/hexagon.json"});
  CHECK(r.status == Status::Ok);
  CHECK(r.payload == Json{{"axioms", "pass"}, {"thin", true}});

  r = run({"homology", "--building", "data/fano.json", "--realization", "tits"});
  CHECK(r.payload == Json{{"betti", {1, 8}}});

  r = run({"delta", "--building", "data/hexagon.json", "--from", "c0", "--to", "c3"});
  CHECK(r.payload == Json{{"delta", {0, 1, 0}}});
}

TEST_CASE("exit codes") {
  CHECK(cli::exit_code(Status::Ok) == 0);
  CHECK(cli::exit_code(Status::ViolationFound) == 1);
  CHECK(cli::exit_code(Status::Error) == 2);

  auto r = run({"frobnicate"});
  CHECK(r.status == Status::Error);
  CHECK(r.payload["error"] == "UnknownSubcommand");
  r = run({});
  CHECK(r.status == Status::Error);
  r = run({"verify"});
  CHECK(r.payload["error"] == "ParseError");
  r = run({"verify", "--building", "data/missing.json"});
  CHECK(r.payload["error"] == "ParseError");
  r = run({"delta", "--building", "data/hexagon.json", "--from", "c0", "--to", "zz"});
  CHECK(r.status == Status::Error);
  CHECK(r.payload["module"] == "building");
  CHECK(r.diagnostics.front().rfind("building: UnknownChamber", 0) == 0);
  r = run({"realize", "--building", "data/hexagon.json", "--realization", "cubes"});
  CHECK(r.status == Status::Error);

  // A broken hexagon is a successful analysis with a violation verdict.
  Json broken = io::read_file("data/hexagon.json");
  broken["edges"][0][2] = 1;
  r = run({"verify", "--building", scratch("broken.json", broken)});
  CHECK(r.status == Status::ViolationFound);
  CHECK(r.payload["axioms"] == "fail");
  CHECK_FALSE(r.payload["violations"].empty());

  const auto help = run({"--help"});
  CHECK(help.status == Status::Ok);
  CHECK(help.text->find("transitivity") != std::string::npos);
}

TEST_CASE("build output reads back") {
  const std::string a3 = scratch("a3.json", Json{{"rank", 3}, {"m", {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}}});
  auto r = run({"build", "--coxeter", a3});
  REQUIRE(r.status == Status::Ok);
  CHECK(r.payload["chambers"].size() == 24);
  auto v = run({"verify", "--building", scratch("a3b.json", r.payload)});
  CHECK(v.payload == Json{{"axioms", "pass"}, {"thin", true}});

  const std::string gp = scratch("gp.json", Json{{"groups", {3, 3}}, {"gamma_edges", Json::array()}});
  r = run({"build", "--graph-product", gp, "--radius", "2"});
  REQUIRE(r.status == Status::Ok);
  CHECK(r.payload["chambers"].size() == 13);
  CHECK(r.payload["ball_of_radius"] == 2);
  v = run({"verify", "--building", scratch("gpb.json", r.payload)});
  CHECK(v.status == Status::Ok);

  r = run({"build", "--incidence", "data/fano_incidence.json"});
  CHECK(io::building_from_json(r.payload).names() == io::building_from_json(io::read_file("data/fano.json")).names());
  CHECK(run({"build"}).status == Status::Error);

  r = run({"coxeter", "--coxeter", a3, "--word", "0,1,0,1", "--radius", "3"});
  CHECK(r.payload["order"] == 24);
  CHECK(r.payload["reduced"] == Json{1, 0});
  CHECK(r.payload["length"] == 2);
  CHECK(r.payload["growth"] == Json{1, 3, 5, 6});
}

TEST_CASE("residues, apartments and realizations") {
  auto r = run({"residue", "--building", "data/fano.json", "--chamber", "0/L0", "--colors", "0"});
  CHECK(r.payload["chambers"].size() == 3);
  r = run({"apartments", "--building", "data/fano.json"});
  CHECK(r.payload["count"] == 28);

  r = run({"realize", "--building", "data/hexagon.json", "--realization", "davis"});
  const SimplicialComplex k = io::complex_from_json(r.payload);
  CHECK(k.vertex_count() == 13);
  CHECK(k.facets() == davis_realization(io::building_from_json(io::read_file("data/hexagon.json"))).complex.facets());
  auto h = run({"homology", "--complex", scratch("davis.json", r.payload)});
  CHECK(h.payload["betti"] == Json{1, 0, 0});

  r = run({"realize", "--building", "data/fano.json", "--format", "text"});
  REQUIRE(r.text);
  CHECK(r.text->rfind("OFF\n14 21 0", 0) == 0);
}

TEST_CASE("metric and properness") {
  const std::string complex = scratch("square.json", Json{{"vertices", {"a", "b", "c", "d"}}, {"facets", {{0, 1, 2}, {0, 2, 3}}}});
  const double r2 = std::sqrt(2.0);
  const std::string shapes =
      scratch("square_shapes.json",
              Json{{"shapes", {{{"dim", 2}, {"edge_lengths", {{0, 1, r2}, {1, 0, 1}, {r2, 1, 0}}}}}},
                   {"assignment", {{{0, 1, 2}, 0, {0, 1, 2}}, {{0, 2, 3}, 0, {0, 2, 1}}}}});
  auto r = run({"metric", "--complex", complex, "--shapes", shapes, "--from", "b", "--to", "d"});
  REQUIRE(r.status == Status::Ok);
  CHECK(r.payload["distance"].get<double>() == doctest::Approx(r2).epsilon(1e-9));
  CHECK(r.payload["converged"] == true);
  CHECK(run({"metric", "--complex", complex, "--from", "b"}).status == Status::Error);

  r = run({"proper", "--complex", complex, "--shapes", shapes, "--from", "a", "--radius", "1.5"});
  CHECK(r.status == Status::Ok);
  CHECK(r.payload["locally_finite"] == true);
  CHECK(r.payload["ball_facets"].size() == 2);

  r = run({"proper", "--lazy", "star", "--radius", "1"});
  CHECK(r.status == Status::ViolationFound);
  CHECK(r.payload["locally_finite"] == false);
  CHECK(r.payload["ball_unbounded"] == true);
  r = run({"proper", "--lazy", "halfline", "--radius", "2.5"});
  CHECK(r.status == Status::Ok);
}

TEST_CASE("actions through files") {
  auto r = run({"aut", "--building", "data/fano.json"});
  REQUIRE(r.status == Status::Ok);
  CHECK(r.payload["order"] == 168);
  const std::string aut = scratch("aut.json", r.payload);
  CHECK(run({"transitivity", "--action", aut}).status == Status::Ok);
  CHECK(run({"transitivity", "--action", aut, "--kind", "strong"}).payload["transitive"] == true);
  r = run({"proper", "--action", aut, "--depth", "32"});
  CHECK(r.payload["count"] == 8);
  CHECK(r.payload["closed"] == true);

  // Singer cycle and multiplication by 2, referencing the building by path.
  const auto fb = fixtures::fano();
  std::vector<std::size_t> shift, twice;
  for (std::size_t p = 0; p < 7; ++p) {
    shift.push_back((p + 1) % 7);
    twice.push_back((2 * p) % 7);
  }
  const std::string building = std::filesystem::absolute("data/fano.json").string();
  const std::string singer =
      scratch("singer.json", Json{{"building", building},
                                  {"generators", {collineation_action(fb, shift), collineation_action(fb, twice)}}});
  CHECK(run({"transitivity", "--action", singer, "--kind", "chamber"}).status == Status::Ok);
  r = run({"transitivity", "--action", singer});
  CHECK(r.status == Status::ViolationFound);
  CHECK(r.payload["transitive"] == false);

  const std::string bad = scratch("bad.json", Json{{"building", building}, {"generators", {{0, 0}}}});
  r = run({"transitivity", "--action", bad});
  CHECK(r.payload["error"] == "NotAPermutation");
}
