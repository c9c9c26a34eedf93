#include "buildings/cli.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <CLI11.hpp>

#include "buildings/actions.hpp"
#include "buildings/error.hpp"
#include "buildings/metric.hpp"
#include "buildings/realizations.hpp"

namespace buildings::cli {

namespace {

using io::Json;

constexpr std::array kSubcommands{"coxeter",    "build",    "verify", "delta", "residue", "apartments",
                                  "realize",    "homology", "metric", "aut",   "transitivity", "proper"};

struct Options {
  std::string building, coxeter, action, complex, shapes, graph_product, incidence;
  std::string realization = "tits", format = "json", kind = "weyl", lazy;
  std::string from, to, chamber;
  std::vector<int> colors, word;
  std::optional<std::size_t> radius;
  double real_radius = 1.0;
  double tol = 1e-9;
  std::size_t depth = 16;
};

Building load_building(const std::string& path) { return io::building_from_json(io::read_file(path)); }

ActionSpec load_action(const std::string& path) {
  const std::filesystem::path p(path);
  return io::action_from_json(io::read_file(p), path == "-" ? std::filesystem::path{} : p.parent_path());
}

Json names(const Building& b, std::span<const ChamberId> chambers) {
  Json out = Json::array();
  for (ChamberId c : chambers) out.push_back(b.name(c));
  return out;
}

Json subsets_json(const std::vector<GeneratorSet>& sets) {
  Json out = Json::array();
  for (GeneratorSet J : sets) out.push_back(J.indices());
  return out;
}

Realization realize(const Building& b, const std::string& which) {
  return which == "davis" ? davis_realization(b) : tits_realization(b);
}

// The complex from --complex, or a realization of --building.
SimplicialComplex load_complex(const Options& o) {
  if (!o.complex.empty()) return io::complex_from_json(io::read_file(o.complex));
  if (o.building.empty()) throw Error(Errc::ParseError, "cli", "need --complex or --building");
  return realize(load_building(o.building), o.realization).complex;
}

MZeroComplex load_metric(const Options& o) {
  SimplicialComplex k = load_complex(o);
  if (!o.shapes.empty()) return io::shapes_from_json(io::read_file(o.shapes), std::move(k));
  return MZeroComplex::regular(std::move(k));
}

VertexId vertex(const SimplicialComplex& k, const std::string& label) {
  if (auto v = k.find(label)) return *v;
  throw Error(Errc::BadComplex, "metric", "unknown vertex \"" + label + "\"");
}

CommandResult coxeter(const Options& o) {
  const CoxeterSystem W = io::coxeter_from_json(io::read_file(o.coxeter));
  Json p{{"rank", W.rank()}, {"finite", W.is_finite()}, {"spherical_subsets", subsets_json(W.spherical_subsets())}};
  if (W.is_finite()) {
    p["order"] = W.all_elements().size();
    p["longest_element"] = io::word_to_json(W.longest_element());
  } else {
    p["order"] = nullptr;
  }
  if (!o.word.empty()) {
    p["reduced"] = io::word_to_json(W.reduce(o.word));
    p["length"] = W.length(o.word);
  }
  if (o.radius) {
    std::vector<std::size_t> growth(*o.radius + 1, 0);
    for (const Word& w : W.enumerate_elements(*o.radius)) ++growth[w.size()];
    p["growth"] = growth;
  }
  return {Status::Ok, p, {}, std::nullopt};
}

CommandResult build(const Options& o) {
  const int given = !o.coxeter.empty() + !o.graph_product.empty() + !o.incidence.empty();
  if (given != 1) throw Error(Errc::ParseError, "cli", "give exactly one of --coxeter, --graph-product, --incidence");
  const std::size_t radius = o.radius.value_or(2);
  if (!o.coxeter.empty())
    return {Status::Ok, io::to_json(cayley_building(io::coxeter_from_json(io::read_file(o.coxeter)), radius).building),
            {}, std::nullopt};
  if (!o.graph_product.empty())
    return {Status::Ok,
            io::to_json(graph_product_building(io::graph_product_from_json(io::read_file(o.graph_product)), radius)
                            .building),
            {}, std::nullopt};
  return {Status::Ok, io::to_json(flag_building_from_incidence(io::incidence_from_json(io::read_file(o.incidence))).building),
          {}, std::nullopt};
}

CommandResult verify(const Options& o) {
  const Building b = load_building(o.building);
  const AxiomReport report = verify_axioms(b);
  CommandResult r{report.ok() ? Status::Ok : Status::ViolationFound,
                  {{"axioms", report.ok() ? "pass" : "fail"}, {"thin", is_thin(b)}}, {}, std::nullopt};
  if (!report.ok()) {
    Json v = Json::array();
    for (const Violation& x : report.violations) {
      v.push_back(x.describe(b));
      r.diagnostics.push_back("violation: " + x.describe(b));
    }
    r.payload["violations"] = v;
  }
  return r;
}

CommandResult delta(const Options& o) {
  const Building b = load_building(o.building);
  return {Status::Ok, {{"delta", io::word_to_json(weyl_distance(b, b.at(o.from), b.at(o.to)))}}, {}, std::nullopt};
}

CommandResult residue_cmd(const Options& o) {
  const Building b = load_building(o.building);
  const ChamberId c = o.chamber.empty() ? 0 : b.at(o.chamber);
  const Residue r = residue(b, c, GeneratorSet::of(o.colors));
  return {Status::Ok, {{"chambers", names(b, r.chambers)}, {"building", io::to_json(r.building)}}, {}, std::nullopt};
}

CommandResult apartments(const Options& o) {
  const Building b = load_building(o.building);
  Json list = Json::array();
  const auto atlas = enumerate_apartments(b);
  for (const Apartment& a : atlas) list.push_back(names(b, a.chambers));
  return {Status::Ok, {{"count", atlas.size()}, {"apartments", list}}, {}, std::nullopt};
}

CommandResult realize_cmd(const Options& o) {
  const Realization r = realize(load_building(o.building), o.realization);
  CommandResult out{Status::Ok, io::to_json(r.complex), {}, std::nullopt};
  if (o.format == "text") out.text = io::to_off(r.complex);
  return out;
}

CommandResult homology(const Options& o) {
  const SimplicialComplex k = load_complex(o);
  return {Status::Ok, {{"betti", homology_ranks(k)}}, {}, std::nullopt};
}

CommandResult metric(const Options& o) {
  const MZeroComplex mc = load_metric(o);
  CommandResult r{Status::Ok,
                  {{"separation", vertex_separation(mc)}, {"dimension", mc.complex().dimension()},
                   {"vertices", mc.complex().vertex_count()}},
                  {},
                  std::nullopt};
  if (o.from.empty() != o.to.empty()) throw Error(Errc::ParseError, "cli", "--from and --to go together");
  if (!o.from.empty()) {
    DistanceOptions opts;
    opts.tol = o.tol;
    const auto d = intrinsic_distance(mc, ComplexPoint::vertex(vertex(mc.complex(), o.from)),
                                      ComplexPoint::vertex(vertex(mc.complex(), o.to)), opts);
    r.payload["distance"] = d.distance;
    r.payload["converged"] = d.converged;
    r.payload["levels"] = d.levels;
    if (!d.converged) r.diagnostics.push_back("metric: ToleranceNotReached: distance is an upper bound");
  }
  return r;
}

CommandResult aut(const Options& o) {
  const ActionSpec spec = automorphism_group(std::make_shared<const Building>(load_building(o.building)));
  return {Status::Ok, io::to_json(spec), {}, std::nullopt};
}

Json classes_json(const OrbitReport& report) {
  Json out = Json::array();
  for (const OrbitClass& c : report.classes) {
    Json sizes = Json::array();
    for (const Orbit& orbit : c.orbits) sizes.push_back(orbit.members.size());
    out.push_back({{"label", c.label}, {"size", c.items.size()}, {"orbits", sizes}});
  }
  return out;
}

CommandResult transitivity(const Options& o) {
  const ActionSpec spec = load_action(o.action);
  OrbitReport report;
  if (o.kind == "chamber")
    report = chamber_orbits(spec);
  else if (o.kind == "strong")
    report = is_strongly_transitive_max_atlas(spec);
  else
    report = is_weyl_transitive(spec);
  CommandResult r{report.transitive ? Status::Ok : Status::ViolationFound,
                  {{"kind", o.kind}, {"transitive", report.transitive}, {"classes", classes_json(report)}},
                  {},
                  std::nullopt};
  if (report.weyl_transitive) r.payload["weyl_transitive"] = *report.weyl_transitive;
  if (!report.transitive) r.diagnostics.push_back("the action is not " + o.kind + "-transitive");
  return r;
}

Json facets_json(const std::vector<Simplex>& facets, const SimplicialComplex* labels) {
  Json out = Json::array();
  for (const Simplex& f : facets) {
    Json s = Json::array();
    for (VertexId v : f) labels ? s.push_back(labels->label(v)) : s.push_back(v);
    out.push_back(s);
  }
  return out;
}

CommandResult proper(const Options& o) {
  if (!o.action.empty()) {
    const ActionSpec spec = load_action(o.action);
    const ChamberId c = o.chamber.empty() ? 0 : spec.building->at(o.chamber);
    const std::vector<ChamberId> B{c};
    const auto cert = properness_certificate(spec, B, B, o.depth);
    CommandResult r{Status::Ok,
                    {{"chamber", spec.building->name(c)},
                     {"count", cert.elements.size()},
                     {"closed", cert.closed},
                     {"depth", cert.depth},
                     {"elements", cert.elements}},
                    {},
                    std::nullopt};
    if (!cert.closed) r.diagnostics.push_back("group search did not close; the set covers word length <= depth only");
    return r;
  }

  ProperOptions opts;
  ProperReport report;
  std::optional<MZeroComplex> mc;
  if (!o.lazy.empty()) {
    if (o.lazy == "star")
      report = check_properness(InfiniteStar(), 0, o.real_radius, opts);
    else if (o.lazy == "halfline")
      report = check_properness(HalfLine(), 0, o.real_radius, opts);
    else
      throw Error(Errc::ParseError, "cli", "--lazy takes star or halfline");
  } else {
    mc.emplace(load_metric(o));
    const VertexId base = o.from.empty() ? 0 : vertex(mc->complex(), o.from);
    report = check_properness(ExplicitSource(*mc), base, o.real_radius, opts);
  }
  const SimplicialComplex* labels = mc ? &mc->complex() : nullptr;
  const bool proper = report.locally_finite && !report.ball_unbounded;
  CommandResult r{proper ? Status::Ok : Status::ViolationFound,
                  {{"locally_finite", report.locally_finite},
                   {"partial", report.partial},
                   {"ball_unbounded", report.ball_unbounded},
                   {"separation", report.separation},
                   {"chain_bound", report.chain_bound},
                   {"ball_facets", facets_json(report.ball_facets, labels)},
                   {"infinite_vertices", report.infinite_vertices}},
                  {},
                  std::nullopt};
  if (!proper) r.diagnostics.push_back("not locally finite: the ball meets more simplices than the declared bound");
  return r;
}

std::string text_form(const Json& payload) {
  if (!payload.is_object()) return io::dump(payload);
  std::ostringstream out;
  for (auto it = payload.begin(); it != payload.end(); ++it) out << it.key() << ": " << it.value().dump() << '\n';
  return out.str();
}

CommandResult failure(const Error& e) {
  return {Status::Error,
          {{"error", std::string(to_string(e.code()))}, {"module", e.module()}, {"message", e.what()}},
          {e.what()},
          std::nullopt};
}

}  // namespace

int exit_code(Status status) {
  switch (status) {
    case Status::Ok:
      return 0;
    case Status::ViolationFound:
      return 1;
    case Status::Error:
      break;
  }
  return 2;
}

std::string render(const CommandResult& result) { return result.text ? *result.text : io::dump(result.payload); }

CommandResult run(const std::vector<std::string>& args) {
  if (!args.empty() && !args.front().starts_with('-') &&
      std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end())
    return failure(Error(Errc::UnknownSubcommand, "cli", "unknown subcommand \"" + args.front() + "\""));

  Options o;
  CLI::App app{"Construct, verify and measure buildings.", "buildings"};
  app.require_subcommand(1);
  const auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  const auto building = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--building", o.building, "building JSON file ('-' for stdin)");
    if (required) opt->required();
  };
  const auto realization = [&](CLI::App* cmd) {
    cmd->add_option("--realization", o.realization, "tits or davis")->check(CLI::IsMember({"tits", "davis"}));
  };
  const auto format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* coxeter_cmd = add("coxeter", "Properties of a Coxeter system; optionally reduce a word");
  coxeter_cmd->add_option("--coxeter", o.coxeter, "Coxeter matrix JSON")->required();
  coxeter_cmd->add_option("--word", o.word, "word to reduce, e.g. 0,1,0")->delimiter(',');
  coxeter_cmd->add_option("--radius", o.radius, "report the growth series up to this length");

  auto* build_cmd = add("build", "Construct a building");
  build_cmd->add_option("--coxeter", o.coxeter, "Cayley building of this Coxeter system");
  build_cmd->add_option("--graph-product", o.graph_product, "right-angled building of this graph product");
  build_cmd->add_option("--incidence", o.incidence, "flag building of this incidence geometry");
  build_cmd->add_option("--radius", o.radius, "ball radius for infinite groups (default 2)");

  auto* verify_cmd = add("verify", "Check the building axioms");
  building(verify_cmd);

  auto* delta_cmd = add("delta", "Weyl distance between two chambers");
  building(delta_cmd);
  delta_cmd->add_option("--from", o.from, "chamber name")->required();
  delta_cmd->add_option("--to", o.to, "chamber name")->required();

  auto* residue_cmd_ = add("residue", "J-residue of a chamber");
  building(residue_cmd_);
  residue_cmd_->add_option("--chamber", o.chamber, "chamber name (default: the first)");
  residue_cmd_->add_option("--colors", o.colors, "colors in J, e.g. 0,2")->delimiter(',');

  auto* apartments_cmd = add("apartments", "All apartments");
  building(apartments_cmd);

  auto* realize_cmd_ = add("realize", "Tits or Davis realization as a simplicial complex");
  building(realize_cmd_);
  realization(realize_cmd_);
  format(realize_cmd_);

  auto* homology_cmd = add("homology", "Rational Betti numbers of a realization or complex");
  building(homology_cmd, false);
  homology_cmd->add_option("--complex", o.complex, "complex JSON");
  realization(homology_cmd);

  auto* metric_cmd = add("metric", "Vertex separation and intrinsic distances");
  building(metric_cmd, false);
  metric_cmd->add_option("--complex", o.complex, "complex JSON");
  metric_cmd->add_option("--shapes", o.shapes, "shape table JSON (default: regular unit simplices)");
  realization(metric_cmd);
  metric_cmd->add_option("--from", o.from, "vertex label");
  metric_cmd->add_option("--to", o.to, "vertex label");
  metric_cmd->add_option("--tol", o.tol, "distance tolerance");

  auto* aut_cmd = add("aut", "Color-preserving automorphism group");
  building(aut_cmd);

  auto* transitivity_cmd = add("transitivity", "Chamber, Weyl or strong transitivity of an action");
  transitivity_cmd->add_option("--action", o.action, "action JSON")->required();
  transitivity_cmd->add_option("--kind", o.kind, "chamber, weyl or strong")
      ->check(CLI::IsMember({"chamber", "weyl", "strong"}));

  auto* proper_cmd = add("proper", "Properness certificate of an action, or local finiteness of a complex");
  proper_cmd->add_option("--action", o.action, "action JSON");
  proper_cmd->add_option("--chamber", o.chamber, "B = C = this chamber (default: the first)");
  proper_cmd->add_option("--depth", o.depth, "word-length bound for the group search");
  building(proper_cmd, false);
  proper_cmd->add_option("--complex", o.complex, "complex JSON");
  proper_cmd->add_option("--shapes", o.shapes, "shape table JSON");
  realization(proper_cmd);
  proper_cmd->add_option("--from", o.from, "basepoint vertex label (default: the first)");
  proper_cmd->add_option("--radius", o.real_radius, "ball radius");
  proper_cmd->add_option("--lazy", o.lazy, "built-in infinite complex: star or halfline");

  for (CLI::App* cmd : app.get_subcommands({})) {
    if (!cmd->get_option_no_throw("--format")) format(cmd);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CommandResult r;
    r.text = app.help();
    return r;
  } catch (const CLI::ParseError& e) {
    return failure(Error(Errc::ParseError, "cli", e.what()));
  }

  try {
    CommandResult r;
    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "coxeter") r = coxeter(o);
    else if (name == "build") r = build(o);
    else if (name == "verify") r = verify(o);
    else if (name == "delta") r = delta(o);
    else if (name == "residue") r = residue_cmd(o);
    else if (name == "apartments") r = apartments(o);
    else if (name == "realize") r = realize_cmd(o);
    else if (name == "homology") r = homology(o);
    else if (name == "metric") r = metric(o);
    else if (name == "aut") r = aut(o);
    else if (name == "transitivity") r = transitivity(o);
    else r = proper(o);
    if (o.format == "text" && !r.text) r.text = text_form(r.payload);
    return r;
  } catch (const Error& e) {
    return failure(e);
  } catch (const std::exception& e) {
    return failure(Error(Errc::ParseError, "cli", e.what()));
  }
}

}  // namespace buildings::cli
