#include "buildings/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "buildings/error.hpp"

namespace buildings::io {

namespace {

constexpr const char* kModule = "io";

[[noreturn]] void fail(const std::string& message) { throw Error(Errc::ParseError, kModule, message); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) fail(std::string("expected an object with key \"") + key + "\"");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

// Runs a reader, turning json type errors into ParseError.
template <class F>
auto guarded(const char* what, const F& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed ") + what + ": " + e.what());
  }
}

bool scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out << "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", x);
      out << buf;
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        break;
      }
      if (std::all_of(j.begin(), j.end(), scalar)) {
        out << '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ", ";
          write(out, j[k], indent + 1);
        }
        out << ']';
        break;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        out << inner;
        write(out, j[k], indent + 1);
        out << (k + 1 < j.size() ? ",\n" : "\n");
      }
      out << pad << ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out << inner << Json(it.key()).dump() << ": ";
        write(out, it.value(), indent + 1);
        out << (k + 1 < j.size() ? ",\n" : "\n");
      }
      out << pad << '}';
      break;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump(const Json& doc) {
  std::ostringstream out;
  write(out, doc, 0);
  out << '\n';
  return out.str();
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) fail("cannot read " + path.string());
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_file(const std::filesystem::path& path) { return parse(read_text(path)); }

Json to_json(const CoxeterSystem& system) {
  return {{"rank", system.rank()}, {"m", system.matrix().entries()}};
}

CoxeterSystem coxeter_from_json(const Json& doc) {
  return guarded("Coxeter matrix", [&] {
    const auto m = field(doc, "m").get<std::vector<std::vector<int>>>();
    if (doc.contains("rank") && field(doc, "rank").get<std::size_t>() != m.size())
      fail("\"rank\" does not match the size of \"m\"");
    return validate_matrix(m);
  });
}

Json word_to_json(std::span<const int> word) { return Json(std::vector<int>(word.begin(), word.end())); }

Word word_from_json(const Json& doc) {
  return guarded("word", [&] { return doc.get<Word>(); });
}

Json to_json(const Building& b) {
  Json edges = Json::array();
  for (const Edge& e : b.edges()) edges.push_back({b.name(e.a), b.name(e.b), e.color});
  Json doc{{"coxeter", to_json(b.system())}, {"chambers", b.names()}, {"edges", edges}};
  if (b.ball()) {
    doc["ball_of_radius"] = b.ball()->radius;
    doc["center"] = b.name(b.ball()->center);
  }
  return doc;
}

Building building_from_json(const Json& doc) {
  return guarded("building", [&] {
    CoxeterSystem system = coxeter_from_json(field(doc, "coxeter"));
    const auto names = field(doc, "chambers").get<std::vector<std::string>>();
    std::unordered_map<std::string, ChamberId> index;
    for (ChamberId c = 0; c < names.size(); ++c) index.emplace(names[c], c);
    const auto lookup = [&](const std::string& name) {
      const auto it = index.find(name);
      if (it == index.end()) throw Error(Errc::UnknownChamber, kModule, "unknown chamber \"" + name + "\"");
      return it->second;
    };
    std::vector<Edge> edges;
    for (const Json& e : field(doc, "edges")) {
      if (!e.is_array() || e.size() != 3) fail("an edge must be [a, b, color]");
      edges.push_back({lookup(e[0].get<std::string>()), lookup(e[1].get<std::string>()), e[2].get<int>()});
    }
    std::optional<BallInfo> ball;
    if (doc.contains("ball_of_radius")) {
      if (names.empty()) fail("a ball needs a center chamber");
      const ChamberId center = doc.contains("center") ? lookup(field(doc, "center").get<std::string>()) : 0;
      ball = BallInfo{center, field(doc, "ball_of_radius").get<std::size_t>()};
    }
    return Building(std::move(system), names, std::move(edges), ball);
  });
}

Json to_json(const FiniteGroupTable& g) { return {{"order", g.order()}, {"table", g.table()}}; }

FiniteGroupTable group_from_json(const Json& doc) {
  return guarded("group table", [&] {
    if (doc.is_number_integer()) {
      const auto k = doc.get<long long>();
      if (k < 1) fail("a cyclic group needs a positive order");
      return FiniteGroupTable::cyclic(static_cast<std::size_t>(k));
    }
    auto table = field(doc, "table").get<std::vector<std::vector<std::size_t>>>();
    if (doc.contains("order") && field(doc, "order").get<std::size_t>() != table.size())
      fail("\"order\" does not match the table size");
    return FiniteGroupTable(std::move(table));
  });
}

Json to_json(const GraphProductSpec& spec) {
  Json groups = Json::array();
  for (const auto& g : spec.groups) groups.push_back(to_json(g));
  Json edges = Json::array();
  for (const auto& [i, j] : spec.gamma_edges) edges.push_back({i, j});
  return {{"groups", groups}, {"gamma_edges", edges}};
}

GraphProductSpec graph_product_from_json(const Json& doc) {
  return guarded("graph product", [&] {
    GraphProductSpec spec;
    for (const Json& g : field(doc, "groups")) spec.groups.push_back(group_from_json(g));
    if (doc.contains("gamma_edges"))
      for (const Json& e : field(doc, "gamma_edges")) {
        if (!e.is_array() || e.size() != 2) fail("a gamma edge must be [i, j]");
        spec.gamma_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    spec.validate();
    return spec;
  });
}

Json to_json(const IncidenceGeometry& g) { return {{"points", g.points}, {"lines", g.lines}}; }

IncidenceGeometry incidence_from_json(const Json& doc) {
  return guarded("incidence geometry", [&] {
    IncidenceGeometry g{field(doc, "points").get<std::vector<std::string>>(),
                        field(doc, "lines").get<std::vector<std::vector<std::size_t>>>()};
    for (const auto& line : g.lines)
      for (std::size_t p : line)
        if (p >= g.points.size()) fail("line refers to point " + std::to_string(p));
    return g;
  });
}

Json to_json(const SimplicialComplex& k) { return {{"vertices", k.labels()}, {"facets", k.facets()}}; }

SimplicialComplex complex_from_json(const Json& doc) {
  return guarded("complex", [&] {
    return SimplicialComplex(field(doc, "vertices").get<std::vector<std::string>>(),
                             field(doc, "facets").get<std::vector<Simplex>>());
  });
}

std::string to_off(const SimplicialComplex& k) {
  std::ostringstream out;
  out << "OFF\n" << k.vertex_count() << ' ' << k.facets().size() << " 0\n";
  const double n = static_cast<double>(std::max<std::size_t>(k.vertex_count(), 1));
  for (VertexId v = 0; v < k.vertex_count(); ++v) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(v) / n;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f %.6f 0", std::cos(angle), std::sin(angle));
    out << buf << "  # " << k.label(v) << '\n';
  }
  for (const Simplex& f : k.facets()) {
    out << f.size();
    for (VertexId v : f) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

Json shapes_to_json(const MZeroComplex& mc) {
  Json shapes = Json::array();
  for (const Shape& s : mc.shapes()) shapes.push_back({{"dim", s.dimension()}, {"edge_lengths", s.edge_lengths}});
  Json assignment = Json::array();
  for (const ShapeAssignment& a : mc.assignment())
    assignment.push_back({mc.complex().facets()[a.facet], a.shape, a.permutation});
  return {{"shapes", shapes}, {"assignment", assignment}};
}

MZeroComplex shapes_from_json(const Json& doc, SimplicialComplex complex) {
  return guarded("shape table", [&] {
    std::vector<Shape> shapes;
    for (const Json& s : field(doc, "shapes")) {
      Shape shape{field(s, "edge_lengths").get<std::vector<std::vector<double>>>()};
      if (s.contains("dim") && field(s, "dim").get<int>() != shape.dimension())
        fail("\"dim\" does not match the edge-length matrix");
      shapes.push_back(std::move(shape));
    }
    std::vector<ShapeAssignment> assignment;
    for (const Json& a : field(doc, "assignment")) {
      if (!a.is_array() || a.size() != 3) fail("an assignment must be [simplex, shape, permutation]");
      auto simplex = a[0].get<Simplex>();
      std::sort(simplex.begin(), simplex.end());
      const auto facet = complex.facet_containing(simplex);
      if (!facet || complex.facets()[*facet] != simplex) fail("assignment to a simplex that is not a facet");
      assignment.push_back({*facet, a[1].get<std::size_t>(), a[2].get<std::vector<std::size_t>>()});
    }
    return MZeroComplex(std::move(complex), std::move(shapes), std::move(assignment));
  });
}

Json order_to_json(const GroupOrder& order) {
  if (order <= std::numeric_limits<std::uint64_t>::max()) return order.convert_to<std::uint64_t>();
  return order.str();
}

Json to_json(const ActionSpec& spec) {
  Json doc{{"building", to_json(*spec.building)}, {"generators", spec.generators}};
  if (spec.order) doc["order"] = order_to_json(*spec.order);
  return doc;
}

ActionSpec action_from_json(const Json& doc, const std::filesystem::path& base) {
  return guarded("action", [&] {
    const Json& ref = field(doc, "building");
    Json inline_doc;
    if (ref.is_string()) {
      std::filesystem::path path = ref.get<std::string>();
      if (path.is_relative() && !base.empty()) path = base / path;
      inline_doc = read_file(path);
    } else {
      inline_doc = ref;
    }
    ActionSpec spec{std::make_shared<const Building>(building_from_json(inline_doc)),
                    field(doc, "generators").get<std::vector<Permutation>>(), std::nullopt};
    if (doc.contains("order")) {
      const Json& order = field(doc, "order");
      spec.order = order.is_string() ? GroupOrder(order.get<std::string>()) : GroupOrder(order.get<std::uint64_t>());
    }
    return spec;
  });
}

}  // namespace buildings::io
