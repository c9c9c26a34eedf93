#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "buildings/actions.hpp"
#include "buildings/building.hpp"
#include "buildings/complex.hpp"
#include "buildings/constructions.hpp"
#include "buildings/coxeter.hpp"
#include "buildings/metric.hpp"

namespace buildings::io {

using Json = nlohmann::json;

/// Sorted keys, doubles with 12 significant digits, two-space indent.
/// Arrays holding only scalars stay on one line.
std::string dump(const Json& doc);

/// Parses text, or throws ParseError.
Json parse(const std::string& text);
/// Reads a file ("-" is standard input). Throws ParseError.
Json read_file(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);

// Every reader throws ParseError on a document of the wrong shape; the
// owning module's validation errors pass through.

/// {"rank": n, "m": [[...]]}, with 0 meaning infinity.
Json to_json(const CoxeterSystem& system);
CoxeterSystem coxeter_from_json(const Json& doc);

Json word_to_json(std::span<const int> word);
Word word_from_json(const Json& doc);

/// {"coxeter": {...}, "chambers": [names], "edges": [[a, b, color]],
///  "ball_of_radius": R, "center": name}; the last two only for balls, and
/// the center defaults to the first chamber.
Json to_json(const Building& b);
Building building_from_json(const Json& doc);

/// {"order": k, "table": [[...]]}; a bare integer k means Z/k.
Json to_json(const FiniteGroupTable& g);
FiniteGroupTable group_from_json(const Json& doc);

/// {"groups": [...], "gamma_edges": [[i, j], ...]}
Json to_json(const GraphProductSpec& spec);
GraphProductSpec graph_product_from_json(const Json& doc);

/// {"points": [names], "lines": [[point indices], ...]}
Json to_json(const IncidenceGeometry& g);
IncidenceGeometry incidence_from_json(const Json& doc);

/// {"vertices": [labels], "facets": [[vertex indices], ...]}
Json to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& doc);
/// OFF-style facet list: "OFF", counts, vertices on a circle (label in a
/// trailing comment), then one line per facet.
std::string to_off(const SimplicialComplex& k);

/// {"shapes": [{"dim": k, "edge_lengths": [[...]]}],
///  "assignment": [[simplex, shape index, vertex permutation], ...]}
Json shapes_to_json(const MZeroComplex& mc);
MZeroComplex shapes_from_json(const Json& doc, SimplicialComplex complex);

/// {"building": path or inline document, "generators": [[images]], "order": n}.
/// A relative building path is resolved against `base`.
Json to_json(const ActionSpec& spec);
ActionSpec action_from_json(const Json& doc, const std::filesystem::path& base = {});

/// An integer when it fits in 64 bits, else a decimal string.
Json order_to_json(const GroupOrder& order);

}  // namespace buildings::io
