#include "buildings/realizations.hpp"

#include <algorithm>
#include <map>

#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "realizations";

std::string colors_label(GeneratorSet colors) {
  std::string out = "{";
  for (int i : colors.indices()) {
    if (out.size() > 1) out += ',';
    out += std::to_string(i);
  }
  return out + "}";
}

// Residues of one type J: component id per chamber plus the chamber lists.
struct Partition {
  std::vector<std::size_t> component;
  std::vector<std::vector<ChamberId>> parts;
};

Partition partition(const Building& b, GeneratorSet colors) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  Partition p{std::vector<std::size_t>(b.size(), kNone), {}};
  for (ChamberId c = 0; c < b.size(); ++c) {
    if (p.component[c] != kNone) continue;
    auto chambers = residue_chambers(b, c, colors);
    for (ChamberId x : chambers) p.component[x] = p.parts.size();
    p.parts.push_back(std::move(chambers));
  }
  return p;
}

// Inside a ball, a residue cut off by the boundary is not a building of type
// W_J on its own; only complete ones become vertices.
bool complete_residue(const Building& b, const std::vector<ChamberId>& chambers, GeneratorSet colors) {
  if (!b.ball() || colors.empty()) return true;
  const Residue r = residue(b, chambers.front(), colors);
  const Building plain(r.building.system(), r.building.names(), r.building.edges());
  return verify_axioms(plain).ok();
}

class VertexTable {
 public:
  VertexId add(const Building& b, GeneratorSet colors, std::vector<ChamberId> chambers) {
    std::string label = colors_label(colors) + ":";
    std::string least = b.name(chambers.front());
    for (ChamberId x : chambers) least = std::min(least, b.name(x));
    labels_.push_back(label + least);
    residues_.push_back({colors, std::move(chambers)});
    return residues_.size() - 1;
  }
  std::vector<std::string> labels_;
  std::vector<ResidueVertex> residues_;
};

}  // namespace

Realization tits_realization(const Building& b) {
  const int n = b.rank();
  if (n == 0) throw Error(Errc::RankZero, kModule, "the Tits realization needs rank at least 1");
  const GeneratorSet all = GeneratorSet::all(n);

  VertexTable table;
  std::vector<std::vector<VertexId>> vertex_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Partition p = partition(b, all.without(i));
    std::vector<VertexId> ids;
    for (auto& part : p.parts) ids.push_back(table.add(b, all.without(i), std::move(part)));
    for (ChamberId c = 0; c < b.size(); ++c) vertex_of[i].push_back(ids[p.component[c]]);
  }

  std::vector<Simplex> facets;
  for (ChamberId c = 0; c < b.size(); ++c) {
    Simplex f;
    for (int i = 0; i < n; ++i) f.push_back(vertex_of[i][c]);
    std::sort(f.begin(), f.end());
    facets.push_back(std::move(f));
  }
  Realization r{SimplicialComplex(std::move(table.labels_), facets), std::move(table.residues_), {}};
  for (const Simplex& f : facets) r.chamber_map.push_back(*r.complex.facet_containing(f));
  return r;
}

Realization davis_realization(const Building& b) {
  const auto spherical = b.system().spherical_subsets();
  VertexTable table;
  // vertex[J][component] or -1 when the residue is incomplete.
  std::map<GeneratorSet, std::pair<Partition, std::vector<std::optional<VertexId>>>> by_type;
  for (GeneratorSet J : spherical) {
    Partition p = partition(b, J);
    std::vector<std::optional<VertexId>> ids;
    for (const auto& part : p.parts)
      ids.push_back(complete_residue(b, part, J) ? std::optional<VertexId>(table.add(b, J, part)) : std::nullopt);
    by_type.emplace(J, std::make_pair(std::move(p), std::move(ids)));
  }
  const auto vertex = [&](GeneratorSet J, ChamberId c) -> std::optional<VertexId> {
    const auto it = by_type.find(J);
    if (it == by_type.end()) return std::nullopt;
    return it->second.second[it->second.first.component[c]];
  };

  // Maximal chains: grow J one color at a time while the residue is a vertex.
  std::vector<Simplex> facets;
  Simplex chain;
  const auto grow = [&](auto&& self, ChamberId c, GeneratorSet J) -> void {
    bool extended = false;
    for (int t = 0; t < b.rank(); ++t) {
      if (J.contains(t)) continue;
      const auto v = vertex(J.with(t), c);
      if (!v) continue;
      extended = true;
      chain.push_back(*v);
      self(self, c, J.with(t));
      chain.pop_back();
    }
    if (!extended) {
      Simplex f = chain;
      std::sort(f.begin(), f.end());
      facets.push_back(std::move(f));
    }
  };
  std::vector<std::size_t> chamber_map;
  for (ChamberId c = 0; c < b.size(); ++c) {
    const VertexId v = *vertex(GeneratorSet{}, c);
    chamber_map.push_back(v);
    chain = {v};
    grow(grow, c, GeneratorSet{});
  }
  return Realization{SimplicialComplex(std::move(table.labels_), std::move(facets)), std::move(table.residues_),
                     std::move(chamber_map)};
}

std::size_t opposite_count(const Building& b, ChamberId c) {
  if (!b.system().is_finite()) throw Error(Errc::InfiniteW, kModule, "W is infinite; there is no longest element");
  const ElementId w0 = b.system().element(b.system().longest_element());
  const auto delta = weyl_distances_from(b, c);
  return static_cast<std::size_t>(std::count(delta.begin(), delta.end(), std::optional<ElementId>(w0)));
}

}  // namespace buildings
