#include "buildings/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "constructions";

}  // namespace

std::string element_name(std::span<const int> word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) out += (k ? "." : "") + std::to_string(word[k]);
  return out;
}

Word parse_element_name(std::string_view name) {
  if (name == "e") return {};
  Word out;
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t dot = std::min(name.find('.', start), name.size());
    int letter = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + start, name.data() + dot, letter);
    if (ec != std::errc{} || ptr != name.data() + dot)
      throw Error(Errc::ParseError, kModule, "bad element name '" + std::string(name) + "'");
    out.push_back(letter);
    start = dot + 1;
  }
  return out;
}

CayleyBuilding cayley_building(const CoxeterSystem& system, std::size_t radius) {
  const bool finite = system.is_finite();
  std::vector<Word> elements = finite ? system.all_elements() : system.enumerate_elements(radius);
  std::map<ElementId, ChamberId> chamber_of;
  std::vector<ElementId> ids;
  std::vector<std::string> names;
  for (const Word& w : elements) {
    ids.push_back(system.element(w));
    chamber_of.emplace(ids.back(), names.size());
    names.push_back(element_name(w));
  }
  std::vector<Edge> edges;
  for (ChamberId c = 0; c < ids.size(); ++c)
    for (int s = 0; s < system.rank(); ++s) {
      const auto it = chamber_of.find(system.right_multiply(ids[c], s));
      if (it != chamber_of.end() && c < it->second) edges.push_back({c, it->second, s});
    }
  std::optional<BallInfo> flag;
  if (!finite) flag = BallInfo{0, radius};
  return {Building(system, std::move(names), std::move(edges), flag), std::move(elements)};
}

// ---------------------------------------------------------------------------

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) throw Error(Errc::BadGroupTable, kModule, "empty table");
  for (std::size_t x = 0; x < n; ++x) {
    if (table_[x].size() != n) throw Error(Errc::BadGroupTable, kModule, "table is not square");
    std::vector<bool> hit(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      if (table_[x][y] >= n) throw Error(Errc::BadGroupTable, kModule, "entry out of range");
      hit[table_[x][y]] = true;
    }
    if (std::count(hit.begin(), hit.end(), false))
      throw Error(Errc::BadGroupTable, kModule, "row " + std::to_string(x) + " is not a permutation");
    if (table_[0][x] != x || table_[x][0] != x)
      throw Error(Errc::BadGroupTable, kModule, "index 0 is not the identity");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
          throw Error(Errc::BadGroupTable, kModule, "multiplication is not associative");
  inverse_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (table_[x][y] == 0) inverse_[x] = y;
}

FiniteGroupTable FiniteGroupTable::cyclic(std::size_t order) {
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) t[x][y] = (x + y) % order;
  return FiniteGroupTable(std::move(t));
}

bool GraphProductSpec::commute(int i, int j) const {
  if (i == j) return false;
  for (auto [u, v] : gamma_edges)
    if ((u == i && v == j) || (u == j && v == i)) return true;
  return false;
}

void GraphProductSpec::validate() const {
  if (rank() > kMaxRank) throw Error(Errc::MalformedGraph, kModule, "too many vertex groups");
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (groups[i].order() < 2)
      throw Error(Errc::TrivialVertexGroup, kModule, "vertex group " + std::to_string(i) + " is trivial");
  for (auto [u, v] : gamma_edges)
    if (u < 0 || v < 0 || u >= rank() || v >= rank() || u == v)
      throw Error(Errc::MalformedGraph, kModule,
                  "bad Gamma edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
}

CoxeterSystem GraphProductSpec::coxeter_system() const {
  const auto n = groups.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, kInfinity));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (commute(static_cast<int>(i), static_cast<int>(j))) m[i][j] = 2;
  }
  return validate_matrix(m);
}

SyllableWord normalize(const GraphProductSpec& spec, SyllableWord word) {
  std::erase_if(word, [](const Syllable& s) { return s.element == 0; });
  // Merge same-colored syllables separated only by syllables commuting with them.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t q = 1; q < word.size() && !merged; ++q) {
      for (std::size_t p = q; p-- > 0;) {
        if (word[p].color == word[q].color) {
          const auto& g = spec.groups[static_cast<std::size_t>(word[p].color)];
          const std::size_t product = g.multiply(word[p].element, word[q].element);
          word.erase(word.begin() + static_cast<long>(q));
          if (product == 0)
            word.erase(word.begin() + static_cast<long>(p));
          else
            word[p].element = product;
          merged = true;
          break;
        }
        if (!spec.commute(word[p].color, word[q].color)) break;
      }
    }
  }
  // Lexicographically least linear extension of the non-commutation order.
  SyllableWord out;
  std::vector<bool> placed(word.size(), false);
  while (out.size() < word.size()) {
    std::size_t best = word.size();
    for (std::size_t q = 0; q < word.size(); ++q) {
      if (placed[q]) continue;
      bool available = true;
      for (std::size_t p = 0; p < q && available; ++p)
        if (!placed[p] && !spec.commute(word[p].color, word[q].color)) available = false;
      if (available && (best == word.size() || word[q] < word[best])) best = q;
    }
    placed[best] = true;
    out.push_back(word[best]);
  }
  return out;
}

std::string syllable_name(const SyllableWord& word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k)
    out += (k ? "." : "") + std::to_string(word[k].color) + ":" + std::to_string(word[k].element);
  return out;
}

GraphProductBuilding graph_product_building(const GraphProductSpec& spec, std::size_t radius) {
  spec.validate();
  CoxeterSystem system = spec.coxeter_system();
  const bool finite = system.is_finite();

  std::map<SyllableWord, ChamberId> index{{SyllableWord{}, 0}};
  std::vector<SyllableWord> elements{SyllableWord{}};
  const auto neighbor = [&](const SyllableWord& x, int color, std::size_t g) {
    SyllableWord y = x;
    y.push_back({color, g});
    return normalize(spec, std::move(y));
  };
  for (std::size_t q = 0; q < elements.size(); ++q) {
    if (!finite && elements[q].size() >= radius) continue;
    for (int i = 0; i < spec.rank(); ++i)
      for (std::size_t g = 1; g < spec.groups[static_cast<std::size_t>(i)].order(); ++g) {
        SyllableWord y = neighbor(elements[q], i, g);
        if (index.emplace(y, elements.size()).second) elements.push_back(std::move(y));
      }
  }
  std::vector<Edge> edges;
  for (ChamberId c = 0; c < elements.size(); ++c)
    for (int i = 0; i < spec.rank(); ++i)
      for (std::size_t g = 1; g < spec.groups[static_cast<std::size_t>(i)].order(); ++g) {
        const auto it = index.find(neighbor(elements[c], i, g));
        if (it != index.end() && c < it->second) edges.push_back({c, it->second, i});
      }
  std::vector<std::string> names;
  for (const auto& w : elements) names.push_back(syllable_name(w));
  std::optional<BallInfo> flag;
  if (!finite) flag = BallInfo{0, radius};
  return {Building(std::move(system), std::move(names), std::move(edges), flag), std::move(elements)};
}

// ---------------------------------------------------------------------------

IncidenceGeometry cyclic_projective_plane(std::size_t q) {
  std::vector<std::size_t> difference;
  if (q == 2)
    difference = {0, 1, 3};
  else if (q == 3)
    difference = {0, 1, 3, 9};
  else
    throw Error(Errc::BadSubset, kModule, "only q = 2, 3 are tabulated");
  const std::size_t n = q * q + q + 1;
  IncidenceGeometry geom;
  for (std::size_t p = 0; p < n; ++p) geom.points.push_back(std::to_string(p));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> line;
    for (std::size_t d : difference) line.push_back((k + d) % n);
    geom.lines.push_back(std::move(line));
  }
  return geom;
}

FlagBuilding flag_building_from_incidence(const IncidenceGeometry& geometry) {
  for (std::size_t k = 0; k < geometry.lines.size(); ++k) {
    std::set<std::size_t> distinct(geometry.lines[k].begin(), geometry.lines[k].end());
    if (distinct.size() != geometry.lines[k].size())
      throw Error(Errc::NotABuilding, kModule, "line " + std::to_string(k) + " repeats a point");
    if (!distinct.empty() && *distinct.rbegin() >= geometry.points.size())
      throw Error(Errc::NotABuilding, kModule, "line " + std::to_string(k) + " names an unknown point");
  }
  std::vector<Flag> flags;
  for (std::size_t p = 0; p < geometry.points.size(); ++p)
    for (std::size_t l = 0; l < geometry.lines.size(); ++l)
      if (std::find(geometry.lines[l].begin(), geometry.lines[l].end(), p) != geometry.lines[l].end())
        flags.push_back({p, l});
  std::vector<std::string> names;
  for (const Flag& f : flags) names.push_back(geometry.points[f.point] + "/L" + std::to_string(f.line));
  std::vector<Edge> edges;
  for (ChamberId x = 0; x < flags.size(); ++x)
    for (ChamberId y = x + 1; y < flags.size(); ++y) {
      if (flags[x].line == flags[y].line) edges.push_back({x, y, 0});
      if (flags[x].point == flags[y].point) edges.push_back({x, y, 1});
    }
  Building b(validate_matrix({{1, 3}, {3, 1}}), std::move(names), std::move(edges));
  const AxiomReport report = verify_axioms(b);
  if (!report.ok())
    throw Error(Errc::NotABuilding, kModule,
                "incidence structure is not a generalized triangle: " + report.violations.front().describe(b));
  return {std::move(b), geometry, std::move(flags)};
}

std::vector<ChamberId> collineation_action(const FlagBuilding& fb, std::span<const std::size_t> point_map) {
  const auto& geom = fb.geometry;
  if (point_map.size() != geom.points.size())
    throw Error(Errc::NotAPermutation, kModule, "point map has the wrong size");
  std::map<std::set<std::size_t>, std::size_t> line_index;
  for (std::size_t l = 0; l < geom.lines.size(); ++l)
    line_index.emplace(std::set<std::size_t>(geom.lines[l].begin(), geom.lines[l].end()), l);
  std::vector<std::size_t> line_map(geom.lines.size());
  for (std::size_t l = 0; l < geom.lines.size(); ++l) {
    std::set<std::size_t> image;
    for (std::size_t p : geom.lines[l]) {
      if (p >= point_map.size() || point_map[p] >= geom.points.size())
        throw Error(Errc::NotAPermutation, kModule, "point map out of range");
      image.insert(point_map[p]);
    }
    const auto it = line_index.find(image);
    if (it == line_index.end())
      throw Error(Errc::NotAPermutation, kModule, "point map does not send lines to lines");
    line_map[l] = it->second;
  }
  std::map<std::pair<std::size_t, std::size_t>, ChamberId> flag_index;
  for (ChamberId c = 0; c < fb.flags.size(); ++c) flag_index.emplace(std::make_pair(fb.flags[c].point, fb.flags[c].line), c);
  std::vector<ChamberId> perm(fb.flags.size());
  for (ChamberId c = 0; c < fb.flags.size(); ++c)
    perm[c] = flag_index.at({point_map[fb.flags[c].point], line_map[fb.flags[c].line]});
  std::vector<ChamberId> check = perm;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end())
    throw Error(Errc::NotAPermutation, kModule, "point map is not injective");
  return perm;
}

}  // namespace buildings
