#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "buildings/building.hpp"
#include "buildings/coxeter.hpp"

namespace buildings {

/// Chamber name of a Coxeter element: "e" for the identity, otherwise the
/// letters of its normal form joined by '.', e.g. "0.1.0".
std::string element_name(std::span<const int> word);
/// Inverse of element_name. Throws ParseError.
Word parse_element_name(std::string_view name);

struct CayleyBuilding {
  Building building;
  std::vector<Word> elements;  // elements[c] labels chamber c, ShortLex order
};

/// The thin building C = W, {w, ws} colored s. For infinite W only the ball
/// of the given radius around the identity is built (flagged as a ball).
CayleyBuilding cayley_building(const CoxeterSystem& system, std::size_t radius);

/// Multiplication table of a finite group, identity at index 0.
class FiniteGroupTable {
 public:
  /// Throws BadGroupTable unless the table is a group law with identity 0.
  explicit FiniteGroupTable(std::vector<std::vector<std::size_t>> table);
  static FiniteGroupTable cyclic(std::size_t order);

  std::size_t order() const { return table_.size(); }
  std::size_t multiply(std::size_t x, std::size_t y) const { return table_[x][y]; }
  std::size_t inverse(std::size_t x) const { return inverse_[x]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
};

/// Vertex groups G_i indexed by I and a commutation graph Gamma on I.
struct GraphProductSpec {
  std::vector<FiniteGroupTable> groups;
  std::vector<std::pair<int, int>> gamma_edges;

  int rank() const { return static_cast<int>(groups.size()); }
  bool commute(int i, int j) const;
  /// m_ij = 2 on Gamma-edges and infinity otherwise.
  CoxeterSystem coxeter_system() const;
  /// Throws TrivialVertexGroup or MalformedGraph.
  void validate() const;
};

struct Syllable {
  int color;
  std::size_t element;  // nonidentity element of G_color
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};
using SyllableWord = std::vector<Syllable>;

/// Reduced normal form in the graph product: same-colored syllables that can
/// be shuffled next to each other are merged (and dropped when they cancel),
/// then commuting syllables are arranged into the lexicographically least
/// order.
SyllableWord normalize(const GraphProductSpec& spec, SyllableWord word);

std::string syllable_name(const SyllableWord& word);

struct GraphProductBuilding {
  Building building;
  std::vector<SyllableWord> elements;  // elements[c] labels chamber c
};

/// Right-angled building on G_Gamma: a ~i b iff a^-1 b is a nonidentity
/// element of G_i. When Gamma is complete the group is finite and is built in
/// full; otherwise the ball of the given radius (in syllables) is built.
GraphProductBuilding graph_product_building(const GraphProductSpec& spec, std::size_t radius);

struct IncidenceGeometry {
  std::vector<std::string> points;
  std::vector<std::vector<std::size_t>> lines;  // point indices
};

/// PG(2,q) for q = 2, 3 from the Singer difference sets {0,1,3} mod 7 and
/// {0,1,3,9} mod 13; line k is the translate of the set by k.
IncidenceGeometry cyclic_projective_plane(std::size_t q);

struct Flag {
  std::size_t point;
  std::size_t line;
};

struct FlagBuilding {
  Building building;
  IncidenceGeometry geometry;
  std::vector<Flag> flags;  // flags[c] labels chamber c
};

/// Chambers are flags (p, L); color 0 changes the point on a fixed line,
/// color 1 changes the line through a fixed point. The result must pass
/// verify_axioms over I2(3); otherwise throws NotABuilding.
FlagBuilding flag_building_from_incidence(const IncidenceGeometry& geometry);

/// Chamber permutation induced by a point permutation that maps lines to
/// lines. Throws NotAPermutation if `point_map` is not a collineation.
std::vector<ChamberId> collineation_action(const FlagBuilding& fb, std::span<const std::size_t> point_map);

}  // namespace buildings
