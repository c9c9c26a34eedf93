#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "buildings/coxeter.hpp"

namespace buildings {

using ChamberId = std::size_t;

struct Edge {
  ChamberId a;
  ChamberId b;
  int color;
};

struct Neighbor {
  ChamberId chamber;
  int color;
};

/// Marks a building as the radius-R ball around `center` in a larger
/// building. Axioms are then only checked where the ball is complete.
struct BallInfo {
  ChamberId center;
  std::size_t radius;
};

/// Finite edge-colored chamber graph (C, EC, t) of type (W, I).
///
/// Chambers keep their input order (the serialization order); identifiers are
/// opaque strings and ties are broken lexicographically by name. The graph is
/// simple and every edge carries one color; this is checked on construction.
class Building {
 public:
  /// Throws MalformedGraph on loops, parallel edges, duplicate names, unknown
  /// endpoints or colors outside the rank.
  Building(CoxeterSystem system, std::vector<std::string> chambers, std::vector<Edge> edges,
           std::optional<BallInfo> ball = std::nullopt);

  const CoxeterSystem& system() const { return system_; }
  int rank() const { return system_.rank(); }
  std::size_t size() const { return names_.size(); }

  const std::string& name(ChamberId c) const { return names_[c]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ChamberId> find(std::string_view name) const;
  /// Throws UnknownChamber.
  ChamberId at(std::string_view name) const;

  /// Neighbors sorted by chamber name.
  std::span<const Neighbor> neighbors(ChamberId c) const { return adjacency_[c]; }
  std::optional<int> edge_color(ChamberId a, ChamberId b) const;
  const std::vector<Edge>& edges() const { return edges_; }

  /// Connected component of `c` in the color-i subgraph, sorted by id.
  std::vector<ChamberId> panel(ChamberId c, int color) const;

  const std::optional<BallInfo>& ball() const { return ball_; }

  /// True when the panels of `c` are guaranteed complete (always, unless the
  /// building is a ball and `c` lies on its boundary sphere).
  bool is_interior(ChamberId c) const;
  /// Gallery distance from the ball center (0 for non-ball buildings).
  std::size_t depth(ChamberId c) const { return depth_.empty() ? 0 : depth_[c]; }

 private:
  CoxeterSystem system_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, ChamberId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::optional<BallInfo> ball_;
  std::vector<std::size_t> depth_;
};

struct Gallery {
  std::vector<ChamberId> chambers;
  Word type;
};

struct Residue {
  ChamberId base;
  GeneratorSet colors;
  std::vector<ChamberId> chambers;  // ids in the ambient building, sorted
  Building building;                // re-typed over (W_J, J), colors renumbered
};

struct Apartment {
  std::vector<ChamberId> chambers;  // sorted
  /// chamber_of[k] is the image of the k-th element of W (ShortLex order)
  /// under the color-preserving isomorphism from the Cayley building that
  /// sends the identity to the smallest chamber.
  std::vector<ChamberId> chamber_of;
};

struct Violation {
  enum class Kind {
    MissingAdjacency,         // (B1): no i-adjacent chamber
    NonTransitiveAdjacency,   // (B1): b ~i a ~i c but not b ~i c
    Disconnected,             // chamber graph not connected
    NonReducedMinimalGallery, // (B2): a minimal gallery has a non-reduced type
    WeylDistanceMismatch,     // (B2): galleries of a reduced type disagree with delta
  };
  Kind kind;
  std::vector<ChamberId> chambers;
  int color = -1;
  Word type;

  std::string describe(const Building& b) const;
};

struct AxiomReport {
  std::vector<Violation> violations;
  std::size_t bound = 0;     // longest gallery type examined
  bool exhaustive = false;   // finite building without boundary flag
  bool ok() const { return violations.empty(); }
};

struct VerifyOptions {
  /// Maximal gallery-type length for the (B2) check; defaults to diameter + 1.
  std::optional<std::size_t> bound;
  /// Stop collecting after this many violations.
  std::size_t max_violations = 256;
};

AxiomReport verify_axioms(const Building& b, const VerifyOptions& options = {});

/// delta(a, c) as a ShortLex normal form. Throws Disconnected.
Word weyl_distance(const Building& b, ChamberId a, ChamberId c);

/// delta(a, x) for every chamber x, as element ids of b.system(), via one BFS.
/// Unreachable chambers are std::nullopt.
std::vector<std::optional<ElementId>> weyl_distances_from(const Building& b, ChamberId a);

/// Plain graph distances from `a`; unreachable chambers get SIZE_MAX.
std::vector<std::size_t> graph_distances_from(const Building& b, ChamberId a);

/// One minimal gallery, following the BFS tree whose neighbors are visited in
/// name order. Throws Disconnected.
Gallery minimal_gallery(const Building& b, ChamberId a, ChamberId c);

/// The gallery of the given reduced type starting at `a` (and ending at `end`
/// when given). Without `end`, the first such gallery in name order is
/// returned. Throws NonReducedType.
std::optional<Gallery> gallery_of_type(const Building& b, ChamberId a, std::span<const int> type,
                                       std::optional<ChamberId> end = std::nullopt);

/// Chambers reachable from `c` using colors in J, sorted by id.
std::vector<ChamberId> residue_chambers(const Building& b, ChamberId c, GeneratorSet colors);

/// Res_J(c) as a building of type (W_J, J). Throws BadSubset.
Residue residue(const Building& b, ChamberId c, GeneratorSet colors);

/// Sizes of all panels (over interior chambers for balls).
bool is_thin(const Building& b);
bool is_thick(const Building& b);
/// Every panel is finite. Always true for explicitly stored buildings.
bool is_locally_finite(const Building& b);

/// All thin subbuildings. Throws InfiniteW.
std::vector<Apartment> enumerate_apartments(const Building& b);

/// Induced subgraph on {a : l(delta(c, a)) <= r}, flagged as a ball.
Building ball(const Building& b, ChamberId c, std::size_t radius);

/// Induced subgraph on the given chambers (kept in ambient order).
Building induced_subbuilding(const Building& b, std::span<const ChamberId> chambers,
                             std::optional<BallInfo> ball = std::nullopt);

}  // namespace buildings
