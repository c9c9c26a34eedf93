#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "buildings/building.hpp"

namespace buildings {

/// Image of chamber k at index k.
using Permutation = std::vector<ChamberId>;
using GroupOrder = boost::multiprecision::cpp_int;

/// The group generated by `generators`, acting on a building. Group elements
/// are chamber permutations, so kernel elements are invisible.
struct ActionSpec {
  std::shared_ptr<const Building> building;
  std::vector<Permutation> generators;
  std::optional<GroupOrder> order;
};

Permutation identity_permutation(std::size_t n);
/// (p * q)(c) = p(q(c)).
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);

/// True iff every generator maps colored edges onto colored edges.
/// Throws NotAPermutation.
bool verify_action(const ActionSpec& spec);

/// Generators and exact order of the full group of color-preserving
/// automorphisms. Search by backtracking over chamber images along a base,
/// pruned by color-degree profiles and distances to the fixed base points.
ActionSpec automorphism_group(std::shared_ptr<const Building> b);

/// Orbit of one item with witnesses: applying the generators listed in
/// witnesses[k], first entry first, maps members[0] to members[k].
struct Orbit {
  std::vector<std::size_t> members;
  std::vector<std::vector<std::size_t>> witnesses;
};

/// A set of items (chamber tuples, meaning fixed by the caller) and its
/// orbit partition.
struct OrbitClass {
  std::string label;
  std::vector<std::vector<std::size_t>> items;
  std::vector<Orbit> orbits;
};

struct OrbitReport {
  bool transitive = false;  // every class is a single orbit
  std::vector<OrbitClass> classes;
  /// Filled by the strong-transitivity test.
  std::optional<bool> weyl_transitive;
};

/// Orbits on chambers. Items are {c}.
OrbitReport chamber_orbits(const ActionSpec& spec);

/// One class per Weyl distance w (labelled by its normal form name, "e" for
/// the identity); items are pairs {a, b} with delta(a, b) = w.
OrbitReport is_weyl_transitive(const ActionSpec& spec);

/// Orbits on {(A, a) : A apartment, a chamber of A}; items are
/// {apartment index, chamber} with apartments in enumeration order.
/// Throws InfiniteW.
OrbitReport is_strongly_transitive_max_atlas(const ActionSpec& spec);

/// Elements of word length <= depth, deduplicated. `closed` means one more
/// level would add nothing, so `elements` is the whole group.
struct GroupEnumeration {
  std::vector<Permutation> elements;  // identity first, then BFS order
  std::size_t depth = 0;
  bool closed = false;
};

GroupEnumeration enumerate_group(const ActionSpec& spec, std::size_t depth);

struct ProperCertificate {
  std::vector<Permutation> elements;  // g with g(B) meeting C, sorted
  std::size_t depth = 0;
  bool closed = false;
};

/// {g : g(B) and C intersect} among elements of word length <= depth.
ProperCertificate properness_certificate(const ActionSpec& spec, std::span<const ChamberId> B,
                                         std::span<const ChamberId> C, std::size_t depth);

struct DiscretenessWitness {
  bool holds = false;
  std::size_t depth = 0;
  bool closed = false;
  std::optional<Permutation> counterexample;  // nonidentity g moving every point less than epsilon
};

/// Whether the identity is the only element (of word length <= depth) with
/// d(g p, p) < epsilon for every p in `points`, with d the gallery distance.
DiscretenessWitness discreteness_witness(const ActionSpec& spec, std::span<const ChamberId> points, double epsilon,
                                         std::size_t depth);

}  // namespace buildings
