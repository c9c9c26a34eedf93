#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace buildings {

using VertexId = std::size_t;
/// Strictly increasing vertex ids.
using Simplex = std::vector<VertexId>;

/// Abstract simplicial complex stored by its maximal simplices. Downward
/// closure is implicit; vertices not covered by any facet become 0-dimensional
/// facets, so every vertex is a simplex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Facets may be given in any order and need not be maximal; duplicates and
  /// non-maximal entries are dropped. Throws BadComplex on out-of-range or
  /// repeated vertices within a facet, empty facets or duplicate labels.
  SimplicialComplex(std::vector<std::string> labels, std::vector<Simplex> facets);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(VertexId v) const { return labels_[v]; }
  std::optional<VertexId> find(std::string_view label) const;

  /// Maximal simplices, sorted lexicographically.
  const std::vector<Simplex>& facets() const { return facets_; }
  /// Facet indices containing v, ascending.
  const std::vector<std::size_t>& star(VertexId v) const { return star_[v]; }
  /// -1 for the empty complex.
  int dimension() const;

  /// All k-simplices, sorted lexicographically.
  std::vector<Simplex> simplices(int k) const;
  bool contains(std::span<const VertexId> simplex) const;
  /// Index of the first facet containing the given vertex set.
  std::optional<std::size_t> facet_containing(std::span<const VertexId> vertices) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Simplex> facets_;
  std::vector<std::vector<std::size_t>> star_;
};

/// Sparse integer matrix stored by columns; each column lists (row, value)
/// with ascending rows and nonzero values.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<std::pair<std::size_t, long long>>> columns;
};

/// Simplicial chain complex with the standard orientation (sorted vertices,
/// face i deleted with sign (-1)^i).
struct ChainComplex {
  std::vector<std::vector<Simplex>> simplices;  // per dimension 0..top
  /// boundaries[k] maps C_k to C_{k-1}; boundaries[0] is the zero map to C_{-1} = 0.
  std::vector<SparseMatrix> boundaries;
};

/// Chains up to dimension max_dim + 1 (enough for b_0..b_max_dim).
ChainComplex chain_complex(const SimplicialComplex& complex, int max_dim);

/// Rank over Q by fraction-free column elimination. Entries are kept primitive
/// (divided by their gcd); falls back to arbitrary precision on overflow.
std::size_t rank(const SparseMatrix& matrix);

/// Rational Betti numbers b_0..b_max_dim. max_dim < 0 means the dimension of
/// the complex.
std::vector<std::size_t> homology_ranks(const SimplicialComplex& complex, int max_dim = -1);

}  // namespace buildings
