#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace buildings {

/// A word over the generator indices {0, ..., rank-1}.
using Word = std::vector<int>;

/// Serialized value of an infinite Coxeter matrix entry.
inline constexpr int kInfinity = 0;

/// Maximum supported rank; generator subsets are stored as 32-bit masks.
inline constexpr int kMaxRank = 31;

/// Identifier of a group element inside a CoxeterSystem's element cache.
using ElementId = std::size_t;

/// Subset J of the generating set I, stored as a bitmask.
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint32_t bits) : bits_(bits) {}

  static GeneratorSet all(int rank) {
    return GeneratorSet(rank >= 32 ? ~0u : ((1u << rank) - 1u));
  }
  static GeneratorSet of(std::span<const int> indices);

  bool contains(int i) const { return (bits_ >> i) & 1u; }
  void insert(int i) { bits_ |= (1u << i); }
  void erase(int i) { bits_ &= ~(1u << i); }
  GeneratorSet with(int i) const { return GeneratorSet(bits_ | (1u << i)); }
  GeneratorSet without(int i) const { return GeneratorSet(bits_ & ~(1u << i)); }
  bool empty() const { return bits_ == 0; }
  int size() const;
  bool is_subset_of(GeneratorSet other) const { return (bits_ & ~other.bits_) == 0; }
  std::uint32_t bits() const { return bits_; }
  std::vector<int> indices() const;

  friend auto operator<=>(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Symmetric matrix (m_ij) with m_ii = 1, m_ij >= 2 off the diagonal and
/// kInfinity standing for an infinite entry.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// Validates and stores the entries. Throws AsymmetricMatrix, BadDiagonal or
  /// OffDiagonalTooSmall naming the first offending (i, j).
  explicit CoxeterMatrix(std::vector<std::vector<int>> entries);

  int rank() const { return static_cast<int>(entries_.size()); }
  int operator()(int i, int j) const { return entries_[i][j]; }
  bool is_infinite(int i, int j) const { return entries_[i][j] == kInfinity; }
  const std::vector<std::vector<int>>& entries() const { return entries_; }

  /// Restriction to J, with generators renumbered 0..|J|-1 in increasing order.
  CoxeterMatrix restricted(GeneratorSet subset) const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::vector<std::vector<int>> entries_;
};

namespace detail {
class ElementCache;
}

/// A Coxeter system (W, I). Elements are represented by ShortLex normal forms
/// (lexicographically least reduced word, generator order 0 < 1 < ...).
///
/// Word reduction uses braid-move saturation: a reduced word u times a
/// generator s is shorter than u exactly when some word in the braid orbit of
/// u ends with s. Orbits and right-multiplication edges are memoized in an
/// append-only cache shared between copies of the system, so repeated queries
/// walk a lazily built Cayley graph.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix);

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }

  Word reduce(std::span<const int> word) const;
  std::size_t length(std::span<const int> word) const;
  Word multiply(std::span<const int> lhs, std::span<const int> rhs) const;
  Word inverse(std::span<const int> word) const;

  bool is_finite_parabolic(GeneratorSet subset) const;
  bool is_finite() const { return is_finite_parabolic(GeneratorSet::all(rank())); }

  /// ShortLex normal forms of all elements of length <= max_length, in ShortLex order.
  std::vector<Word> enumerate_elements(std::size_t max_length) const;
  /// Every element of a finite group, in ShortLex order. Throws InfiniteGroup.
  std::vector<Word> all_elements() const;
  /// Throws InfiniteGroup.
  Word longest_element() const;
  /// All J with W_J finite, ordered by size then by mask.
  std::vector<GeneratorSet> spherical_subsets() const;

  /// (W_J, J) with generators renumbered 0..|J|-1.
  CoxeterSystem parabolic(GeneratorSet subset) const;

  // Element-level interface over the cache.
  ElementId identity() const { return 0; }
  ElementId element(std::span<const int> word) const;
  ElementId right_multiply(ElementId element, int generator) const;
  Word normal_form(ElementId element) const;
  std::size_t element_length(ElementId element) const;
  /// All reduced words of the element (its braid orbit), sorted.
  std::vector<Word> reduced_words(ElementId element) const;

  void check_word(std::span<const int> word) const;
  void check_subset(GeneratorSet subset) const;

 private:
  CoxeterMatrix matrix_;
  std::shared_ptr<detail::ElementCache> cache_;
};

/// Validates raw entries (0 = infinity) and returns the system.
CoxeterSystem validate_matrix(const std::vector<std::vector<int>>& entries);

/// Direct braid-move saturation on a whole word without any memoization:
/// saturate the braid orbit, delete an adjacent equal pair whenever one shows
/// up, repeat until the orbit is free of such pairs, return its least word.
/// Exponential in general; used for cross-checking the cached path.
Word saturate_reduce(const CoxeterMatrix& matrix, std::span<const int> word);

/// ShortLex comparison: shorter words first, then lexicographic.
bool shortlex_less(std::span<const int> lhs, std::span<const int> rhs);

std::string word_to_string(std::span<const int> word);

}  // namespace buildings
