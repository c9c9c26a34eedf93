#include "buildings/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "coxeter";
constexpr ElementId kUnknown = std::numeric_limits<ElementId>::max();

// Applies every braid relation (ij...)=(ji...) of finite order at every
// position. The result is the sorted orbit of `start` under braid moves.
std::vector<Word> braid_orbit(const CoxeterMatrix& m, const Word& start) {
  std::set<Word> seen{start};
  std::vector<Word> queue{start};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Word w = queue[q];
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      const int i = w[p];
      const int j = w[p + 1];
      if (i == j || m.is_infinite(i, j)) continue;
      const auto span = static_cast<std::size_t>(m(i, j));
      if (p + span > w.size()) continue;
      bool alternating = true;
      for (std::size_t k = 0; k < span && alternating; ++k)
        alternating = w[p + k] == (k % 2 == 0 ? i : j);
      if (!alternating) continue;
      Word v = w;
      for (std::size_t k = 0; k < span; ++k) v[p + k] = (k % 2 == 0 ? j : i);
      if (seen.insert(v).second) queue.push_back(std::move(v));
    }
  }
  return {seen.begin(), seen.end()};
}

// Recognizes connected Coxeter graphs of finite type: A_n, B_n, D_n, E_6-8,
// F_4, H_3, H_4 and the dihedral I_2(m).
bool finite_irreducible(const CoxeterMatrix& m, const std::vector<int>& nodes) {
  const std::size_t n = nodes.size();
  if (n == 1) return true;
  struct Bond {
    std::size_t u, v;
    int label;
  };
  std::vector<Bond> bonds;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const int label = m(nodes[a], nodes[b]);
      if (label == kInfinity) return false;
      if (label != 2) bonds.push_back({a, b, label});
    }
  if (n == 2) return true;
  if (bonds.size() != n - 1) return false;  // a connected graph with a cycle
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (const Bond& b : bonds) {
    if (b.label > 5) return false;
    adj[b.u].push_back({b.v, b.label});
    adj[b.v].push_back({b.u, b.label});
  }
  std::size_t branch_count = 0;
  std::size_t branch = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() > 3) return false;
    if (adj[v].size() == 3) {
      ++branch_count;
      branch = v;
    }
  }

  if (branch_count == 0) {
    std::size_t end = 0;
    while (adj[end].size() != 1) ++end;
    std::vector<int> labels;
    std::size_t prev = n;
    std::size_t cur = end;
    while (true) {
      std::size_t next = n;
      for (auto [w, label] : adj[cur])
        if (w != prev) {
          next = w;
          labels.push_back(label);
        }
      if (next == n) break;
      prev = cur;
      cur = next;
    }
    const auto count = [&](int label) { return std::count(labels.begin(), labels.end(), label); };
    if (count(3) == static_cast<long>(labels.size())) return true;  // A_n
    if (count(4) == 1 && count(3) + 1 == static_cast<long>(labels.size()) &&
        (labels.front() == 4 || labels.back() == 4))
      return true;  // B_n
    if (labels == std::vector<int>{3, 4, 3}) return true;  // F_4
    if (labels == std::vector<int>{5, 3} || labels == std::vector<int>{3, 5}) return true;
    if (labels == std::vector<int>{5, 3, 3} || labels == std::vector<int>{3, 3, 5}) return true;
    return false;
  }

  if (branch_count != 1) return false;
  for (const Bond& b : bonds)
    if (b.label != 3) return false;
  std::vector<std::size_t> arms;
  for (auto [start, label] : adj[branch]) {
    std::size_t length = 1;
    std::size_t prev = branch;
    std::size_t cur = start;
    while (adj[cur].size() == 2) {
      const std::size_t next = adj[cur][0].first == prev ? adj[cur][1].first : adj[cur][0].first;
      prev = cur;
      cur = next;
      ++length;
    }
    arms.push_back(length);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return true;  // D_n
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return true;  // E_6..E_8
  return false;
}

}  // namespace

namespace detail {

class ElementCache {
 public:
  explicit ElementCache(const CoxeterMatrix& matrix) : matrix_(matrix) {
    nodes_.push_back(Node{{}, {Word{}}, std::vector<ElementId>(matrix.rank(), kUnknown)});
    by_word_.emplace(Word{}, 0);
  }

  std::recursive_mutex mutex;

  ElementId right_multiply(ElementId element, int generator) {
    if (nodes_[element].right[generator] != kUnknown) return nodes_[element].right[generator];
    ElementId target = kUnknown;
    // Exchange condition: us is shorter iff u has a reduced word ending in s.
    for (const Word& v : nodes_[element].orbit) {
      if (!v.empty() && v.back() == generator) {
        target = lookup_reduced(Word(v.begin(), v.end() - 1));
        break;
      }
    }
    if (target == kUnknown) {
      Word longer = nodes_[element].normal_form;
      longer.push_back(generator);
      target = lookup_reduced(longer);
    }
    nodes_[element].right[generator] = target;
    nodes_[target].right[generator] = element;
    return target;
  }

  const Word& normal_form(ElementId id) const { return nodes_[id].normal_form; }
  const std::vector<Word>& orbit(ElementId id) const { return nodes_[id].orbit; }

 private:
  struct Node {
    Word normal_form;
    std::vector<Word> orbit;  // every reduced word of the element, sorted
    std::vector<ElementId> right;
  };

  // `word` must be reduced.
  ElementId lookup_reduced(const Word& word) {
    if (auto it = by_word_.find(word); it != by_word_.end()) return it->second;
    std::vector<Word> orbit = braid_orbit(matrix_, word);
    const ElementId id = nodes_.size();
    for (const Word& w : orbit) by_word_.emplace(w, id);
    Word nf = orbit.front();
    nodes_.push_back(Node{std::move(nf), std::move(orbit),
                          std::vector<ElementId>(matrix_.rank(), kUnknown)});
    return id;
  }

  CoxeterMatrix matrix_;
  std::deque<Node> nodes_;
  std::map<Word, ElementId> by_word_;
};

}  // namespace detail

// ---------------------------------------------------------------------------

GeneratorSet GeneratorSet::of(std::span<const int> indices) {
  GeneratorSet s;
  for (int i : indices) s.insert(i);
  return s;
}

int GeneratorSet::size() const { return std::popcount(bits_); }

std::vector<int> GeneratorSet::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n > static_cast<std::size_t>(kMaxRank))
    throw Error(Errc::BadGeneratorIndex, kModule, "rank exceeds " + std::to_string(kMaxRank));
  for (std::size_t i = 0; i < n; ++i)
    if (entries_[i].size() != n)
      throw Error(Errc::AsymmetricMatrix, kModule,
                  "row " + std::to_string(i) + " has " + std::to_string(entries_[i].size()) +
                      " entries, expected " + std::to_string(n));
  const auto where = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int e = entries_[i][j];
      if (e < 0) throw Error(Errc::OffDiagonalTooSmall, kModule, "negative entry at " + where(i, j));
      if (i == j) {
        if (e != 1) throw Error(Errc::BadDiagonal, kModule, "m" + where(i, j) + " must be 1");
        continue;
      }
      if (e != entries_[j][i])
        throw Error(Errc::AsymmetricMatrix, kModule, "m" + where(i, j) + " != m" + where(j, i));
      if (e == 1) throw Error(Errc::OffDiagonalTooSmall, kModule, "m" + where(i, j) + " < 2");
    }
  }
}

CoxeterMatrix CoxeterMatrix::restricted(GeneratorSet subset) const {
  const std::vector<int> idx = subset.indices();
  std::vector<std::vector<int>> sub(idx.size(), std::vector<int>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = entries_[idx[a]][idx[b]];
  return CoxeterMatrix(std::move(sub));
}

// ---------------------------------------------------------------------------

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix)
    : matrix_(std::move(matrix)), cache_(std::make_shared<detail::ElementCache>(matrix_)) {}

CoxeterSystem validate_matrix(const std::vector<std::vector<int>>& entries) {
  return CoxeterSystem(CoxeterMatrix(entries));
}

void CoxeterSystem::check_word(std::span<const int> word) const {
  for (int letter : word)
    if (letter < 0 || letter >= rank())
      throw Error(Errc::BadGeneratorIndex, kModule,
                  "letter " + std::to_string(letter) + " outside 0.." + std::to_string(rank() - 1));
}

void CoxeterSystem::check_subset(GeneratorSet subset) const {
  if (!subset.is_subset_of(GeneratorSet::all(rank())))
    throw Error(Errc::BadSubset, kModule, "subset contains generators outside the rank");
}

ElementId CoxeterSystem::element(std::span<const int> word) const {
  check_word(word);
  std::lock_guard lock(cache_->mutex);
  ElementId e = identity();
  for (int letter : word) e = cache_->right_multiply(e, letter);
  return e;
}

ElementId CoxeterSystem::right_multiply(ElementId element, int generator) const {
  if (generator < 0 || generator >= rank())
    throw Error(Errc::BadGeneratorIndex, kModule, "generator " + std::to_string(generator));
  std::lock_guard lock(cache_->mutex);
  return cache_->right_multiply(element, generator);
}

Word CoxeterSystem::normal_form(ElementId element) const {
  std::lock_guard lock(cache_->mutex);
  return cache_->normal_form(element);
}

std::size_t CoxeterSystem::element_length(ElementId element) const {
  std::lock_guard lock(cache_->mutex);
  return cache_->normal_form(element).size();
}

std::vector<Word> CoxeterSystem::reduced_words(ElementId element) const {
  std::lock_guard lock(cache_->mutex);
  return cache_->orbit(element);
}

Word CoxeterSystem::reduce(std::span<const int> word) const { return normal_form(element(word)); }

std::size_t CoxeterSystem::length(std::span<const int> word) const {
  return element_length(element(word));
}

Word CoxeterSystem::multiply(std::span<const int> lhs, std::span<const int> rhs) const {
  Word joined(lhs.begin(), lhs.end());
  joined.insert(joined.end(), rhs.begin(), rhs.end());
  return reduce(joined);
}

Word CoxeterSystem::inverse(std::span<const int> word) const {
  Word reversed(word.rbegin(), word.rend());
  return reduce(reversed);
}

bool CoxeterSystem::is_finite_parabolic(GeneratorSet subset) const {
  check_subset(subset);
  const std::vector<int> idx = subset.indices();
  std::vector<bool> done(idx.size(), false);
  for (std::size_t start = 0; start < idx.size(); ++start) {
    if (done[start]) continue;
    std::vector<int> component{idx[start]};
    std::vector<std::size_t> stack{start};
    done[start] = true;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < idx.size(); ++b) {
        if (done[b] || matrix_(idx[a], idx[b]) == 2) continue;
        done[b] = true;
        component.push_back(idx[b]);
        stack.push_back(b);
      }
    }
    if (!finite_irreducible(matrix_, component)) return false;
  }
  return true;
}

std::vector<Word> CoxeterSystem::enumerate_elements(std::size_t max_length) const {
  std::lock_guard lock(cache_->mutex);
  std::vector<Word> out{Word{}};
  std::vector<ElementId> layer{identity()};
  for (std::size_t len = 1; len <= max_length && !layer.empty(); ++len) {
    std::set<ElementId> next;
    for (ElementId e : layer)
      for (int s = 0; s < rank(); ++s) {
        const ElementId t = cache_->right_multiply(e, s);
        if (cache_->normal_form(t).size() == len) next.insert(t);
      }
    std::vector<Word> words;
    for (ElementId t : next) words.push_back(cache_->normal_form(t));
    std::sort(words.begin(), words.end());
    out.insert(out.end(), words.begin(), words.end());
    layer.assign(next.begin(), next.end());
  }
  return out;
}

std::vector<Word> CoxeterSystem::all_elements() const {
  if (!is_finite()) throw Error(Errc::InfiniteGroup, kModule, "W is infinite");
  return enumerate_elements(std::numeric_limits<std::size_t>::max());
}

Word CoxeterSystem::longest_element() const { return all_elements().back(); }

std::vector<GeneratorSet> CoxeterSystem::spherical_subsets() const {
  std::vector<GeneratorSet> out;
  const std::uint32_t limit = GeneratorSet::all(rank()).bits();
  for (std::uint64_t bits = 0; bits <= limit; ++bits) {
    const GeneratorSet J(static_cast<std::uint32_t>(bits));
    if (is_finite_parabolic(J)) out.push_back(J);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](GeneratorSet a, GeneratorSet b) { return a.size() < b.size(); });
  return out;
}

CoxeterSystem CoxeterSystem::parabolic(GeneratorSet subset) const {
  check_subset(subset);
  return CoxeterSystem(matrix_.restricted(subset));
}

// ---------------------------------------------------------------------------

Word saturate_reduce(const CoxeterMatrix& matrix, std::span<const int> word) {
  Word current(word.begin(), word.end());
  while (true) {
    const std::vector<Word> orbit = braid_orbit(matrix, current);
    bool shortened = false;
    for (const Word& w : orbit) {
      for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p] != w[p + 1]) continue;
        current = w;
        current.erase(current.begin() + static_cast<long>(p), current.begin() + static_cast<long>(p) + 2);
        shortened = true;
        break;
      }
      if (shortened) break;
    }
    if (!shortened) return orbit.front();
  }
}

bool shortlex_less(std::span<const int> lhs, std::span<const int> rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

std::string word_to_string(std::span<const int> word) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < word.size(); ++i) out << (i ? "," : "") << word[i];
  out << ']';
  return out.str();
}

}  // namespace buildings
