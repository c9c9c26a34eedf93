#include "buildings/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "realizations";

bool is_subset(const Simplex& small, const Simplex& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> labels, std::vector<Simplex> facets)
    : labels_(std::move(labels)), star_(labels_.size()) {
  for (VertexId v = 0; v < labels_.size(); ++v)
    if (!index_.emplace(labels_[v], v).second)
      throw Error(Errc::BadComplex, kModule, "duplicate vertex label '" + labels_[v] + "'");

  std::vector<bool> covered(labels_.size(), false);
  for (Simplex& f : facets) {
    if (f.empty()) throw Error(Errc::BadComplex, kModule, "empty facet");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw Error(Errc::BadComplex, kModule, "facet repeats a vertex");
    if (f.back() >= labels_.size()) throw Error(Errc::BadComplex, kModule, "facet vertex out of range");
    for (VertexId v : f) covered[v] = true;
  }
  for (VertexId v = 0; v < labels_.size(); ++v)
    if (!covered[v]) facets.push_back({v});

  // Largest first, so a facet only needs checking against kept ones.
  std::sort(facets.begin(), facets.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  std::vector<std::vector<std::size_t>> kept_star(labels_.size());
  for (Simplex& f : facets) {
    // Any facet containing f contains f's first vertex.
    const auto& candidates = kept_star[f.front()];
    const bool dominated = std::any_of(candidates.begin(), candidates.end(),
                                       [&](std::size_t k) { return is_subset(f, facets_[k]); });
    if (dominated) continue;
    for (VertexId v : f) kept_star[v].push_back(facets_.size());
    facets_.push_back(std::move(f));
  }
  std::sort(facets_.begin(), facets_.end());
  for (std::size_t k = 0; k < facets_.size(); ++k)
    for (VertexId v : facets_[k]) star_[v].push_back(k);
}

std::optional<VertexId> SimplicialComplex::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const Simplex& f : facets_) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

std::vector<Simplex> SimplicialComplex::simplices(int k) const {
  std::set<Simplex> out;
  if (k < 0) return {};
  const std::size_t size = static_cast<std::size_t>(k) + 1;
  for (const Simplex& f : facets_) {
    if (f.size() < size) continue;
    // Enumerate size-subsets via a selection mask.
    std::vector<bool> pick(f.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      Simplex s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (pick[i]) s.push_back(f[i]);
      out.insert(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {out.begin(), out.end()};
}

std::optional<std::size_t> SimplicialComplex::facet_containing(std::span<const VertexId> vertices) const {
  Simplex s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty() || s.back() >= labels_.size()) return std::nullopt;
  for (std::size_t k : star_[s.front()])
    if (is_subset(s, facets_[k])) return k;
  return std::nullopt;
}

bool SimplicialComplex::contains(std::span<const VertexId> simplex) const {
  return simplex.empty() || facet_containing(simplex).has_value();
}

ChainComplex chain_complex(const SimplicialComplex& complex, int max_dim) {
  ChainComplex cc;
  const int top = std::min(max_dim + 1, complex.dimension());
  for (int k = 0; k <= top; ++k) cc.simplices.push_back(complex.simplices(k));
  cc.boundaries.resize(cc.simplices.size());
  for (std::size_t k = 0; k < cc.simplices.size(); ++k) {
    SparseMatrix& m = cc.boundaries[k];
    m.columns.resize(cc.simplices[k].size());
    if (k == 0) continue;
    const auto& faces = cc.simplices[k - 1];
    m.rows = faces.size();
    for (std::size_t j = 0; j < cc.simplices[k].size(); ++j) {
      const Simplex& s = cc.simplices[k][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const auto row = static_cast<std::size_t>(std::lower_bound(faces.begin(), faces.end(), face) - faces.begin());
        m.columns[j].push_back({row, i % 2 == 0 ? 1 : -1});
      }
      std::sort(m.columns[j].begin(), m.columns[j].end());
    }
  }
  return cc;
}

namespace {

struct Overflow {};

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
using Big = boost::multiprecision::cpp_int;
Big checked_mul(const Big& a, const Big& b) { return a * b; }
Big checked_sub(const Big& a, const Big& b) { return a - b; }

long long abs_gcd(long long a, long long b) { return std::gcd(a, b); }
Big abs_gcd(const Big& a, const Big& b) { return boost::multiprecision::gcd(a, b); }

template <class Int>
using Column = std::vector<std::pair<std::size_t, Int>>;

template <class Int>
void make_primitive(Column<Int>& c) {
  Int g = 0;
  for (const auto& [row, v] : c) g = abs_gcd(g, v);
  if (g > 1)
    for (auto& entry : c) entry.second /= g;
}

// c <- a*c - b*p, where a and b are the pivot entries of p and c.
template <class Int>
Column<Int> eliminate(const Column<Int>& c, const Column<Int>& p) {
  const Int a = p.back().second, b = c.back().second;
  Column<Int> out;
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < p.size()) {
    if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
      out.push_back({c[i].first, checked_mul(a, c[i].second)});
      ++i;
    } else if (i == c.size() || p[j].first < c[i].first) {
      out.push_back({p[j].first, checked_sub(Int(0), checked_mul(b, p[j].second))});
      ++j;
    } else {
      const Int v = checked_sub(checked_mul(a, c[i].second), checked_mul(b, p[j].second));
      if (v != 0) out.push_back({c[i].first, v});
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

template <class Int>
std::size_t rank_with(const SparseMatrix& m) {
  std::vector<Column<Int>> pivot(m.rows);
  std::vector<bool> has(m.rows, false);
  std::size_t r = 0;
  for (const auto& col : m.columns) {
    Column<Int> c;
    for (const auto& [row, v] : col) c.push_back({row, Int(v)});
    make_primitive(c);
    while (!c.empty() && has[c.back().first]) c = eliminate(c, pivot[c.back().first]);
    if (c.empty()) continue;
    has[c.back().first] = true;
    pivot[c.back().first] = std::move(c);
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const SparseMatrix& matrix) {
  try {
    return rank_with<long long>(matrix);
  } catch (const Overflow&) {
    return rank_with<Big>(matrix);
  }
}

std::vector<std::size_t> homology_ranks(const SimplicialComplex& complex, int max_dim) {
  if (max_dim < 0) max_dim = std::max(complex.dimension(), 0);
  const ChainComplex cc = chain_complex(complex, max_dim);
  std::vector<std::size_t> ranks(cc.boundaries.size() + 1, 0);
  for (std::size_t k = 1; k < cc.boundaries.size(); ++k) ranks[k] = rank(cc.boundaries[k]);
  std::vector<std::size_t> betti;
  for (int k = 0; k <= max_dim; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (uk >= cc.simplices.size()) {
      betti.push_back(0);
      continue;
    }
    betti.push_back(cc.simplices[uk].size() - ranks[uk] - ranks[uk + 1]);
  }
  return betti;
}

}  // namespace buildings
