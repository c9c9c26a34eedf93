#include "buildings/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include <Eigen/Dense>

#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "metric";
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeightEps = 1e-13;

using Weights = std::vector<std::pair<VertexId, double>>;

Simplex intersect(const Simplex& a, const Simplex& b) {
  Simplex out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Simplex support_of(const Weights& w) {
  Simplex s;
  for (const auto& [v, x] : w) s.push_back(v);
  return s;
}

Simplex union_support(const Weights& a, const Weights& b) {
  Simplex s = support_of(a), t = support_of(b), out;
  std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(out));
  return out;
}

// Drops negligible weights and renormalizes.
Weights clean(Weights w) {
  std::erase_if(w, [](const auto& e) { return e.second < kWeightEps; });
  double sum = 0;
  for (const auto& e : w) sum += e.second;
  for (auto& e : w) e.second /= sum;
  return w;
}

Weights normalize_point(const MZeroComplex& mc, const ComplexPoint& p) {
  std::map<VertexId, double> acc;
  double sum = 0;
  for (const auto& [v, x] : p.weights) {
    if (v >= mc.complex().vertex_count()) throw Error(Errc::BadComplex, kModule, "point refers to an unknown vertex");
    if (!(x >= -1e-12)) throw Error(Errc::BadComplex, kModule, "negative barycentric weight");
    acc[v] += x;
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::BadComplex, kModule, "barycentric weights do not sum to 1");
  Weights w(acc.begin(), acc.end());
  w = clean(std::move(w));
  if (w.empty() || !mc.complex().contains(support_of(w)))
    throw Error(Errc::BadComplex, kModule, "point support is not a simplex");
  return w;
}

// |x - y| in the shape of any simplex containing both supports.
template <class Length>
double barycentric_distance(const Weights& a, const Weights& b, const Length& length) {
  Weights u;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      u.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      u.push_back({b[j].first, -b[j].second});
      ++j;
    } else {
      u.push_back({a[i].first, a[i].second - b[j].second});
      ++i;
      ++j;
    }
  }
  double d2 = 0;
  for (std::size_t p = 0; p < u.size(); ++p)
    for (std::size_t q = p + 1; q < u.size(); ++q) {
      const double l = length(u[p].first, u[q].first);
      d2 -= u[p].second * u[q].second * l * l;
    }
  return std::sqrt(std::max(d2, 0.0));
}

double dist(const MZeroComplex& mc, const Weights& a, const Weights& b) {
  return barycentric_distance(a, b, [&](VertexId u, VertexId v) { return mc.edge_length(u, v); });
}

// Gram matrix of a shape with vertex 0 at the origin.
Eigen::MatrixXd gram(const std::vector<std::vector<double>>& l, std::size_t origin, const std::vector<std::size_t>& others) {
  const auto k = static_cast<Eigen::Index>(others.size());
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const double a = l[origin][others[i]], b = l[origin][others[j]], c = l[others[i]][others[j]];
      g(i, j) = (a * a + b * b - c * c) / 2;
    }
  return g;
}

void validate_shape(const Shape& s, std::size_t index) {
  const auto& l = s.edge_lengths;
  const std::string where = "shape " + std::to_string(index);
  if (l.empty()) throw Error(Errc::InvalidShape, kModule, where + " is empty");
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].size() != l.size()) throw Error(Errc::InvalidShape, kModule, where + " is not square");
    if (l[i][i] != 0) throw Error(Errc::InvalidShape, kModule, where + " has a nonzero diagonal");
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (i != j && !(l[i][j] > 0 && std::isfinite(l[i][j])))
        throw Error(Errc::InvalidShape, kModule, where + " has a non-positive edge length");
      if (std::abs(l[i][j] - l[j][i]) > 1e-12 * std::max(1.0, l[i][j]))
        throw Error(Errc::InvalidShape, kModule, where + " is not symmetric");
    }
  }
  if (l.size() < 2) return;
  std::vector<std::size_t> others(l.size() - 1);
  std::iota(others.begin(), others.end(), 1);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram(l, 0, others), Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  if (eig.eigenvalues().minCoeff() <= 1e-12 * top)
    throw Error(Errc::InvalidShape, kModule, where + " is not a nondegenerate euclidean simplex");
}

}  // namespace

MZeroComplex::MZeroComplex(SimplicialComplex complex, std::vector<Shape> shapes, std::vector<ShapeAssignment> assignment)
    : complex_(std::move(complex)), shapes_(std::move(shapes)), assignment_(std::move(assignment)) {
  for (std::size_t k = 0; k < shapes_.size(); ++k) validate_shape(shapes_[k], k);
  std::vector<bool> assigned(complex_.facets().size(), false);
  for (const ShapeAssignment& a : assignment_) {
    if (a.facet >= complex_.facets().size()) throw Error(Errc::InvalidShape, kModule, "assignment to an unknown facet");
    if (a.shape >= shapes_.size()) throw Error(Errc::InvalidShape, kModule, "assignment to an unknown shape");
    const Simplex& f = complex_.facets()[a.facet];
    const Shape& s = shapes_[a.shape];
    const std::string where = "facet " + std::to_string(a.facet);
    if (assigned[a.facet]) throw Error(Errc::InvalidShape, kModule, where + " has two shapes");
    assigned[a.facet] = true;
    if (s.edge_lengths.size() != f.size()) throw Error(Errc::InvalidShape, kModule, where + " has a shape of the wrong dimension");
    std::vector<std::size_t> sorted = a.permutation;
    std::sort(sorted.begin(), sorted.end());
    bool permutation = sorted.size() == f.size();
    for (std::size_t k = 0; k < sorted.size(); ++k) permutation = permutation && sorted[k] == k;
    if (!permutation) throw Error(Errc::InvalidShape, kModule, where + " has an invalid vertex permutation");
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        const double l = s.edge_lengths[a.permutation[i]][a.permutation[j]];
        const auto [it, fresh] = edges_.emplace(std::make_pair(f[i], f[j]), l);
        if (!fresh && std::abs(it->second - l) > 1e-9 * std::max(1.0, l))
          throw Error(Errc::InvalidShape, kModule,
                      "edge {" + complex_.label(f[i]) + "," + complex_.label(f[j]) + "} gets two lengths");
      }
  }
  for (std::size_t k = 0; k < assigned.size(); ++k)
    if (!assigned[k]) throw Error(Errc::InvalidShape, kModule, "facet " + std::to_string(k) + " has no shape");
}

MZeroComplex MZeroComplex::regular(SimplicialComplex complex, double edge) {
  std::vector<Shape> shapes;
  std::vector<ShapeAssignment> assignment;
  std::map<std::size_t, std::size_t> by_size;
  for (std::size_t k = 0; k < complex.facets().size(); ++k) {
    const std::size_t n = complex.facets()[k].size();
    auto it = by_size.find(n);
    if (it == by_size.end()) {
      Shape s{std::vector<std::vector<double>>(n, std::vector<double>(n, edge))};
      for (std::size_t i = 0; i < n; ++i) s.edge_lengths[i][i] = 0;
      it = by_size.emplace(n, shapes.size()).first;
      shapes.push_back(std::move(s));
    }
    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    assignment.push_back({k, it->second, std::move(identity)});
  }
  return MZeroComplex(std::move(complex), std::move(shapes), std::move(assignment));
}

double MZeroComplex::edge_length(VertexId u, VertexId v) const {
  if (u == v) return 0;
  const auto it = edges_.find(std::minmax(u, v));
  if (it == edges_.end())
    throw Error(Errc::NotInCommonSimplex, kModule, "vertices " + complex_.label(u) + " and " + complex_.label(v) + " span no edge");
  return it->second;
}

Simplex ComplexPoint::support() const {
  Simplex s;
  for (const auto& [v, x] : weights)
    if (x > 0) s.push_back(v);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

double simplex_distance(const MZeroComplex& mc, const ComplexPoint& x, const ComplexPoint& y) {
  const Weights a = normalize_point(mc, x), b = normalize_point(mc, y);
  if (!mc.complex().contains(union_support(a, b)))
    throw Error(Errc::NotInCommonSimplex, kModule, "points do not lie in a common simplex");
  return dist(mc, a, b);
}

double string_length(const MZeroComplex& mc, const PLString& s) {
  if (!s.witnesses.empty() && s.witnesses.size() + 1 != s.points.size())
    throw Error(Errc::NotInCommonSimplex, kModule, "string needs one witness per step");
  double total = 0;
  for (std::size_t k = 0; k + 1 < s.points.size(); ++k) {
    const Weights a = normalize_point(mc, s.points[k]), b = normalize_point(mc, s.points[k + 1]);
    const Simplex both = union_support(a, b);
    if (!s.witnesses.empty()) {
      const auto& facets = mc.complex().facets();
      if (s.witnesses[k] >= facets.size() ||
          !std::includes(facets[s.witnesses[k]].begin(), facets[s.witnesses[k]].end(), both.begin(), both.end()))
        throw Error(Errc::NotInCommonSimplex, kModule,
                    "step " + std::to_string(k) + " is not inside its witness simplex");
    } else if (!mc.complex().contains(both)) {
      throw Error(Errc::NotInCommonSimplex, kModule, "step " + std::to_string(k) + " has no common simplex");
    }
    total += dist(mc, a, b);
  }
  return total;
}

namespace {

// Squared edge lengths per facet, so in-facet distances avoid map lookups.
class FacetMetric {
 public:
  explicit FacetMetric(const MZeroComplex& mc) : mc_(mc) {
    for (const Simplex& f : mc.complex().facets()) {
      const std::size_t k = f.size();
      std::vector<double> l2(k * k, 0.0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          const double l = mc.edge_length(f[i], f[j]);
          l2[i * k + j] = l2[j * k + i] = l * l;
        }
      squared_.push_back(std::move(l2));
    }
  }

  const MZeroComplex& complex() const { return mc_; }
  const Simplex& facet(std::size_t f) const { return mc_.complex().facets()[f]; }

  // Distance between two points whose supports lie in facet f.
  double dist(std::size_t f, const Weights& a, const Weights& b) const {
    const Simplex& vs = facet(f);
    thread_local std::vector<double> u;
    u.assign(vs.size(), 0.0);
    for (const auto& [v, w] : a) u[slot(vs, v)] += w;
    for (const auto& [v, w] : b) u[slot(vs, v)] -= w;
    return quadratic(f, u);
  }

  // sqrt(-1/2 u^T L2 u) for a difference vector u in local coordinates.
  double quadratic(std::size_t f, const std::vector<double>& u) const {
    const std::size_t k = u.size();
    const std::vector<double>& l2 = squared_[f];
    double d2 = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) d2 -= u[i] * u[j] * l2[i * k + j];
    return std::sqrt(std::max(d2, 0.0));
  }

  static std::size_t slot(const Simplex& vs, VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  }

 private:
  const MZeroComplex& mc_;
  std::vector<std::vector<double>> squared_;
};

struct Path {
  std::vector<Weights> points;
  std::vector<std::size_t> witnesses;  // facet of step k: points[k] -> points[k+1]
};

double path_length(const FacetMetric& fm, const Path& p) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < p.points.size(); ++k) total += fm.dist(p.witnesses[k], p.points[k], p.points[k + 1]);
  return total;
}

bool inside(const Simplex& facet, const Weights& w) {
  return std::all_of(w.begin(), w.end(),
                     [&](const auto& e) { return std::binary_search(facet.begin(), facet.end(), e.first); });
}

// Shortest path from x to y in the graph whose nodes are vertices, n - 1
// interior points per edge, x and y, with every two nodes of a common facet
// joined by a straight segment.
std::optional<Path> visibility_path(const FacetMetric& fm, const Weights& x, const Weights& y, std::size_t n) {
  const SimplicialComplex& K = fm.complex().complex();
  std::vector<Weights> nodes{x, y};
  for (VertexId v = 0; v < K.vertex_count(); ++v) nodes.push_back({{v, 1.0}});
  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_nodes;
  for (const Simplex& f : K.facets())
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        if (!edge_nodes.emplace(std::make_pair(f[i], f[j]), nodes.size()).second) continue;
        for (std::size_t k = 1; k < n; ++k) {
          const double t = static_cast<double>(k) / static_cast<double>(n);
          nodes.push_back({{f[i], 1.0 - t}, {f[j], t}});
        }
      }

  struct Arc {
    std::size_t to;
    double w;
    std::size_t facet;
  };
  std::vector<std::vector<Arc>> adj(nodes.size());
  std::vector<double> u;
  for (std::size_t fi = 0; fi < K.facets().size(); ++fi) {
    const Simplex& f = K.facets()[fi];
    std::vector<std::size_t> local;
    for (VertexId v : f) local.push_back(2 + v);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        const std::size_t first = edge_nodes.at({f[i], f[j]});
        for (std::size_t k = 0; k + 1 < n; ++k) local.push_back(first + k);
      }
    if (inside(f, x)) local.push_back(0);
    if (inside(f, y)) local.push_back(1);
    // Dense local coordinates of every node in this facet.
    std::vector<std::vector<double>> coords;
    for (std::size_t node : local) {
      std::vector<double> c(f.size(), 0.0);
      for (const auto& [v, w] : nodes[node]) c[FacetMetric::slot(f, v)] += w;
      coords.push_back(std::move(c));
    }
    for (std::size_t a = 0; a < local.size(); ++a)
      for (std::size_t b = a + 1; b < local.size(); ++b) {
        u.resize(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) u[k] = coords[a][k] - coords[b][k];
        const double w = fm.quadratic(fi, u);
        adj[local[a]].push_back({local[b], w, fi});
        adj[local[b]].push_back({local[a], w, fi});
      }
  }

  std::vector<double> d(nodes.size(), kInf);
  std::vector<std::size_t> parent(nodes.size()), via(nodes.size());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  d[0] = 0;
  queue.push({0, 0});
  while (!queue.empty()) {
    const auto [dv, v] = queue.top();
    queue.pop();
    if (dv > d[v]) continue;
    if (v == 1) break;
    for (const Arc& a : adj[v])
      if (dv + a.w < d[a.to]) {
        d[a.to] = dv + a.w;
        parent[a.to] = v;
        via[a.to] = a.facet;
        queue.push({d[a.to], a.to});
      }
  }
  if (d[1] == kInf) return std::nullopt;
  Path p;
  for (std::size_t v = 1; v != 0; v = parent[v]) {
    p.points.push_back(nodes[v]);
    p.witnesses.push_back(via[v]);
  }
  p.points.push_back(nodes[0]);
  std::reverse(p.points.begin(), p.points.end());
  std::reverse(p.witnesses.begin(), p.witnesses.end());
  return p;
}

// Minimizes a convex function of one variable on [lo, hi].
template <class F>
std::pair<double, double> golden_section(const F& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-13) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  std::pair<double, double> best{fc <= fd ? c : d, std::min(fc, fd)};
  for (double t : {lo, hi}) {
    const double ft = f(t);
    if (ft < best.second) best = {t, ft};
  }
  return best;
}

Weights merge(Weights w) {
  std::sort(w.begin(), w.end());
  Weights out;
  for (const auto& e : w) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(e);
  }
  return out;
}

// Restriction of w to a face, if w carries (almost) no mass elsewhere.
std::optional<Weights> project(const Weights& w, const Simplex& face) {
  Weights out;
  double outside = 0;
  for (const auto& e : w) {
    if (std::binary_search(face.begin(), face.end(), e.first))
      out.push_back(e);
    else
      outside += e.second;
  }
  if (outside > 1e-9 || out.empty()) return std::nullopt;
  return clean(std::move(out));
}

class Tightener {
 public:
  Tightener(const FacetMetric& fm, double threshold, std::size_t max_sweeps)
      : fm_(fm), threshold_(threshold), max_sweeps_(max_sweeps) {}

  // Returns false if the sweep cap was hit before the improvement dropped
  // below the threshold.
  bool run(Path& p) const {
    bool ok = descend(p);
    for (int round = 0; round < 256; ++round) {
      auto better = unpin(p);
      if (!better) break;
      ok = better->second && ok;
      p = std::move(better->first);
    }
    return ok;
  }

 private:
  bool descend(Path& p) const {
    double current = path_length(fm_, p);
    for (std::size_t sweep = 0; sweep < max_sweeps_; ++sweep) {
      simplify(p);
      for (std::size_t s = 1; s + 1 < p.points.size(); ++s) move_point(p, s);
      const double next = path_length(fm_, p);
      const double gain = current - next;
      current = next;
      if (gain < threshold_) {
        simplify(p);
        return true;
      }
    }
    return false;
  }

  // Drops crossing points that are not needed: ones whose neighbours share a
  // facet, and ones that coincide with a neighbour.
  void simplify(Path& p) const {
    const SimplicialComplex& K = fm_.complex().complex();
    for (std::size_t s = 1; s + 1 < p.points.size();) {
      std::optional<std::size_t> f;
      if (p.witnesses[s - 1] == p.witnesses[s])
        f = p.witnesses[s];
      else
        f = K.facet_containing(union_support(p.points[s - 1], p.points[s + 1]));
      if (f && fm_.dist(*f, p.points[s - 1], p.points[s + 1]) <=
                   fm_.dist(p.witnesses[s - 1], p.points[s - 1], p.points[s]) +
                       fm_.dist(p.witnesses[s], p.points[s], p.points[s + 1])) {
        erase(p, s, *f);
        if (s > 1) --s;
        continue;
      }
      // p[s] on top of p[s+1]: move p[s] onto the face it must share with
      // the step after p[s+1] and drop p[s+1].
      if (fm_.dist(p.witnesses[s], p.points[s], p.points[s + 1]) < 1e-10) {
        const Simplex& after = fm_.facet(p.witnesses[s + 1 < p.witnesses.size() ? s + 1 : s]);
        if (s + 2 < p.points.size()) {
          if (auto q = project(p.points[s], intersect(fm_.facet(p.witnesses[s - 1]), after))) {
            p.points[s] = std::move(*q);
            p.points.erase(p.points.begin() + static_cast<std::ptrdiff_t>(s + 1));
            p.witnesses.erase(p.witnesses.begin() + static_cast<std::ptrdiff_t>(s));
            continue;
          }
        } else if (inside(fm_.facet(p.witnesses[s - 1]), p.points[s + 1])) {
          erase(p, s, p.witnesses[s - 1]);
          continue;
        }
      }
      ++s;
    }
  }

  static void erase(Path& p, std::size_t s, std::size_t facet) {
    p.points.erase(p.points.begin() + static_cast<std::ptrdiff_t>(s));
    p.witnesses.erase(p.witnesses.begin() + static_cast<std::ptrdiff_t>(s));
    p.witnesses[s - 1] = facet;
  }

  // A crossing point is confined to the common face F of its two witness
  // facets. When a shorter string leaves F through other facets around it,
  // descent alone cannot find it, so chains of facets around F are spliced
  // in (crossing points nudged off F) and kept if the descended result wins.
  std::optional<std::pair<Path, bool>> unpin(const Path& p) const {
    const SimplicialComplex& K = fm_.complex().complex();
    const double current = path_length(fm_, p);
    for (std::size_t s = 1; s + 1 < p.points.size(); ++s) {
      const std::size_t from = p.witnesses[s - 1], to = p.witnesses[s];
      const Simplex face = intersect(K.facets()[from], K.facets()[to]);
      std::vector<std::size_t> around;
      for (std::size_t k : K.star(face.front()))
        if (std::includes(K.facets()[k].begin(), K.facets()[k].end(), face.begin(), face.end())) around.push_back(k);
      for (const auto& chain : facet_chains(face, around, from, to)) {
        Path q;
        q.points.assign(p.points.begin(), p.points.begin() + static_cast<std::ptrdiff_t>(s));
        q.witnesses.assign(p.witnesses.begin(), p.witnesses.begin() + static_cast<std::ptrdiff_t>(s - 1));
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
          const Simplex shared = intersect(K.facets()[chain[k]], K.facets()[chain[k + 1]]);
          Weights nudged;
          for (const auto& [v, x] : p.points[s]) nudged.push_back({v, 0.75 * x});
          for (VertexId v : shared) nudged.push_back({v, 0.25 / static_cast<double>(shared.size())});
          q.points.push_back(merge(std::move(nudged)));
          q.witnesses.push_back(chain[k]);
        }
        q.witnesses.push_back(chain.back());
        q.points.insert(q.points.end(), p.points.begin() + static_cast<std::ptrdiff_t>(s + 1), p.points.end());
        q.witnesses.insert(q.witnesses.end(), p.witnesses.begin() + static_cast<std::ptrdiff_t>(s + 1),
                           p.witnesses.end());
        const bool ok = descend(q);
        if (path_length(fm_, q) < current - threshold_) return std::make_pair(std::move(q), ok);
      }
    }
    return std::nullopt;
  }

  // Simple paths from `from` to `to` through facets containing `face`, each
  // step crossing a face strictly larger than `face`.
  std::vector<std::vector<std::size_t>> facet_chains(const Simplex& face, const std::vector<std::size_t>& around,
                                                     std::size_t from, std::size_t to) const {
    constexpr std::size_t kMaxChains = 32, kMaxLength = 10;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> chain{from};
    const auto dfs = [&](auto&& self) -> void {
      if (out.size() >= kMaxChains) return;
      const std::size_t at = chain.back();
      if (at == to) {
        if (chain.size() > 2) out.push_back(chain);
        return;
      }
      if (chain.size() >= kMaxLength) return;
      for (std::size_t next : around) {
        if (std::find(chain.begin(), chain.end(), next) != chain.end()) continue;
        if (intersect(fm_.facet(at), fm_.facet(next)).size() <= face.size()) continue;
        chain.push_back(next);
        self(self);
        chain.pop_back();
      }
    };
    dfs(dfs);
    return out;
  }

  // Coordinate descent for one crossing point inside the common face of its
  // two witness facets, by pairwise exchange of barycentric mass.
  void move_point(Path& p, std::size_t s) const {
    const std::size_t before_facet = p.witnesses[s - 1], after_facet = p.witnesses[s];
    const Simplex face = intersect(fm_.facet(before_facet), fm_.facet(after_facet));
    if (face.size() < 2) return;
    std::vector<double> w(face.size(), 0.0);
    for (const auto& [v, x] : p.points[s]) w[FacetMetric::slot(face, v)] = x;
    const auto as_point = [&](const std::vector<double>& ww) {
      Weights out;
      for (std::size_t k = 0; k < face.size(); ++k)
        if (ww[k] > 0) out.push_back({face[k], ww[k]});
      return out;
    };
    const Weights& prev = p.points[s - 1];
    const Weights& next = p.points[s + 1];
    const auto cost = [&](const std::vector<double>& ww) {
      const Weights q = as_point(ww);
      return fm_.dist(before_facet, prev, q) + fm_.dist(after_facet, q, next);
    };
    double value = cost(w);
    for (int pass = 0; pass < 64; ++pass) {
      const double start = value;
      for (std::size_t i = 0; i < face.size(); ++i)
        for (std::size_t j = i + 1; j < face.size(); ++j) {
          const double wi = w[i], wj = w[j];
          std::vector<double> ww = w;
          const auto at = [&](double t) {
            ww[i] = wi + t;
            ww[j] = wj - t;
            return cost(ww);
          };
          const auto [t, v] = golden_section(at, -wi, wj);
          if (v < value) {
            w[i] = std::max(0.0, wi + t);
            w[j] = std::max(0.0, wj - t);
            value = v;
          }
        }
      if (face.size() == 2 || start - value <= 1e-16 * std::max(1.0, value)) break;
    }
    p.points[s] = clean(as_point(w));
  }

  const FacetMetric& fm_;
  double threshold_;
  std::size_t max_sweeps_;
};

}  // namespace

DistanceResult intrinsic_distance(const MZeroComplex& mc, const ComplexPoint& x, const ComplexPoint& y,
                                  const DistanceOptions& options) {
  const Weights a = normalize_point(mc, x), b = normalize_point(mc, y);
  const auto common = mc.complex().facet_containing(union_support(a, b));
  DistanceResult result;
  std::optional<double> shape;
  if (common) {
    shape = dist(mc, a, b);
    if (*shape == 0) {
      result.path = {{x, y}, {*common}};
      return result;
    }
  }

  const FacetMetric fm(mc);
  const Tightener tightener(fm, options.tol * 1e-3, options.max_sweeps);
  double best = kInf, previous = kInf;
  Path best_path;
  bool agreed = false, capped = false;
  for (std::size_t n = 1; n <= std::max<std::size_t>(options.max_subdivision, 1); n *= 2) {
    ++result.levels;
    auto path = visibility_path(fm, a, b, n);
    if (!path) throw Error(Errc::DisconnectedPoints, kModule, "the points lie in different components");
    capped |= !tightener.run(*path);
    const double length = path_length(fm, *path);
    if (length < best) {
      best = length;
      best_path = *path;
    }
    if (std::abs(length - previous) <= options.tol / 2) {
      agreed = true;
      break;
    }
    previous = length;
  }
  result.converged = agreed && !capped;
  if (shape && best >= *shape - options.tol) {
    result.distance = *shape;
    result.converged = true;
    result.path = {{x, y}, {*common}};
    return result;
  }
  result.distance = best;
  for (const Weights& w : best_path.points) result.path.points.push_back({w});
  result.path.witnesses = best_path.witnesses;
  return result;
}

double vertex_separation(const MZeroComplex& mc) {
  double best = kInf;
  for (const ShapeAssignment& a : mc.assignment()) {
    const auto& l = mc.shapes()[a.shape].edge_lengths;
    const std::size_t n = l.size();
    if (n < 2) continue;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::size_t> others;
      for (std::size_t k = 0; k < n; ++k)
        if (k != v) others.push_back(k);
      // Distance from v to the convex hull of the others: the minimum over
      // supports S of the affine-hull projection, kept when it lies inside.
      const std::size_t m = others.size();
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t k = 0; k < m; ++k)
          if (mask >> k & 1) sub.push_back(others[k]);
        const Eigen::MatrixXd g = gram(l, v, sub);
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(sub.size()));
        const Eigen::VectorXd z = g.ldlt().solve(ones);
        const double total = z.sum();
        if (!(total > 0) || z.minCoeff() < -1e-14 * total) continue;
        best = std::min(best, std::sqrt(1.0 / total));
      }
    }
  }
  return best;
}

ExplicitSource::ExplicitSource(const MZeroComplex& mc) : mc_(mc), separation_(vertex_separation(mc)) {}

std::vector<Simplex> ExplicitSource::star(VertexId v, std::size_t, bool& truncated) const {
  truncated = false;
  std::vector<Simplex> out;
  for (std::size_t k : mc_.complex().star(v)) out.push_back(mc_.complex().facets()[k]);
  return out;
}

std::vector<Simplex> InfiniteStar::star(VertexId v, std::size_t limit, bool& truncated) const {
  if (v != 0) {
    truncated = false;
    return {{0, v}};
  }
  truncated = true;
  std::vector<Simplex> out;
  for (VertexId k = 1; k <= limit; ++k) out.push_back({0, k});
  return out;
}

std::vector<Simplex> HalfLine::star(VertexId v, std::size_t, bool& truncated) const {
  truncated = false;
  if (v == 0) return {{0, 1}};
  return {{v - 1, v}, {v, v + 1}};
}

ProperReport check_properness(const FacetSource& source, VertexId basepoint, double r, const ProperOptions& options) {
  ProperReport report;
  report.partial = !source.finite();
  report.separation = source.separation();
  report.chain_bound = std::isfinite(report.separation)
                           ? static_cast<std::size_t>(std::ceil(r / report.separation)) + 1
                           : 1;

  // Chains of facets: level k holds facets reached by (k+1)-chains.
  std::set<Simplex> explored;
  std::set<VertexId> expanded, infinite;
  std::vector<VertexId> frontier{basepoint};
  for (std::size_t level = 0; level < report.chain_bound && !frontier.empty(); ++level) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      if (!expanded.insert(v).second) continue;
      bool truncated = false;
      for (Simplex& f : source.star(v, options.star_limit, truncated)) {
        std::sort(f.begin(), f.end());
        if (explored.insert(f).second) next.insert(next.end(), f.begin(), f.end());
      }
      if (truncated) infinite.insert(v);
    }
    frontier = std::move(next);
  }
  report.explored.assign(explored.begin(), explored.end());
  report.infinite_vertices.assign(infinite.begin(), infinite.end());
  report.locally_finite = infinite.empty();
  if (!infinite.empty()) report.partial = true;

  // Distances from the basepoint over the explored region, in the subdivided
  // visibility graph. They are upper bounds, off by at most one subdivision
  // step per facet crossed; the slack below keeps the ball subcomplex a
  // superset of the true one.
  std::map<VertexId, std::size_t> local;
  std::vector<VertexId> global;
  for (const Simplex& f : report.explored)
    for (VertexId v : f)
      if (local.emplace(v, global.size()).second) global.push_back(v);
  if (!local.count(basepoint)) {
    local.emplace(basepoint, global.size());
    global.push_back(basepoint);
  }
  std::vector<std::string> labels;
  for (VertexId v : global) labels.push_back(std::to_string(v));
  std::vector<Simplex> facets;
  double longest = 0;
  std::vector<Shape> shapes;
  std::vector<ShapeAssignment> assignment;
  for (const Simplex& f : report.explored) {
    Simplex g;
    for (VertexId v : f) g.push_back(local.at(v));
    facets.push_back(g);
  }
  SimplicialComplex K(labels, facets);
  for (std::size_t k = 0; k < K.facets().size(); ++k) {
    const Simplex& f = K.facets()[k];
    Shape s{std::vector<std::vector<double>>(f.size(), std::vector<double>(f.size(), 0.0))};
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j)
        if (i != j) {
          s.edge_lengths[i][j] = source.edge_length(global[f[i]], global[f[j]]);
          longest = std::max(longest, s.edge_lengths[i][j]);
        }
    std::vector<std::size_t> identity(f.size());
    std::iota(identity.begin(), identity.end(), 0);
    assignment.push_back({k, shapes.size(), std::move(identity)});
    shapes.push_back(std::move(s));
  }
  const MZeroComplex mc(std::move(K), std::move(shapes), std::move(assignment));
  const std::size_t n = std::max<std::size_t>(options.subdivision, 1);
  const double slack = longest / static_cast<double>(n) * static_cast<double>(report.chain_bound);

  // Single-source Dijkstra on the same graph as the distance seed.
  const auto& KF = mc.complex().facets();
  std::vector<Weights> nodes;
  for (std::size_t v = 0; v < global.size(); ++v) nodes.push_back({{v, 1.0}});
  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_nodes;
  std::vector<std::vector<std::size_t>> in_facet(KF.size());
  for (std::size_t fi = 0; fi < KF.size(); ++fi) {
    const Simplex& f = KF[fi];
    in_facet[fi].assign(f.begin(), f.end());
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        auto [it, fresh] = edge_nodes.emplace(std::make_pair(f[i], f[j]), nodes.size());
        if (fresh)
          for (std::size_t k = 1; k < n; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(n);
            nodes.push_back({{f[i], 1.0 - t}, {f[j], t}});
          }
        for (std::size_t k = 0; k + 1 < n; ++k) in_facet[fi].push_back(it->second + k);
      }
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes.size());
  for (const auto& members : in_facet)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const double w = dist(mc, nodes[members[a]], nodes[members[b]]);
        adj[members[a]].push_back({members[b], w});
        adj[members[b]].push_back({members[a], w});
      }
  std::vector<double> d(nodes.size(), kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  d[local.at(basepoint)] = 0;
  queue.push({0, local.at(basepoint)});
  while (!queue.empty()) {
    const auto [dv, v] = queue.top();
    queue.pop();
    if (dv > d[v]) continue;
    for (const auto& [to, w] : adj[v])
      if (dv + w < d[to]) {
        d[to] = dv + w;
        queue.push({d[to], to});
      }
  }
  for (std::size_t fi = 0; fi < KF.size(); ++fi) {
    double nearest = kInf;
    for (std::size_t node : in_facet[fi]) nearest = std::min(nearest, d[node]);
    if (nearest - slack <= r) {
      Simplex f;
      for (VertexId v : KF[fi]) f.push_back(global[v]);
      std::sort(f.begin(), f.end());
      report.ball_facets.push_back(std::move(f));
    }
  }
  std::sort(report.ball_facets.begin(), report.ball_facets.end());
  for (VertexId v : infinite)
    if (d[local.at(v)] - slack <= r) report.ball_unbounded = true;
  return report;
}

}  // namespace buildings
