#include "buildings/building.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "building";
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<ChamberId> sorted_unique(std::vector<ChamberId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Building::Building(CoxeterSystem system, std::vector<std::string> chambers, std::vector<Edge> edges,
                   std::optional<BallInfo> ball)
    : system_(std::move(system)),
      names_(std::move(chambers)),
      edges_(std::move(edges)),
      adjacency_(names_.size()),
      ball_(ball) {
  for (ChamberId c = 0; c < names_.size(); ++c)
    if (!index_.emplace(names_[c], c).second)
      throw Error(Errc::MalformedGraph, kModule, "duplicate chamber '" + names_[c] + "'");

  std::set<std::pair<ChamberId, ChamberId>> seen;
  for (const Edge& e : edges_) {
    if (e.a >= names_.size() || e.b >= names_.size())
      throw Error(Errc::MalformedGraph, kModule, "edge endpoint out of range");
    const std::string where = "{" + names_[e.a] + "," + names_[e.b] + "}";
    if (e.a == e.b) throw Error(Errc::MalformedGraph, kModule, "loop at " + names_[e.a]);
    if (e.color < 0 || e.color >= rank())
      throw Error(Errc::MalformedGraph, kModule,
                  "edge " + where + " has color " + std::to_string(e.color) + " outside the rank");
    if (!seen.insert(std::minmax(e.a, e.b)).second)
      throw Error(Errc::MalformedGraph, kModule, "parallel edge " + where);
    adjacency_[e.a].push_back({e.b, e.color});
    adjacency_[e.b].push_back({e.a, e.color});
  }
  for (auto& list : adjacency_)
    std::sort(list.begin(), list.end(), [this](const Neighbor& x, const Neighbor& y) {
      return names_[x.chamber] < names_[y.chamber];
    });

  if (ball_) {
    if (ball_->center >= names_.size())
      throw Error(Errc::MalformedGraph, kModule, "ball center out of range");
    depth_.assign(names_.size(), kUnreached);
    std::deque<ChamberId> queue{ball_->center};
    depth_[ball_->center] = 0;
    while (!queue.empty()) {
      const ChamberId x = queue.front();
      queue.pop_front();
      for (const Neighbor& n : adjacency_[x])
        if (depth_[n.chamber] == kUnreached) {
          depth_[n.chamber] = depth_[x] + 1;
          queue.push_back(n.chamber);
        }
    }
  }
}

std::optional<ChamberId> Building::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

ChamberId Building::at(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(Errc::UnknownChamber, kModule, "no chamber named '" + std::string(name) + "'");
}

std::optional<int> Building::edge_color(ChamberId a, ChamberId b) const {
  for (const Neighbor& n : adjacency_[a])
    if (n.chamber == b) return n.color;
  return std::nullopt;
}

std::vector<ChamberId> Building::panel(ChamberId c, int color) const {
  std::vector<ChamberId> out{c};
  for (std::size_t q = 0; q < out.size(); ++q)
    for (const Neighbor& n : adjacency_[out[q]])
      if (n.color == color && std::find(out.begin(), out.end(), n.chamber) == out.end())
        out.push_back(n.chamber);
  std::sort(out.begin(), out.end());
  return out;
}

bool Building::is_interior(ChamberId c) const {
  return !ball_ || (depth_[c] != kUnreached && depth_[c] < ball_->radius);
}

std::string Violation::describe(const Building& b) const {
  std::ostringstream out;
  const auto names = [&] {
    std::string s;
    for (std::size_t k = 0; k < chambers.size(); ++k) s += (k ? "," : "") + b.name(chambers[k]);
    return s;
  };
  switch (kind) {
    case Kind::MissingAdjacency:
      out << "B1: chamber " << names() << " has no " << color << "-adjacent chamber";
      break;
    case Kind::NonTransitiveAdjacency:
      out << "B1: " << color << "-adjacency not transitive on " << names();
      break;
    case Kind::Disconnected:
      out << "chamber graph disconnected at " << names();
      break;
    case Kind::NonReducedMinimalGallery:
      out << "B2: minimal gallery " << names() << " has non-reduced type " << word_to_string(type);
      break;
    case Kind::WeylDistanceMismatch:
      out << "B2: galleries of type " << word_to_string(type) << " from " << b.name(chambers.front())
          << " disagree with delta at " << names();
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> graph_distances_from(const Building& b, ChamberId a) {
  std::vector<std::size_t> dist(b.size(), kUnreached);
  std::deque<ChamberId> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    const ChamberId x = queue.front();
    queue.pop_front();
    for (const Neighbor& n : b.neighbors(x))
      if (dist[n.chamber] == kUnreached) {
        dist[n.chamber] = dist[x] + 1;
        queue.push_back(n.chamber);
      }
  }
  return dist;
}

namespace {

struct BfsTree {
  std::vector<std::size_t> dist;
  std::vector<ChamberId> parent;
  std::vector<int> color;  // color of the tree edge into the chamber
  std::vector<ChamberId> order;
};

BfsTree bfs_tree(const Building& b, ChamberId a) {
  BfsTree t{std::vector<std::size_t>(b.size(), kUnreached), std::vector<ChamberId>(b.size(), kUnreached),
            std::vector<int>(b.size(), -1), {a}};
  t.dist[a] = 0;
  for (std::size_t q = 0; q < t.order.size(); ++q) {
    const ChamberId x = t.order[q];
    for (const Neighbor& n : b.neighbors(x))
      if (t.dist[n.chamber] == kUnreached) {
        t.dist[n.chamber] = t.dist[x] + 1;
        t.parent[n.chamber] = x;
        t.color[n.chamber] = n.color;
        t.order.push_back(n.chamber);
      }
  }
  return t;
}

Word tree_type(const BfsTree& t, ChamberId c) {
  Word type;
  for (ChamberId x = c; t.parent[x] != kUnreached; x = t.parent[x]) type.push_back(t.color[x]);
  std::reverse(type.begin(), type.end());
  return type;
}

}  // namespace

std::vector<std::optional<ElementId>> weyl_distances_from(const Building& b, ChamberId a) {
  const BfsTree t = bfs_tree(b, a);
  std::vector<std::optional<ElementId>> out(b.size());
  out[a] = b.system().identity();
  for (std::size_t q = 1; q < t.order.size(); ++q) {
    const ChamberId x = t.order[q];
    out[x] = b.system().right_multiply(*out[t.parent[x]], t.color[x]);
  }
  return out;
}

Word weyl_distance(const Building& b, ChamberId a, ChamberId c) {
  const auto all = weyl_distances_from(b, a);
  if (!all[c])
    throw Error(Errc::Disconnected, kModule, b.name(a) + " and " + b.name(c) + " are not connected");
  return b.system().normal_form(*all[c]);
}

Gallery minimal_gallery(const Building& b, ChamberId a, ChamberId c) {
  const BfsTree t = bfs_tree(b, a);
  if (t.dist[c] == kUnreached)
    throw Error(Errc::Disconnected, kModule, b.name(a) + " and " + b.name(c) + " are not connected");
  Gallery g;
  for (ChamberId x = c; x != kUnreached; x = t.parent[x]) g.chambers.push_back(x);
  std::reverse(g.chambers.begin(), g.chambers.end());
  g.type = tree_type(t, c);
  return g;
}

std::optional<Gallery> gallery_of_type(const Building& b, ChamberId a, std::span<const int> type,
                                       std::optional<ChamberId> end) {
  if (b.system().length(type) != type.size())
    throw Error(Errc::NonReducedType, kModule, "type " + word_to_string(type) + " is not reduced");
  const std::size_t m = type.size();
  std::vector<std::vector<ChamberId>> layers{{a}};
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<ChamberId> next;
    for (ChamberId x : layers[k])
      for (const Neighbor& n : b.neighbors(x))
        if (n.color == type[k]) next.push_back(n.chamber);
    layers.push_back(sorted_unique(std::move(next)));
  }
  // Backward pass: keep only chambers from which the gallery can be completed.
  if (end) {
    if (!std::binary_search(layers[m].begin(), layers[m].end(), *end)) return std::nullopt;
    layers[m] = {*end};
  }
  if (layers[m].empty()) return std::nullopt;
  for (std::size_t k = m; k-- > 0;) {
    std::vector<ChamberId> keep;
    for (ChamberId x : layers[k])
      for (const Neighbor& n : b.neighbors(x))
        if (n.color == type[k] && std::binary_search(layers[k + 1].begin(), layers[k + 1].end(), n.chamber)) {
          keep.push_back(x);
          break;
        }
    layers[k] = std::move(keep);
  }
  Gallery g{{a}, Word(type.begin(), type.end())};
  for (std::size_t k = 0; k < m; ++k) {
    for (const Neighbor& n : b.neighbors(g.chambers.back()))
      if (n.color == type[k] && std::binary_search(layers[k + 1].begin(), layers[k + 1].end(), n.chamber)) {
        g.chambers.push_back(n.chamber);
        break;
      }
  }
  return g;
}

// ---------------------------------------------------------------------------

AxiomReport verify_axioms(const Building& b, const VerifyOptions& options) {
  AxiomReport report;
  report.exhaustive = !b.ball().has_value();
  const std::size_t n = b.size();
  const CoxeterSystem& sys = b.system();
  const auto add = [&](Violation v) {
    if (report.violations.size() < options.max_violations) report.violations.push_back(std::move(v));
  };
  if (n == 0) return report;

  // (B1)
  for (ChamberId c = 0; c < n; ++c) {
    if (!b.is_interior(c)) continue;
    for (int i = 0; i < b.rank(); ++i) {
      std::vector<ChamberId> mates;
      for (const Neighbor& nb : b.neighbors(c))
        if (nb.color == i) mates.push_back(nb.chamber);
      if (mates.empty()) add({Violation::Kind::MissingAdjacency, {c}, i, {}});
      for (std::size_t x = 0; x < mates.size(); ++x)
        for (std::size_t y = x + 1; y < mates.size(); ++y)
          if (b.edge_color(mates[x], mates[y]) != i)
            add({Violation::Kind::NonTransitiveAdjacency, {mates[x], c, mates[y]}, i, {}});
    }
  }

  // Connectivity and the default bound.
  const ChamberId root = b.ball() ? b.ball()->center : 0;
  std::size_t diameter = 0;
  {
    const auto dist = graph_distances_from(b, root);
    for (ChamberId c = 0; c < n; ++c)
      if (dist[c] == kUnreached) {
        add({Violation::Kind::Disconnected, {root, c}, -1, {}});
        break;
      }
  }
  if (!options.bound && !b.ball())
    for (ChamberId a = 0; a < n; ++a)
      for (std::size_t d : graph_distances_from(b, a))
        if (d != kUnreached) diameter = std::max(diameter, d);
  const std::size_t global_bound =
      options.bound ? *options.bound : (b.ball() ? b.ball()->radius : diameter + 1);
  report.bound = global_bound;

  // (B2): for every reduced type t with |t| <= bound, the endpoints of
  // galleries of type t from a are exactly the chambers at delta = t.
  for (ChamberId a = 0; a < n; ++a) {
    std::size_t local = global_bound;
    if (b.ball()) {
      if (b.depth(a) > b.ball()->radius) continue;
      local = std::min(local, b.ball()->radius - b.depth(a));
    }
    const BfsTree t = bfs_tree(b, a);
    std::vector<ElementId> delta(n, 0);
    std::map<ElementId, std::vector<ChamberId>> at_delta;
    for (std::size_t q = 0; q < t.order.size(); ++q) {
      const ChamberId x = t.order[q];
      if (t.dist[x] > local) break;
      delta[x] = q == 0 ? sys.identity() : sys.right_multiply(delta[t.parent[x]], t.color[x]);
      if (sys.element_length(delta[x]) != t.dist[x]) {
        std::vector<ChamberId> path;
        for (ChamberId y = x; y != kUnreached; y = t.parent[y]) path.push_back(y);
        std::reverse(path.begin(), path.end());
        add({Violation::Kind::NonReducedMinimalGallery, path, -1, tree_type(t, x)});
      }
      at_delta[delta[x]].push_back(x);
    }
    for (auto& [e, list] : at_delta) std::sort(list.begin(), list.end());

    struct Frame {
      ElementId element;
      Word type;
      std::vector<ChamberId> ends;
    };
    std::vector<Frame> stack{{sys.identity(), {}, {a}}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.type.size() >= local) continue;
      const std::size_t len = f.type.size();
      for (int s = 0; s < b.rank(); ++s) {
        const ElementId next = sys.right_multiply(f.element, s);
        if (sys.element_length(next) != len + 1) continue;
        std::vector<ChamberId> ends;
        for (ChamberId x : f.ends)
          for (const Neighbor& nb : b.neighbors(x))
            if (nb.color == s) ends.push_back(nb.chamber);
        ends = sorted_unique(std::move(ends));
        Word type = f.type;
        type.push_back(s);
        const auto it = at_delta.find(next);
        const std::vector<ChamberId> expected = it == at_delta.end() ? std::vector<ChamberId>{} : it->second;
        if (ends != expected) {
          std::vector<ChamberId> diff{a};
          std::set_symmetric_difference(ends.begin(), ends.end(), expected.begin(), expected.end(),
                                        std::back_inserter(diff));
          add({Violation::Kind::WeylDistanceMismatch, diff, -1, type});
          continue;
        }
        stack.push_back({next, std::move(type), std::move(ends)});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<ChamberId> residue_chambers(const Building& b, ChamberId c, GeneratorSet colors) {
  std::vector<ChamberId> out{c};
  std::vector<bool> seen(b.size(), false);
  seen[c] = true;
  for (std::size_t q = 0; q < out.size(); ++q)
    for (const Neighbor& n : b.neighbors(out[q]))
      if (colors.contains(n.color) && !seen[n.chamber]) {
        seen[n.chamber] = true;
        out.push_back(n.chamber);
      }
  std::sort(out.begin(), out.end());
  return out;
}

Residue residue(const Building& b, ChamberId c, GeneratorSet colors) {
  b.system().check_subset(colors);
  std::vector<ChamberId> chambers = residue_chambers(b, c, colors);
  const std::vector<int> idx = colors.indices();
  std::vector<int> renumber(static_cast<std::size_t>(b.rank()), -1);
  for (std::size_t k = 0; k < idx.size(); ++k) renumber[idx[k]] = static_cast<int>(k);

  std::map<ChamberId, ChamberId> local;
  std::vector<std::string> names;
  for (ChamberId x : chambers) {
    local.emplace(x, names.size());
    names.push_back(b.name(x));
  }
  std::vector<Edge> edges;
  for (ChamberId x : chambers)
    for (const Neighbor& n : b.neighbors(x))
      if (x < n.chamber && colors.contains(n.color))
        edges.push_back({local.at(x), local.at(n.chamber), renumber[n.color]});
  std::optional<BallInfo> flag;
  if (b.ball()) flag = BallInfo{local.at(c), b.ball()->radius - std::min(b.ball()->radius, b.depth(c))};
  return Residue{c, colors, std::move(chambers),
                 Building(b.system().parabolic(colors), std::move(names), std::move(edges), flag)};
}

namespace {

// Panel sizes over interior chambers; a panel is the chamber plus its mates.
template <class Pred>
bool all_panels(const Building& b, Pred pred) {
  for (ChamberId c = 0; c < b.size(); ++c) {
    if (!b.is_interior(c)) continue;
    std::vector<std::size_t> size(static_cast<std::size_t>(b.rank()), 1);
    for (const Neighbor& n : b.neighbors(c)) ++size[n.color];
    for (std::size_t s : size)
      if (!pred(s)) return false;
  }
  return true;
}

}  // namespace

bool is_thin(const Building& b) {
  return all_panels(b, [](std::size_t s) { return s == 2; });
}

bool is_thick(const Building& b) {
  return all_panels(b, [](std::size_t s) { return s >= 3; });
}

bool is_locally_finite(const Building&) { return true; }

// ---------------------------------------------------------------------------

std::vector<Apartment> enumerate_apartments(const Building& b) {
  const CoxeterSystem& sys = b.system();
  if (!sys.is_finite()) throw Error(Errc::InfiniteW, kModule, "apartment enumeration needs finite W");
  const std::vector<Word> elements = sys.all_elements();
  const std::size_t order = elements.size();
  std::map<ElementId, std::size_t> position;
  std::vector<ElementId> ids;
  for (std::size_t k = 0; k < order; ++k) {
    ids.push_back(sys.element(elements[k]));
    position.emplace(ids.back(), k);
  }
  const auto rank = static_cast<std::size_t>(b.rank());
  std::vector<std::vector<std::size_t>> right(order, std::vector<std::size_t>(rank));
  std::vector<std::size_t> parent(order, 0);
  std::vector<int> last(order, -1);
  for (std::size_t k = 0; k < order; ++k) {
    for (std::size_t s = 0; s < rank; ++s)
      right[k][s] = position.at(sys.right_multiply(ids[k], static_cast<int>(s)));
    if (k > 0) {
      last[k] = elements[k].back();
      parent[k] = right[k][static_cast<std::size_t>(last[k])];
    }
  }

  std::vector<Apartment> out;
  std::vector<ChamberId> image(order);
  std::vector<bool> used(b.size(), false);

  const auto induced_thin = [&] {
    std::vector<bool> inside(b.size(), false);
    for (ChamberId x : image) inside[x] = true;
    for (ChamberId x : image) {
      std::vector<int> count(rank, 0);
      for (const Neighbor& n : b.neighbors(x))
        if (inside[n.chamber]) ++count[static_cast<std::size_t>(n.color)];
      for (int c : count)
        if (c != 1) return false;
    }
    return true;
  };

  std::function<void(std::size_t, ChamberId)> assign = [&](std::size_t k, ChamberId base) {
    if (k == order) {
      if (!induced_thin()) return;
      std::vector<ChamberId> chambers = image;
      std::sort(chambers.begin(), chambers.end());
      out.push_back({std::move(chambers), image});
      return;
    }
    const ChamberId from = image[parent[k]];
    for (const Neighbor& n : b.neighbors(from)) {
      if (n.color != last[k] || n.chamber < base || used[n.chamber]) continue;
      bool consistent = true;
      for (std::size_t s = 0; s < rank && consistent; ++s) {
        const std::size_t j = right[k][s];
        if (j < k) consistent = b.edge_color(n.chamber, image[j]) == static_cast<int>(s);
      }
      if (!consistent) continue;
      image[k] = n.chamber;
      used[n.chamber] = true;
      assign(k + 1, base);
      used[n.chamber] = false;
    }
  };

  for (ChamberId a = 0; a < b.size(); ++a) {
    image[0] = a;
    used[a] = true;
    assign(1, a);
    used[a] = false;
  }
  std::sort(out.begin(), out.end(),
            [](const Apartment& x, const Apartment& y) { return x.chambers < y.chambers; });
  return out;
}

Building induced_subbuilding(const Building& b, std::span<const ChamberId> chambers,
                             std::optional<BallInfo> flag) {
  std::vector<ChamberId> keep(chambers.begin(), chambers.end());
  keep = sorted_unique(std::move(keep));
  std::vector<std::size_t> local(b.size(), kUnreached);
  std::vector<std::string> names;
  for (ChamberId x : keep) {
    local[x] = names.size();
    names.push_back(b.name(x));
  }
  std::vector<Edge> edges;
  for (const Edge& e : b.edges())
    if (local[e.a] != kUnreached && local[e.b] != kUnreached) edges.push_back({local[e.a], local[e.b], e.color});
  if (flag) flag->center = local.at(flag->center);
  return Building(b.system(), std::move(names), std::move(edges), flag);
}

Building ball(const Building& b, ChamberId c, std::size_t radius) {
  const auto dist = graph_distances_from(b, c);
  std::vector<ChamberId> keep;
  for (ChamberId x = 0; x < b.size(); ++x)
    if (dist[x] <= radius) keep.push_back(x);
  return induced_subbuilding(b, keep, BallInfo{c, radius});
}

}  // namespace buildings
