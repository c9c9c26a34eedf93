#include "buildings/actions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "buildings/constructions.hpp"
#include "buildings/error.hpp"

namespace buildings {

namespace {

constexpr const char* kModule = "actions";
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

void check_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n)
    throw Error(Errc::NotAPermutation, kModule,
                "expected " + std::to_string(n) + " images, got " + std::to_string(p.size()));
  std::vector<bool> hit(n, false);
  for (ChamberId c : p) {
    if (c >= n || hit[c]) throw Error(Errc::NotAPermutation, kModule, "images are not a bijection of the chambers");
    hit[c] = true;
  }
}

bool preserves_colors(const Building& b, const Permutation& g) {
  for (const Edge& e : b.edges())
    if (b.edge_color(g[e.a], g[e.b]) != std::optional<int>(e.color)) return false;
  return true;  // injective on a finite edge set, so onto as well
}

void require_action(const ActionSpec& spec) {
  if (!spec.building) throw Error(Errc::NotAPermutation, kModule, "action without a building");
  if (!verify_action(spec))
    throw Error(Errc::NotAPermutation, kModule, "a generator does not preserve the edge coloring");
}

// Orbit partition of {0, ..., count - 1} under act(generator, item).
template <class Act>
std::vector<Orbit> orbit_partition(std::size_t count, std::size_t generators, const Act& act) {
  std::vector<bool> seen(count, false);
  std::vector<Orbit> out;
  for (std::size_t start = 0; start < count; ++start) {
    if (seen[start]) continue;
    Orbit orbit{{start}, {{}}};
    seen[start] = true;
    for (std::size_t k = 0; k < orbit.members.size(); ++k)
      for (std::size_t g = 0; g < generators; ++g) {
        const std::size_t next = act(g, orbit.members[k]);
        if (seen[next]) continue;
        seen[next] = true;
        auto word = orbit.witnesses[k];
        word.push_back(g);
        orbit.members.push_back(next);
        orbit.witnesses.push_back(std::move(word));
      }
    out.push_back(std::move(orbit));
  }
  return out;
}

bool single_orbits(const std::vector<OrbitClass>& classes) {
  return std::all_of(classes.begin(), classes.end(), [](const OrbitClass& c) { return c.orbits.size() == 1; });
}

// Backtracking search for color-preserving automorphisms.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Building& b) : b_(b), n_(b.size()) {
    for (ChamberId c = 0; c < n_; ++c) {
      std::vector<std::size_t> degrees(static_cast<std::size_t>(b.rank()), 0);
      for (const Neighbor& nb : b.neighbors(c)) ++degrees[static_cast<std::size_t>(nb.color)];
      profile_.push_back(std::move(degrees));
    }
  }

  // An automorphism extending the given chamber assignments, if any.
  std::optional<Permutation> extend(const std::vector<std::pair<ChamberId, ChamberId>>& fixed) {
    for (const auto& [from, to] : fixed) {
      row(from);
      row(to);
    }
    phi_.assign(n_, kNone);
    used_.assign(n_, false);
    preset_.assign(n_, kNone);
    for (const auto& [from, to] : fixed) {
      if (preset_[from] != kNone && preset_[from] != to) return std::nullopt;
      preset_[from] = to;
    }
    fixed_ = &fixed;
    order(fixed.empty() ? 0 : fixed.front().first);
    if (!assign(0)) return std::nullopt;
    return phi_;
  }

  // Whether c -> x is compatible with the fixed pairs' invariants.
  bool compatible(const std::vector<std::pair<ChamberId, ChamberId>>& fixed, ChamberId c, ChamberId x) {
    if (profile_[c] != profile_[x]) return false;
    for (const auto& [from, to] : fixed) {
      const Row& rf = row(from);
      const Row& rt = row(to);
      if (rf.distance[c] != rt.distance[x]) return false;
      if (!rf.delta.empty() && rf.delta[c] != rt.delta[x]) return false;
    }
    return true;
  }

  std::size_t size() const { return n_; }
  const std::vector<ChamberId>& bfs_order() {
    order(0);
    return order_;
  }

 private:
  struct Row {
    std::vector<std::size_t> distance;
    std::vector<std::optional<ElementId>> delta;  // empty inside a ball, where delta may not be intrinsic
  };

  const Row& row(ChamberId c) {
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      Row r{graph_distances_from(b_, c), {}};
      if (!b_.ball()) r.delta = weyl_distances_from(b_, c);
      it = rows_.emplace(c, std::move(r)).first;
    }
    return it->second;
  }

  // BFS order from `root` over every component; parent_[c] / color_[c] give
  // the tree edge used to reach c.
  void order(ChamberId root) {
    order_.clear();
    parent_.assign(n_, kNone);
    color_.assign(n_, -1);
    std::vector<bool> seen(n_, false);
    std::vector<ChamberId> roots{root};
    for (ChamberId c = 0; c < n_; ++c) roots.push_back(c);
    for (ChamberId r : roots) {
      if (n_ == 0 || seen[r]) continue;
      seen[r] = true;
      const std::size_t begin = order_.size();
      order_.push_back(r);
      for (std::size_t k = begin; k < order_.size(); ++k)
        for (const Neighbor& nb : b_.neighbors(order_[k]))
          if (!seen[nb.chamber]) {
            seen[nb.chamber] = true;
            parent_[nb.chamber] = order_[k];
            color_[nb.chamber] = nb.color;
            order_.push_back(nb.chamber);
          }
    }
  }

  bool consistent(ChamberId c, ChamberId x) {
    if (used_[x] || !compatible(*fixed_, c, x)) return false;
    std::size_t assigned = 0;
    for (const Neighbor& nb : b_.neighbors(c)) {
      if (phi_[nb.chamber] == kNone) continue;
      ++assigned;
      if (b_.edge_color(x, phi_[nb.chamber]) != std::optional<int>(nb.color)) return false;
    }
    std::size_t images = 0;
    for (const Neighbor& nb : b_.neighbors(x)) images += used_[nb.chamber] ? 1 : 0;
    return images == assigned;
  }

  bool assign(std::size_t k) {
    if (k == order_.size()) return true;
    const ChamberId c = order_[k];
    std::vector<ChamberId> candidates;
    if (preset_[c] != kNone) {
      candidates.push_back(preset_[c]);
    } else if (parent_[c] != kNone) {
      for (const Neighbor& nb : b_.neighbors(phi_[parent_[c]]))
        if (nb.color == color_[c]) candidates.push_back(nb.chamber);
    } else {
      candidates.resize(n_);
      std::iota(candidates.begin(), candidates.end(), ChamberId{0});
    }
    for (ChamberId x : candidates) {
      if (!consistent(c, x)) continue;
      phi_[c] = x;
      used_[x] = true;
      if (assign(k + 1)) return true;
      phi_[c] = kNone;
      used_[x] = false;
    }
    return false;
  }

  const Building& b_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> profile_;
  std::map<ChamberId, Row> rows_;
  std::vector<ChamberId> order_, parent_;
  std::vector<int> color_;
  std::vector<ChamberId> phi_, preset_;
  std::vector<bool> used_;
  const std::vector<std::pair<ChamberId, ChamberId>>* fixed_ = nullptr;
};

}  // namespace

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), ChamberId{0});
  return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation out(q.size());
  for (std::size_t c = 0; c < q.size(); ++c) out[c] = p[q[c]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t c = 0; c < p.size(); ++c) out[p[c]] = c;
  return out;
}

bool is_identity(const Permutation& p) {
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p[c] != c) return false;
  return true;
}

bool verify_action(const ActionSpec& spec) {
  if (!spec.building) throw Error(Errc::NotAPermutation, kModule, "action without a building");
  for (const Permutation& g : spec.generators) check_permutation(g, spec.building->size());
  return std::all_of(spec.generators.begin(), spec.generators.end(),
                     [&](const Permutation& g) { return preserves_colors(*spec.building, g); });
}

ActionSpec automorphism_group(std::shared_ptr<const Building> b) {
  AutomorphismSearch search(*b);
  ActionSpec out{b, {}, GroupOrder(1)};
  std::vector<std::pair<ChamberId, ChamberId>> fixed;
  // Base = every chamber in BFS order; the order is the product of the basic
  // orbit lengths. Orbits grow from the generators found at the level, so a
  // candidate already in the orbit needs no search.
  const std::vector<ChamberId> base = search.bfs_order();
  for (ChamberId c : base) {
    std::vector<Permutation> level;
    std::vector<bool> in_orbit(search.size(), false);
    std::vector<ChamberId> orbit{c};
    in_orbit[c] = true;
    const auto close = [&] {
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (const Permutation& g : level)
          if (!in_orbit[g[orbit[k]]]) {
            in_orbit[g[orbit[k]]] = true;
            orbit.push_back(g[orbit[k]]);
          }
    };
    for (ChamberId x = 0; x < search.size(); ++x) {
      if (in_orbit[x] || !search.compatible(fixed, c, x)) continue;
      auto trial = fixed;
      trial.push_back({c, x});
      if (auto g = search.extend(trial)) {
        level.push_back(std::move(*g));
        close();
      }
    }
    *out.order *= orbit.size();
    for (auto& g : level) out.generators.push_back(std::move(g));
    fixed.push_back({c, c});
  }
  return out;
}

OrbitReport chamber_orbits(const ActionSpec& spec) {
  require_action(spec);
  OrbitClass cls{"chambers", {}, {}};
  for (ChamberId c = 0; c < spec.building->size(); ++c) cls.items.push_back({c});
  cls.orbits = orbit_partition(cls.items.size(), spec.generators.size(),
                               [&](std::size_t g, std::size_t c) { return spec.generators[g][c]; });
  OrbitReport report;
  report.classes.push_back(std::move(cls));
  report.transitive = single_orbits(report.classes);
  return report;
}

OrbitReport is_weyl_transitive(const ActionSpec& spec) {
  require_action(spec);
  const Building& b = *spec.building;
  const std::size_t n = b.size();
  std::vector<std::vector<std::optional<ElementId>>> delta;
  for (ChamberId a = 0; a < n; ++a) delta.push_back(weyl_distances_from(b, a));

  const auto all = orbit_partition(n * n, spec.generators.size(), [&](std::size_t g, std::size_t pair) {
    const Permutation& p = spec.generators[g];
    return p[pair / n] * n + p[pair % n];
  });
  // Group orbits by Weyl distance; classes ordered by ShortLex of the label.
  std::map<ElementId, std::size_t> class_of;
  std::vector<ElementId> ids;
  for (const Orbit& o : all) {
    const auto w = delta[o.members.front() / n][o.members.front() % n];
    if (!w) throw Error(Errc::Disconnected, kModule, "the building is not connected");
    if (class_of.emplace(*w, 0).second) ids.push_back(*w);
  }
  std::sort(ids.begin(), ids.end(), [&](ElementId x, ElementId y) {
    return shortlex_less(b.system().normal_form(x), b.system().normal_form(y));
  });
  OrbitReport report;
  for (ElementId w : ids) {
    class_of[w] = report.classes.size();
    report.classes.push_back({element_name(b.system().normal_form(w)), {}, {}});
  }
  // Item indices are local to the class, in (a, b) order.
  std::vector<std::size_t> local(n * n);
  for (std::size_t pair = 0; pair < n * n; ++pair) {
    OrbitClass& cls = report.classes[class_of.at(*delta[pair / n][pair % n])];
    local[pair] = cls.items.size();
    cls.items.push_back({pair / n, pair % n});
  }
  for (const Orbit& o : all) {
    OrbitClass& cls = report.classes[class_of.at(*delta[o.members.front() / n][o.members.front() % n])];
    Orbit mapped{{}, o.witnesses};
    for (std::size_t pair : o.members) mapped.members.push_back(local[pair]);
    cls.orbits.push_back(std::move(mapped));
  }
  report.transitive = single_orbits(report.classes);
  return report;
}

OrbitReport is_strongly_transitive_max_atlas(const ActionSpec& spec) {
  require_action(spec);
  const Building& b = *spec.building;
  const std::vector<Apartment> atlas = enumerate_apartments(b);
  std::map<std::vector<ChamberId>, std::size_t> index;
  std::vector<std::size_t> first;  // item index of the first flag of each apartment
  OrbitClass cls{"flags", {}, {}};
  for (std::size_t a = 0; a < atlas.size(); ++a) {
    index.emplace(atlas[a].chambers, a);
    first.push_back(cls.items.size());
    for (ChamberId c : atlas[a].chambers) cls.items.push_back({a, c});
  }
  cls.orbits = orbit_partition(cls.items.size(), spec.generators.size(), [&](std::size_t g, std::size_t item) {
    const Permutation& p = spec.generators[g];
    const std::size_t a = cls.items[item][0];
    std::vector<ChamberId> image;
    for (ChamberId c : atlas[a].chambers) image.push_back(p[c]);
    std::sort(image.begin(), image.end());
    const std::size_t target = index.at(image);
    const auto& chambers = atlas[target].chambers;
    const auto pos = std::lower_bound(chambers.begin(), chambers.end(), p[cls.items[item][1]]) - chambers.begin();
    return first[target] + static_cast<std::size_t>(pos);
  });
  OrbitReport report;
  report.classes.push_back(std::move(cls));
  report.transitive = !atlas.empty() && single_orbits(report.classes);
  report.weyl_transitive = is_weyl_transitive(spec).transitive;
  if (report.transitive && !*report.weyl_transitive)
    throw std::logic_error("strongly transitive action that is not Weyl-transitive");
  return report;
}

GroupEnumeration enumerate_group(const ActionSpec& spec, std::size_t depth) {
  if (!spec.building) throw Error(Errc::NotAPermutation, kModule, "action without a building");
  for (const Permutation& g : spec.generators) check_permutation(g, spec.building->size());
  GroupEnumeration out;
  out.depth = depth;
  std::set<Permutation> seen;
  std::vector<Permutation> frontier{identity_permutation(spec.building->size())};
  seen.insert(frontier.front());
  out.elements = frontier;
  for (std::size_t level = 1; level <= depth + 1; ++level) {
    std::vector<Permutation> next;
    for (const Permutation& x : frontier)
      for (const Permutation& g : spec.generators) {
        Permutation y = compose(g, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    if (next.empty()) {
      out.closed = true;
      break;
    }
    if (level > depth) break;
    out.elements.insert(out.elements.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

ProperCertificate properness_certificate(const ActionSpec& spec, std::span<const ChamberId> B,
                                         std::span<const ChamberId> C, std::size_t depth) {
  const GroupEnumeration group = enumerate_group(spec, depth);
  const std::set<ChamberId> target(C.begin(), C.end());
  for (ChamberId c : B)
    if (c >= spec.building->size()) throw Error(Errc::UnknownChamber, kModule, "chamber index out of range");
  ProperCertificate out{{}, group.depth, group.closed};
  for (const Permutation& g : group.elements)
    if (std::any_of(B.begin(), B.end(), [&](ChamberId c) { return target.count(g[c]) > 0; }))
      out.elements.push_back(g);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

DiscretenessWitness discreteness_witness(const ActionSpec& spec, std::span<const ChamberId> points, double epsilon,
                                         std::size_t depth) {
  const GroupEnumeration group = enumerate_group(spec, depth);
  std::vector<std::vector<std::size_t>> rows;
  for (ChamberId p : points) {
    if (p >= spec.building->size()) throw Error(Errc::UnknownChamber, kModule, "chamber index out of range");
    rows.push_back(graph_distances_from(*spec.building, p));
  }
  DiscretenessWitness out{true, group.depth, group.closed, std::nullopt};
  for (const Permutation& g : group.elements) {
    if (is_identity(g)) continue;
    bool close = true;
    for (std::size_t k = 0; k < points.size() && close; ++k)
      close = static_cast<double>(rows[k][g[points[k]]]) < epsilon;
    if (close) {
      out.holds = false;
      out.counterexample = g;
      break;
    }
  }
  return out;
}

}  // namespace buildings
