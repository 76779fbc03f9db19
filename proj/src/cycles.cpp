#include "divsub/cycles.hpp"

#include <algorithm>
#include <map>
#include <type_traits>

#include "divsub/error.hpp"
#include "divsub/kernels.hpp"

namespace divsub {

Path closed_walk(const PermCycle& c) {
  Path p = c.vertices;
  if (!p.empty()) p.push_back(p.front());
  return p;
}

Element cycle_weight(const ReducedMinor& g, const PermCycle& c) { return g.path_weight(closed_walk(c)); }

namespace {

template <class G>
bool has_vertex(const G& g, VertexId v) {
  if constexpr (std::is_same_v<G, ReducedMinor>) return g.contains(v);
  else return v < g.graph().num_vertices();
}

template <class G>
bool adjacent(const G& g, VertexId u, VertexId v) {
  if constexpr (std::is_same_v<G, ReducedMinor>) return g.edge_between(u, v).has_value();
  else return g.graph().edge_between(u, v).has_value();
}

template <class G>
bool valid_walk(const G& g, const Path& p, bool closed) {
  for (auto v : p)
    if (!has_vertex(g, v)) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!adjacent(g, p[i - 1], p[i])) return false;
  if (closed && p.size() >= 3 && !adjacent(g, p.back(), p.front())) return false;
  Path sorted(p);
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

template <class G>
bool permissible_path(const G& g, const Path& p) {
  if (p.empty() || !valid_walk(g, p, false)) return false;
  std::map<SupernodeLabel, int> runs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto s = g.supernode_of(p[i]);
    if (i == 0 || g.supernode_of(p[i - 1]) != s)
      if (++runs[s] > 1) return false;
  }
  return true;
}

template <class G>
bool permissible_cycle(const G& g, const Path& cycle) {
  if (cycle.size() < 3 || !valid_walk(g, cycle, true)) return false;
  const auto n = cycle.size();
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i)
    if (g.supernode_of(cycle[i]) != g.supernode_of(cycle[(i + n - 1) % n])) {
      start = i;
      break;
    }
  if (start == n) return false;
  std::map<SupernodeLabel, int> runs;
  for (std::size_t k = 0; k < n; ++k) {
    auto i = (start + k) % n;
    auto s = g.supernode_of(cycle[i]);
    if (s != g.supernode_of(cycle[(i + n - 1) % n])) ++runs[s];
  }
  int doubled = 0;
  for (auto [s, r] : runs) {
    if (r > 2) return false;
    if (r == 2) ++doubled;
  }
  if (doubled > 1) return false;
  return doubled == 0 || runs.size() >= 5;
}

}  // namespace

bool is_permissible_path(const ReducedMinor& g, const Path& p) { return permissible_path(g, p); }
bool is_permissible_cycle(const ReducedMinor& g, const Path& cycle) { return permissible_cycle(g, cycle); }
bool is_permissible_path(const WeightedMinor& g, const Path& p) { return permissible_path(g, p); }
bool is_permissible_cycle(const WeightedMinor& g, const Path& cycle) { return permissible_cycle(g, cycle); }

std::optional<PermCycle> cycle_from_route(const ReducedMinor& g, const std::vector<SupernodeLabel>& route) {
  const auto len = route.size();
  if (len < 3) return std::nullopt;
  std::map<SupernodeLabel, int> seen;
  for (std::size_t i = 0; i < len; ++i) {
    if (!g.has_supernode(route[i]) || route[i] == route[(i + 1) % len]) return std::nullopt;
    ++seen[route[i]];
  }
  std::optional<SupernodeLabel> twice;
  for (auto [s, count] : seen) {
    if (count > 2 || (count == 2 && twice)) return std::nullopt;
    if (count == 2) twice = s;
  }
  PermCycle c;
  for (std::size_t i = 0; i < len; ++i) {
    auto s = route[i];
    auto seg = g.supernode_path(g.port(s, route[(i + len - 1) % len]), g.port(s, route[(i + 1) % len]));
    c.vertices.insert(c.vertices.end(), seg.begin(), seg.end());
  }
  if (twice) {
    Path sorted(c.vertices);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    if (seen.size() < 5) return std::nullopt;
  }
  c.route = route;
  for (auto [s, count] : seen) c.supernodes.push_back(s);
  c.exceptional = twice;
  return c;
}

SmallCycleStream::SmallCycleStream(const ReducedMinor& g, std::size_t max_supernodes, std::size_t cap)
    : g_(g), max_k_(max_supernodes), cap_(cap) {
  if (max_supernodes < 3 || max_supernodes > 5) throw DomainError("max_supernodes must lie in 3..5");
  if (cap == 0) throw DomainError("cycle cap must be positive");
}

bool SmallCycleStream::advance_subset() {
  const auto f = g_.num_supernodes();
  if (!started_) {
    started_ = true;
    k_ = 3;
  } else {
    std::size_t i = k_;
    while (i > 0 && comb_[i - 1] == f - k_ + i - 1) --i;
    if (i > 0) {
      ++comb_[i - 1];
      for (auto j = i; j < k_; ++j) comb_[j] = comb_[j - 1] + 1;
      return true;
    }
    ++k_;
  }
  if (k_ > max_k_ || k_ > f) return false;
  comb_.resize(k_);
  for (std::size_t j = 0; j < k_; ++j) comb_[j] = j;
  return true;
}

void SmallCycleStream::load_routes() {
  routes_.clear();
  route_index_ = 0;
  subset_count_ = 0;
  std::vector<SupernodeLabel> s;
  for (auto i : comb_) s.push_back(g_.labels()[i]);
  std::vector<SupernodeLabel> rest(s.begin() + 1, s.end());
  do {
    if (rest.front() < rest.back()) {
      std::vector<SupernodeLabel> r{s[0]};
      r.insert(r.end(), rest.begin(), rest.end());
      routes_.push_back(std::move(r));
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  if (k_ != 5) return;
  for (std::size_t n = 0; n < 5; ++n) {
    std::vector<SupernodeLabel> o;
    for (std::size_t i = 0; i < 5; ++i)
      if (i != n) o.push_back(s[i]);
    const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (const auto& p : pairings) {
      routes_.push_back({s[n], o[p[0]], o[p[1]], s[n], o[p[2]], o[p[3]]});
      routes_.push_back({s[n], o[p[0]], o[p[1]], s[n], o[p[3]], o[p[2]]});
    }
  }
}

std::optional<PermCycle> SmallCycleStream::next() {
  while (!done_) {
    if (started_ && route_index_ < routes_.size()) {
      auto c = cycle_from_route(g_, routes_[route_index_++]);
      if (!c) continue;
      if (++subset_count_ > cap_)
        throw IndeterminateError("more than " + std::to_string(cap_) + " cycles within one supernode subset");
      ++yielded_;
      return c;
    }
    if (!advance_subset()) {
      done_ = true;
      break;
    }
    load_routes();
  }
  return std::nullopt;
}

Path cycle_arc(const PermCycle& cycle, VertexId from, VertexId to, VertexId avoid) {
  const auto& vs = cycle.vertices;
  const auto n = vs.size();
  auto pos = [&](VertexId v) {
    auto it = std::find(vs.begin(), vs.end(), v);
    if (it == vs.end()) throw DomainError("vertex " + std::to_string(v) + " is not on the cycle");
    return static_cast<std::size_t>(it - vs.begin());
  };
  auto pf = pos(from), pt = pos(to), pa = pos(avoid);
  bool forward = true;
  for (auto i = pf; i != pt; i = (i + 1) % n)
    if (i == pa) {
      forward = false;
      break;
    }
  Path out;
  for (auto i = pf;; i = forward ? (i + 1) % n : (i + n - 1) % n) {
    out.push_back(vs[i]);
    if (i == pt) break;
  }
  return out;
}

TriadSplit triad_split(const ReducedMinor& g, const PermCycle& cycle) {
  TriadSplit t;
  t.cycle = cycle;
  std::size_t found = 0;
  for (auto s : g.labels()) {
    if (found == 3) break;
    if (!std::binary_search(cycle.supernodes.begin(), cycle.supernodes.end(), s)) t.N[found++] = s;
  }
  if (found < 3) throw ResourceError("fewer than three supernodes avoid the cycle");
  found = 0;
  for (auto s : cycle.supernodes) {
    if (found == 3) break;
    if (cycle.exceptional != s) t.T[found++] = s;
  }
  if (found < 3) throw StructuralError("cycle meets fewer than three supernodes in a single path");

  const auto len = cycle.route.size();
  for (int j = 0; j < 3; ++j) {
    auto at = static_cast<std::size_t>(std::find(cycle.route.begin(), cycle.route.end(), t.T[j]) - cycle.route.begin());
    auto entry = g.port(t.T[j], cycle.route[(at + len - 1) % len]);
    auto exit = g.port(t.T[j], cycle.route[(at + 1) % len]);
    auto door = g.port(t.T[j], t.N[j]);
    t.u[j] = g.port(t.N[j], t.T[j]);
    t.c[j] = central_vertex(g, t.T[j], entry, exit, door);
    t.Q[j] = Path{t.u[j]};
    auto inner = g.supernode_path(door, t.c[j]);
    t.Q[j].insert(t.Q[j].end(), inner.begin(), inner.end());
  }
  const auto& a = g.group();
  for (int j = 0; j < 3; ++j)
    t.x[j] = g.path_weight(cycle_arc(cycle, t.c[(j + 2) % 3], t.c[(j + 1) % 3], t.c[j]));
  for (int j = 0; j < 3; ++j) t.delta[j] = a.sub(a.add(t.x[j], t.x[(j + 1) % 3]), t.x[(j + 2) % 3]);
  return t;
}

Subgroup minimal_restriction(const ReducedMinor& g) {
  auto gens = restriction_generators_parallel(g);
  return generate_subgroup(g.group_ptr(), gens);
}

bool verify_restricted(const ReducedMinor& g, const Subgroup& b) {
  for (auto x : restriction_generators_parallel(g))
    if (!b.contains(x)) return false;
  return true;
}

bool verify_restricted_enumerative(const ReducedMinor& g, const Subgroup& b, std::size_t cap) {
  const auto& a = g.group();
  for (const auto& e : g.edges())
    if (!b.contains(a.twice(e.weight))) return false;
  SmallCycleStream stream(g, 5, cap);
  while (auto c = stream.next())
    if (!b.contains(cycle_weight(g, *c))) return false;
  return true;
}

std::optional<RestrictionWitness> first_violation(const ReducedMinor& g, const Subgroup& b) {
  if (verify_restricted(g, b)) return std::nullopt;
  const auto& labels = g.labels();
  for (std::size_t i = 1; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      auto c = cycle_from_route(g, {labels[0], labels[i], labels[j]});
      auto w = cycle_weight(g, *c);
      if (!b.contains(w)) return RestrictionWitness{std::move(c), std::nullopt, w};
    }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto w = g.group().twice(g.edge(e).weight);
    if (!b.contains(w)) return RestrictionWitness{std::nullopt, e, w};
  }
  throw SoundnessError("restriction check failed without a witness");
}

}  // namespace divsub
