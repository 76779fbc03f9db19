#include "divsub/minor.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "divsub/error.hpp"

namespace divsub {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

}  // namespace

ReducedMinor::ReducedMinor(Parts parts)
    : group_(std::move(parts.group)),
      local_of_(parts.root_vertices, kNone),
      edges_(std::move(parts.edges)),
      dense_of_(parts.root_supernodes, kNone) {
  if (parts.owner.size() != parts.root_vertices) throw StructuralError("owner table does not cover the root graph");
  for (VertexId v = 0; v < parts.root_vertices; ++v) {
    auto s = parts.owner[v];
    if (s == kNoVertex) continue;
    if (s >= parts.root_supernodes) throw StructuralError("supernode label " + std::to_string(s) + " out of range");
    local_of_[v] = static_cast<std::uint32_t>(vertices_.size());
    vertices_.push_back(v);
    owner_.push_back(s);
    dense_of_[s] = 0;
  }
  for (SupernodeLabel s = 0; s < parts.root_supernodes; ++s)
    if (dense_of_[s] != kNone) {
      dense_of_[s] = static_cast<std::uint32_t>(labels_.size());
      labels_.push_back(s);
    }
  members_.resize(labels_.size());
  for (auto v : vertices_) members_[dense_of_[owner_[local_of_[v]]]].push_back(v);

  const auto n = vertices_.size();
  const auto f = labels_.size();
  adjacency_.resize(n);
  ports_.assign(f * f, kNoVertex);
  links_.assign(f * f, kNoEdge);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (!contains(edge.u) || !contains(edge.v) || edge.u == edge.v)
      throw StructuralError("edge " + std::to_string(e) + " has an invalid endpoint");
    adjacency_[local_of_[edge.u]].push_back({edge.v, e});
    adjacency_[local_of_[edge.v]].push_back({edge.u, e});
    auto a = dense_of_[owner_[local_of_[edge.u]]];
    auto b = dense_of_[owner_[local_of_[edge.v]]];
    if (a == b) continue;
    if (links_[a * f + b] != kNoEdge)
      throw StructuralError("supernodes " + std::to_string(labels_[a]) + " and " + std::to_string(labels_[b]) +
                            " are joined by more than one edge");
    links_[a * f + b] = links_[b * f + a] = e;
    ports_[a * f + b] = edge.u;
    ports_[b * f + a] = edge.v;
  }
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = 0; b < f; ++b)
      if (a != b && links_[a * f + b] == kNoEdge)
        throw StructuralError("supernodes " + std::to_string(labels_[a]) + " and " + std::to_string(labels_[b]) +
                              " are not adjacent");
  for (auto& arcs : adjacency_) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
    for (std::size_t i = 1; i < arcs.size(); ++i)
      if (arcs[i].to == arcs[i - 1].to) throw StructuralError("parallel edges at " + std::to_string(arcs[i].to));
  }

  parent_.assign(n, kNoVertex);
  depth_.assign(n, 0);
  prefix_.assign(n, group_->zero());
  std::vector<char> seen(n, 0);
  for (std::size_t d = 0; d < f; ++d) {
    const auto& mem = members_[d];
    std::deque<VertexId> queue{mem.front()};
    seen[local_of_[mem.front()]] = 1;
    std::size_t reached = 0;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      ++reached;
      auto lv = local_of_[v];
      for (const auto& arc : adjacency_[lv]) {
        auto lw = local_of_[arc.to];
        if (owner_[lw] != labels_[d]) continue;
        if (seen[lw]) {
          if (arc.to != parent_[lv]) throw StructuralError("supernode " + std::to_string(labels_[d]) + " is not a tree");
          continue;
        }
        seen[lw] = 1;
        parent_[lw] = v;
        depth_[lw] = depth_[lv] + 1;
        prefix_[lw] = group_->add(prefix_[lv], edges_[arc.edge].weight);
        queue.push_back(arc.to);
      }
    }
    if (reached != mem.size())
      throw StructuralError("supernode " + std::to_string(labels_[d]) + " is disconnected");
  }
}

std::uint32_t ReducedMinor::local(VertexId v) const {
  if (!contains(v)) throw StructuralError("vertex " + std::to_string(v) + " is not in the minor");
  return local_of_[v];
}

std::uint32_t ReducedMinor::dense(SupernodeLabel s) const {
  if (!has_supernode(s)) throw StructuralError("supernode " + std::to_string(s) + " is not in the minor");
  return dense_of_[s];
}

std::optional<EdgeId> ReducedMinor::edge_between(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  const auto& arcs = adjacency_[local_of_[u]];
  auto it = std::lower_bound(arcs.begin(), arcs.end(), v, [](const Arc& a, VertexId x) { return a.to < x; });
  if (it == arcs.end() || it->to != v) return std::nullopt;
  return it->edge;
}

Element ReducedMinor::path_weight(const Path& path) const {
  Element total = group_->zero();
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto e = edge_between(path[i - 1], path[i]);
    if (!e) throw StructuralError("no edge between " + std::to_string(path[i - 1]) + " and " + std::to_string(path[i]));
    total = group_->add(total, edges_[*e].weight);
  }
  return total;
}

VertexId ReducedMinor::tree_meet(VertexId u, VertexId v) const {
  if (supernode_of(u) != supernode_of(v))
    throw DomainError("vertices " + std::to_string(u) + " and " + std::to_string(v) + " lie in different supernodes");
  while (depth_[local(u)] > depth_[local(v)]) u = parent_[local(u)];
  while (depth_[local(v)] > depth_[local(u)]) v = parent_[local(v)];
  while (u != v) {
    u = parent_[local(u)];
    v = parent_[local(v)];
  }
  return u;
}

Path ReducedMinor::supernode_path(VertexId u, VertexId v) const {
  auto m = tree_meet(u, v);
  Path up;
  for (auto x = u; x != m; x = parent_[local(x)]) up.push_back(x);
  up.push_back(m);
  Path down;
  for (auto x = v; x != m; x = parent_[local(x)]) down.push_back(x);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

Element ReducedMinor::supernode_path_weight(VertexId u, VertexId v) const {
  auto m = tree_meet(u, v);
  const auto& g = *group_;
  return g.sub(g.add(prefix_[local(u)], prefix_[local(v)]), g.twice(prefix_[local(m)]));
}

std::vector<char> ReducedMinor::alive_mask() const {
  std::vector<char> mask(local_of_.size(), 0);
  for (auto v : vertices_) mask[v] = 1;
  return mask;
}

WeightedMinor ReducedMinor::to_weighted_minor() const {
  std::vector<WeightedEdge> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back({local_of_[e.u], local_of_[e.v], e.weight});
  std::vector<std::vector<VertexId>> parts(labels_.size());
  for (std::size_t d = 0; d < labels_.size(); ++d)
    for (auto v : members_[d]) parts[d].push_back(local_of_[v]);
  return WeightedMinor(WeightedGraph(group_, vertices_.size(), std::move(out)), std::move(parts));
}

namespace {

// Mutable state of the reduction procedure over root vertex ids.
struct Work {
  GroupPtr group;
  std::size_t root_supernodes = 0;
  std::vector<ReducedEdge> edges;
  std::vector<char> edge_alive;
  std::vector<std::vector<EdgeId>> incident;
  std::vector<std::uint32_t> degree;
  std::vector<SupernodeLabel> owner;
  std::vector<std::uint32_t> supernode_size;

  Work(GroupPtr g, std::size_t n, std::size_t f)
      : group(std::move(g)), root_supernodes(f), incident(n), degree(n, 0), owner(n, kNoVertex), supernode_size(f, 0) {}

  [[nodiscard]] VertexId other(EdgeId e, VertexId v) const { return edges[e].u == v ? edges[e].v : edges[e].u; }

  void add_edge(ReducedEdge edge) {
    auto id = static_cast<EdgeId>(edges.size());
    incident[edge.u].push_back(id);
    incident[edge.v].push_back(id);
    ++degree[edge.u];
    ++degree[edge.v];
    edges.push_back(std::move(edge));
    edge_alive.push_back(1);
  }

  void remove_edge(EdgeId e) {
    if (!edge_alive[e]) return;
    edge_alive[e] = 0;
    --degree[edges[e].u];
    --degree[edges[e].v];
  }

  void remove_vertex(VertexId v) {
    for (auto e : incident[v]) remove_edge(e);
    incident[v].clear();
    --supernode_size[owner[v]];
    owner[v] = kNoVertex;
  }

  template <class Fn>
  void for_each_alive(VertexId v, Fn&& fn) const {
    for (auto e : incident[v])
      if (edge_alive[e]) fn(e);
  }

  void compact(VertexId v) {
    auto& inc = incident[v];
    inc.erase(std::remove_if(inc.begin(), inc.end(), [&](EdgeId e) { return !edge_alive[e]; }), inc.end());
  }

  void spanning_trees() {
    std::vector<std::vector<VertexId>> by_supernode(root_supernodes);
    for (VertexId v = 0; v < owner.size(); ++v)
      if (owner[v] != kNoVertex) by_supernode[owner[v]].push_back(v);
    std::vector<char> in_tree(edges.size(), 0);
    std::vector<char> seen(owner.size(), 0);
    for (const auto& mem : by_supernode) {
      if (mem.empty()) continue;
      std::deque<VertexId> queue{mem.front()};
      seen[mem.front()] = 1;
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        std::vector<std::pair<VertexId, EdgeId>> next;
        for_each_alive(v, [&](EdgeId e) {
          auto w = other(e, v);
          if (owner[w] == owner[v] && !seen[w]) next.emplace_back(w, e);
        });
        std::sort(next.begin(), next.end());
        for (auto [w, e] : next) {
          if (seen[w]) continue;
          seen[w] = 1;
          in_tree[e] = 1;
          queue.push_back(w);
        }
      }
    }
    for (EdgeId e = 0; e < edges.size(); ++e)
      if (edge_alive[e] && owner[edges[e].u] == owner[edges[e].v] && !in_tree[e]) remove_edge(e);
  }

  void single_links() {
    std::unordered_map<std::uint64_t, EdgeId> best;
    auto key_of = [&](EdgeId e) {
      auto a = owner[edges[e].u], b = owner[edges[e].v];
      if (a > b) std::swap(a, b);
      return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    auto ends = [&](EdgeId e) { return std::minmax(edges[e].u, edges[e].v); };
    for (EdgeId e = 0; e < edges.size(); ++e) {
      if (!edge_alive[e] || owner[edges[e].u] == owner[edges[e].v]) continue;
      auto [it, fresh] = best.emplace(key_of(e), e);
      if (fresh) continue;
      if (ends(e) < ends(it->second)) {
        remove_edge(it->second);
        it->second = e;
      } else {
        remove_edge(e);
      }
    }
  }

  void prune_leaves() {
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < owner.size(); ++v)
      if (owner[v] != kNoVertex) queue.push_back(v);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      if (owner[v] == kNoVertex || supernode_size[owner[v]] < 2) continue;
      std::uint32_t inside = 0, outside = 0;
      VertexId neighbour = kNoVertex;
      for_each_alive(v, [&](EdgeId e) {
        auto w = other(e, v);
        if (owner[w] == owner[v]) {
          ++inside;
          neighbour = w;
        } else {
          ++outside;
        }
      });
      if (outside > 0 || inside > 1) continue;
      remove_vertex(v);
      if (neighbour != kNoVertex) queue.push_back(neighbour);
    }
  }

  void suppress() {
    for (VertexId v = 0; v < owner.size(); ++v) {
      if (owner[v] == kNoVertex || degree[v] != 2) continue;
      compact(v);
      auto e1 = incident[v][0], e2 = incident[v][1];
      if (other(e1, v) > other(e2, v)) std::swap(e1, e2);
      auto u1 = other(e1, v), u2 = other(e2, v);
      if (supernode_size[owner[v]] < 2)
        throw SoundnessError("suppressing vertex " + std::to_string(v) + " would empty its supernode");
      compact(u1);
      for (auto e : incident[u1])
        if (other(e, u1) == u2)
          throw SoundnessError("suppressing vertex " + std::to_string(v) + " would create a parallel edge");
      ReducedEdge merged{u1, u2, group->add(edges[e1].weight, edges[e2].weight), {}};
      auto& in = merged.interior;
      const auto& first = edges[e1];
      if (first.u == u1) in.insert(in.end(), first.interior.begin(), first.interior.end());
      else in.insert(in.end(), first.interior.rbegin(), first.interior.rend());
      in.push_back(v);
      const auto& second = edges[e2];
      if (second.u == v) in.insert(in.end(), second.interior.begin(), second.interior.end());
      else in.insert(in.end(), second.interior.rbegin(), second.interior.rend());
      remove_vertex(v);
      add_edge(std::move(merged));
    }
  }

  MinorPtr finish() {
    spanning_trees();
    single_links();
    prune_leaves();
    suppress();
    ReducedMinor::Parts parts;
    parts.group = group;
    parts.root_vertices = owner.size();
    parts.root_supernodes = root_supernodes;
    parts.owner = owner;
    for (EdgeId e = 0; e < edges.size(); ++e)
      if (edge_alive[e]) parts.edges.push_back(std::move(edges[e]));
    return std::make_shared<const ReducedMinor>(std::move(parts));
  }
};

}  // namespace

LiftMap compose(const LiftMap& outer, const LiftMap& inner) {
  return LiftMap{inner.child, outer.parent_alive};
}

Path lift_to(const ReducedMinor& g, const Path& path, const std::vector<char>& target_alive) {
  auto keep = [&](VertexId v) { return target_alive.empty() || target_alive[v] != 0; };
  Path out;
  if (path.empty()) return out;
  if (!g.contains(path.front())) throw StructuralError("vertex " + std::to_string(path.front()) + " is not in the minor");
  out.push_back(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto a = path[i - 1], b = path[i];
    auto e = g.edge_between(a, b);
    if (!e) throw StructuralError("no edge between " + std::to_string(a) + " and " + std::to_string(b));
    const auto& edge = g.edge(*e);
    if (edge.u == a) {
      for (auto x : edge.interior)
        if (keep(x)) out.push_back(x);
    } else {
      for (auto it = edge.interior.rbegin(); it != edge.interior.rend(); ++it)
        if (keep(*it)) out.push_back(*it);
    }
    out.push_back(b);
  }
  for (auto v : path)
    if (!keep(v)) throw StructuralError("vertex " + std::to_string(v) + " is absent from the lift target");
  return out;
}

Path lift_path(const LiftMap& map, const Path& child_path) {
  std::vector<VertexId> sorted(child_path);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw StructuralError("path repeats a vertex");
  return lift_to(*map.child, child_path, map.parent_alive);
}

std::pair<MinorPtr, LiftMap> reduce(const WeightedMinor& g) {
  if (g.num_supernodes() < 4)
    throw UnsupportedError("reduction needs at least 4 supernodes, got " + std::to_string(g.num_supernodes()));
  if (auto bad = validate_minor(g)) throw StructuralError(bad->detail);
  const auto& graph = g.graph();
  Work work(g.group_ptr(), graph.num_vertices(), g.num_supernodes());
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    work.owner[v] = g.supernode_of(v);
    ++work.supernode_size[work.owner[v]];
  }
  for (const auto& e : graph.edges()) work.add_edge({e.u, e.v, e.weight, {}});
  auto child = work.finish();
  return {child, LiftMap{child, {}}};
}

std::pair<MinorPtr, LiftMap> delete_and_reduce(const MinorPtr& g, std::span<const SupernodeLabel> doomed) {
  std::vector<char> gone(g->root_num_supernodes(), 0);
  std::size_t removed = 0;
  for (auto s : doomed) {
    if (!g->has_supernode(s)) throw DomainError("supernode " + std::to_string(s) + " is not in the minor");
    if (!gone[s]) ++removed;
    gone[s] = 1;
  }
  if (removed == 0) return {g, LiftMap{g, g->alive_mask()}};
  if (g->num_supernodes() - removed < 4)
    throw UnsupportedError("only " + std::to_string(g->num_supernodes() - removed) + " supernodes would remain");
  Work work(g->group_ptr(), g->root_num_vertices(), g->root_num_supernodes());
  for (auto v : g->vertices()) {
    auto s = g->supernode_of(v);
    if (gone[s]) continue;
    work.owner[v] = s;
    ++work.supernode_size[s];
  }
  for (const auto& e : g->edges())
    if (work.owner[e.u] != kNoVertex && work.owner[e.v] != kNoVertex) work.add_edge(e);
  auto child = work.finish();
  return {child, LiftMap{child, g->alive_mask()}};
}

Path tree_path(const ReducedMinor& g, VertexId u, VertexId v, std::pair<SupernodeLabel, SupernodeLabel> allowed) {
  auto [a, b] = allowed;
  if (!g.contains(u) || !g.contains(v)) throw DomainError("endpoint outside the minor");
  auto su = g.supernode_of(u), sv = g.supernode_of(v);
  if ((su != a && su != b) || (sv != a && sv != b))
    throw DomainError("endpoints " + std::to_string(u) + "," + std::to_string(v) + " outside supernodes " +
                      std::to_string(a) + "," + std::to_string(b));
  if (su == sv) return g.supernode_path(u, v);
  Path out = g.supernode_path(u, g.port(su, sv));
  auto rest = g.supernode_path(g.port(sv, su), v);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

VertexId central_vertex(const ReducedMinor& g, SupernodeLabel s, VertexId v1, VertexId v2, VertexId v3) {
  for (auto v : {v1, v2, v3})
    if (!g.contains(v) || g.supernode_of(v) != s)
      throw DomainError("vertex " + std::to_string(v) + " is not in supernode " + std::to_string(s));
  auto base = g.supernode_path(v1, v2);
  std::vector<VertexId> on(base);
  std::sort(on.begin(), on.end());
  auto lies_on = [&](VertexId x) { return std::binary_search(on.begin(), on.end(), x); };
  if (lies_on(v3)) return v3;
  for (auto x : g.supernode_path(v3, v2))
    if (lies_on(x)) return x;
  throw SoundnessError("tree path from v3 never meets the v1-v2 path");
}

std::optional<std::string> audit_reduced(const ReducedMinor& g) {
  const auto f = g.num_supernodes();
  for (auto s : g.labels()) {
    const auto& mem = g.members(s);
    std::size_t intra = 0;
    for (auto v : mem)
      for (const auto& arc : g.neighbors(v))
        if (g.supernode_of(arc.to) == s) ++intra;
    if (intra / 2 != mem.size() - 1) return "supernode " + std::to_string(s) + " does not induce a tree";
    std::vector<VertexId> stack{mem.front()};
    std::vector<VertexId> seen{mem.front()};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& arc : g.neighbors(v))
        if (g.supernode_of(arc.to) == s && std::find(seen.begin(), seen.end(), arc.to) == seen.end()) {
          seen.push_back(arc.to);
          stack.push_back(arc.to);
        }
    }
    if (seen.size() != mem.size()) return "supernode " + std::to_string(s) + " is disconnected";
    for (auto v : mem) {
      std::size_t inside = 0, outside = 0;
      for (const auto& arc : g.neighbors(v)) (g.supernode_of(arc.to) == s ? inside : outside)++;
      if (inside <= 1 && outside == 0)
        return "leaf " + std::to_string(v) + " of supernode " + std::to_string(s) + " has no outside neighbour";
    }
  }
  std::unordered_map<std::uint64_t, std::size_t> pairs;
  for (const auto& e : g.edges()) {
    auto a = g.supernode_of(e.u), b = g.supernode_of(e.v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    ++pairs[(static_cast<std::uint64_t>(a) << 32) | b];
  }
  for (const auto& [key, count] : pairs)
    if (count != 1)
      return "supernodes " + std::to_string(key >> 32) + " and " + std::to_string(key & 0xffffffffu) + " share " +
             std::to_string(count) + " edges";
  if (pairs.size() != f * (f - 1) / 2) return "some pair of supernodes is not adjacent";
  for (auto v : g.vertices())
    if (g.degree(v) < 3) return "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v));
  return std::nullopt;
}

}  // namespace divsub
