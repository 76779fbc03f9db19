#include "divsub/graph.hpp"

#include <algorithm>
#include <set>

#include "divsub/error.hpp"

namespace divsub {

WeightedGraph::WeightedGraph(GroupPtr group, std::size_t num_vertices, std::vector<WeightedEdge> edges)
    : group_(std::move(group)), edges_(std::move(edges)), adjacency_(num_vertices) {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.u >= num_vertices || edge.v >= num_vertices)
      throw StructuralError("edge " + std::to_string(e) + " has an endpoint outside 0.." +
                            std::to_string(num_vertices == 0 ? 0 : num_vertices - 1));
    if (edge.u == edge.v) throw StructuralError("loop at vertex " + std::to_string(edge.u));
    if (!group_->contains(edge.weight)) throw StructuralError("edge weight outside " + group_->to_string());
    adjacency_[edge.u].push_back({edge.v, e});
    adjacency_[edge.v].push_back({edge.u, e});
  }
  for (VertexId v = 0; v < adjacency_.size(); ++v) {
    auto& arcs = adjacency_[v];
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    for (std::size_t i = 1; i < arcs.size(); ++i)
      if (arcs[i].to == arcs[i - 1].to)
        throw StructuralError("parallel edges between " + std::to_string(v) + " and " + std::to_string(arcs[i].to));
  }
}

std::optional<EdgeId> WeightedGraph::edge_between(VertexId u, VertexId v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return std::nullopt;
  const auto& arcs = adjacency_[u];
  auto it = std::lower_bound(arcs.begin(), arcs.end(), v, [](const Arc& a, VertexId x) { return a.to < x; });
  if (it == arcs.end() || it->to != v) return std::nullopt;
  return it->edge;
}

Element WeightedGraph::path_weight(const Path& path) const {
  Element total = group_->zero();
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto e = edge_between(path[i - 1], path[i]);
    if (!e) throw StructuralError("no edge between " + std::to_string(path[i - 1]) + " and " + std::to_string(path[i]));
    total = group_->add(total, edges_[*e].weight);
  }
  return total;
}

WeightedMinor::WeightedMinor(WeightedGraph graph, std::vector<std::vector<VertexId>> supernodes)
    : graph_(std::move(graph)), supernodes_(std::move(supernodes)), owner_(graph_.num_vertices(), kNoVertex) {
  for (SupernodeLabel s = 0; s < supernodes_.size(); ++s) {
    for (auto v : supernodes_[s]) {
      if (v >= owner_.size()) throw StructuralError("supernode " + std::to_string(s) + " lists unknown vertex " + std::to_string(v));
      if (owner_[v] != kNoVertex)
        throw StructuralError("vertex " + std::to_string(v) + " lies in supernodes " + std::to_string(owner_[v]) +
                              " and " + std::to_string(s));
      owner_[v] = s;
    }
  }
}

std::optional<MinorViolation> validate_minor(const WeightedMinor& minor) {
  const auto& g = minor.graph();
  const auto f = minor.num_supernodes();
  for (SupernodeLabel s = 0; s < f; ++s)
    if (minor.supernodes()[s].empty())
      return MinorViolation{MinorViolation::Kind::NotPartition, "supernode " + std::to_string(s) + " is empty", s, s};
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (minor.supernode_of(v) == kNoVertex)
      return MinorViolation{MinorViolation::Kind::NotPartition, "vertex " + std::to_string(v) + " is in no supernode", 0, 0};

  std::vector<char> seen(g.num_vertices(), 0);
  for (SupernodeLabel s = 0; s < f; ++s) {
    const auto& members = minor.supernodes()[s];
    std::vector<VertexId> stack{members.front()};
    seen[members.front()] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++reached;
      for (const auto& arc : g.neighbors(v))
        if (!seen[arc.to] && minor.supernode_of(arc.to) == s) {
          seen[arc.to] = 1;
          stack.push_back(arc.to);
        }
    }
    if (reached != members.size())
      return MinorViolation{MinorViolation::Kind::DisconnectedSupernode,
                            "supernode " + std::to_string(s) + " induces a disconnected subgraph", s, s};
  }

  std::vector<char> linked(f * f, 0);
  for (const auto& e : g.edges()) {
    auto a = minor.supernode_of(e.u), b = minor.supernode_of(e.v);
    if (a != b) linked[a * f + b] = linked[b * f + a] = 1;
  }
  for (SupernodeLabel a = 0; a < f; ++a)
    for (SupernodeLabel b = a + 1; b < f; ++b)
      if (!linked[a * f + b])
        return MinorViolation{MinorViolation::Kind::MissingPair,
                              "no edge between supernodes " + std::to_string(a) + " and " + std::to_string(b), a, b};
  return std::nullopt;
}

TargetGraph::TargetGraph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : n_(n), degree_(n, 0) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw StructuralError("target edge endpoint out of range");
    if (a == b) throw StructuralError("target graph has a loop at " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw StructuralError("target graph repeats edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    edges_.emplace_back(a, b);
    ++degree_[a];
    ++degree_[b];
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (degree_[v] > 3) throw StructuralError("target vertex " + std::to_string(v) + " has degree " + std::to_string(degree_[v]) + " > 3");
}

std::size_t TargetGraph::max_degree() const {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

}  // namespace divsub
