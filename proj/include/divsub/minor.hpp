#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "divsub/graph.hpp"

namespace divsub {

// An edge of a reduced minor. `interior` lists the suppressed vertices of the
// root graph lying between u and v, in order from u to v.
struct ReducedEdge {
  VertexId u = 0;
  VertexId v = 0;
  Element weight;
  std::vector<VertexId> interior;
};

// A reduced A-weighted K_f-minor. Vertices keep the ids they had in the root
// WeightedMinor the chain of reductions started from, and supernodes keep the
// root partition index as their label, so objects anywhere in the chain
// G_0 ⪰ G_1 ⪰ ... can be compared directly.
class ReducedMinor {
 public:
  struct Parts;
  explicit ReducedMinor(Parts parts);

  [[nodiscard]] const GroupPtr& group_ptr() const { return group_; }
  [[nodiscard]] const FiniteAbelianGroup& group() const { return *group_; }

  [[nodiscard]] std::size_t root_num_vertices() const { return local_of_.size(); }
  [[nodiscard]] std::size_t root_num_supernodes() const { return dense_of_.size(); }

  // Alive vertices, ascending.
  [[nodiscard]] const std::vector<VertexId>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
  [[nodiscard]] bool contains(VertexId v) const { return v < local_of_.size() && local_of_[v] != kNoVertex; }

  [[nodiscard]] const std::vector<ReducedEdge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
  [[nodiscard]] const ReducedEdge& edge(EdgeId e) const { return edges_[e]; }
  // Arcs point at root ids and are sorted by them.
  [[nodiscard]] std::span<const Arc> neighbors(VertexId v) const { return adjacency_[local(v)]; }
  [[nodiscard]] std::size_t degree(VertexId v) const { return adjacency_[local(v)].size(); }
  [[nodiscard]] std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;
  [[nodiscard]] Element path_weight(const Path& path) const;

  // Alive supernode labels, ascending.
  [[nodiscard]] const std::vector<SupernodeLabel>& labels() const { return labels_; }
  [[nodiscard]] std::size_t num_supernodes() const { return labels_.size(); }
  [[nodiscard]] bool has_supernode(SupernodeLabel s) const {
    return s < dense_of_.size() && dense_of_[s] != kNoVertex;
  }
  // Members of supernode s, ascending.
  [[nodiscard]] const std::vector<VertexId>& members(SupernodeLabel s) const { return members_[dense(s)]; }
  [[nodiscard]] SupernodeLabel supernode_of(VertexId v) const { return owner_[local(v)]; }

  // The endpoint in supernode a of the unique edge between a and b.
  [[nodiscard]] VertexId port(SupernodeLabel a, SupernodeLabel b) const {
    return ports_[dense(a) * labels_.size() + dense(b)];
  }
  [[nodiscard]] EdgeId link(SupernodeLabel a, SupernodeLabel b) const {
    return links_[dense(a) * labels_.size() + dense(b)];
  }

  // Each supernode tree is rooted at its smallest vertex.
  [[nodiscard]] VertexId tree_parent(VertexId v) const { return parent_[local(v)]; }
  [[nodiscard]] std::uint32_t tree_depth(VertexId v) const { return depth_[local(v)]; }
  // Weight of the tree path from the root of v's supernode to v.
  [[nodiscard]] Element tree_prefix(VertexId v) const { return prefix_[local(v)]; }

  // Path between two vertices of one supernode inside its tree.
  [[nodiscard]] Path supernode_path(VertexId u, VertexId v) const;
  [[nodiscard]] Element supernode_path_weight(VertexId u, VertexId v) const;
  [[nodiscard]] VertexId tree_meet(VertexId u, VertexId v) const;

  // Alive mask over root ids.
  [[nodiscard]] std::vector<char> alive_mask() const;

  // A copy with contiguous vertex ids 0..n-1 (ascending root order) and
  // supernodes in ascending label order.
  [[nodiscard]] WeightedMinor to_weighted_minor() const;

 private:
  [[nodiscard]] std::uint32_t local(VertexId v) const;
  [[nodiscard]] std::uint32_t dense(SupernodeLabel s) const;

  GroupPtr group_;
  std::vector<VertexId> vertices_;
  std::vector<std::uint32_t> local_of_;
  std::vector<ReducedEdge> edges_;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<SupernodeLabel> labels_;
  std::vector<std::uint32_t> dense_of_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<SupernodeLabel> owner_;
  std::vector<VertexId> ports_;
  std::vector<EdgeId> links_;
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<Element> prefix_;
};

struct ReducedMinor::Parts {
  GroupPtr group;
  std::size_t root_vertices = 0;
  std::size_t root_supernodes = 0;
  std::vector<ReducedEdge> edges;
  // owner[v] for every root vertex, kNoVertex for deleted ones.
  std::vector<SupernodeLabel> owner;
};

using MinorPtr = std::shared_ptr<const ReducedMinor>;

// Maps paths of `child` to paths of a parent in the same chain. The parent is
// described by its alive mask; an empty mask stands for the root graph.
struct LiftMap {
  MinorPtr child;
  std::vector<char> parent_alive;

  [[nodiscard]] bool parent_is_root() const { return parent_alive.empty(); }
};

// Composite of parent <- middle (outer) and middle <- child (inner).
LiftMap compose(const LiftMap& outer, const LiftMap& inner);

Path lift_path(const LiftMap& map, const Path& child_path);

// Expands `path` of `g` into the graph whose alive mask is `target_alive`
// (empty: the root graph).
Path lift_to(const ReducedMinor& g, const Path& path, const std::vector<char>& target_alive);

std::pair<MinorPtr, LiftMap> reduce(const WeightedMinor& g);

// Deletes the supernodes in `doomed` (labels) and reduces again.
std::pair<MinorPtr, LiftMap> delete_and_reduce(const MinorPtr& g, std::span<const SupernodeLabel> doomed);

// The unique path from u to v in the tree G[X_a ∪ X_b].
Path tree_path(const ReducedMinor& g, VertexId u, VertexId v, std::pair<SupernodeLabel, SupernodeLabel> allowed);

// Vertex joined to v1, v2, v3 by tree paths meeting only in itself.
VertexId central_vertex(const ReducedMinor& g, SupernodeLabel s, VertexId v1, VertexId v2, VertexId v3);

// Re-checks the four reduced-minor properties from scratch.
std::optional<std::string> audit_reduced(const ReducedMinor& g);

}  // namespace divsub
