#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "divsub/group.hpp"

namespace divsub {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using SupernodeLabel = std::uint32_t;

inline constexpr VertexId kNoVertex = 0xffffffffu;
inline constexpr EdgeId kNoEdge = 0xffffffffu;

// A path is its vertex sequence; a single vertex is a path of length zero.
using Path = std::vector<VertexId>;

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  Element weight;
};

struct Arc {
  VertexId to = 0;
  EdgeId edge = 0;
};

// Simple undirected graph with A-weighted edges. Vertex ids are 0..n-1.
class WeightedGraph {
 public:
  WeightedGraph(GroupPtr group, std::size_t num_vertices, std::vector<WeightedEdge> edges);

  [[nodiscard]] const GroupPtr& group_ptr() const { return group_; }
  [[nodiscard]] const FiniteAbelianGroup& group() const { return *group_; }
  [[nodiscard]] std::size_t num_vertices() const { return adjacency_.size(); }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
  [[nodiscard]] const std::vector<WeightedEdge>& edges() const { return edges_; }
  [[nodiscard]] const WeightedEdge& edge(EdgeId e) const { return edges_[e]; }
  [[nodiscard]] std::span<const Arc> neighbors(VertexId v) const { return adjacency_[v]; }
  [[nodiscard]] std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

  [[nodiscard]] std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;

  // Sum of edge weights along `path`; throws StructuralError if a step is not an edge.
  [[nodiscard]] Element path_weight(const Path& path) const;

 private:
  GroupPtr group_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<Arc>> adjacency_;  // sorted by neighbour id
};

// An A-weighted K_f-minor: a weighted graph plus a partition of its vertices
// into f supernodes. Supernode labels are the partition indices 0..f-1.
class WeightedMinor {
 public:
  WeightedMinor(WeightedGraph graph, std::vector<std::vector<VertexId>> supernodes);

  [[nodiscard]] const WeightedGraph& graph() const { return graph_; }
  [[nodiscard]] const FiniteAbelianGroup& group() const { return graph_.group(); }
  [[nodiscard]] const GroupPtr& group_ptr() const { return graph_.group_ptr(); }
  [[nodiscard]] std::size_t num_supernodes() const { return supernodes_.size(); }
  [[nodiscard]] const std::vector<std::vector<VertexId>>& supernodes() const { return supernodes_; }
  // Supernode label of v, or kNoVertex when v lies in no supernode.
  [[nodiscard]] SupernodeLabel supernode_of(VertexId v) const { return owner_[v]; }

 private:
  WeightedGraph graph_;
  std::vector<std::vector<VertexId>> supernodes_;
  std::vector<SupernodeLabel> owner_;
};

struct MinorViolation {
  enum class Kind { NotPartition, DisconnectedSupernode, MissingPair };
  Kind kind;
  std::string detail;
  // The offending supernode (and partner for MissingPair), when meaningful.
  SupernodeLabel first = 0;
  SupernodeLabel second = 0;
};

// Checks the partition, connectivity of each supernode, and that every pair of
// supernodes is joined by an edge. Returns the first violation found.
std::optional<MinorViolation> validate_minor(const WeightedMinor& minor);

// The subcubic pattern graph H.
class TargetGraph {
 public:
  TargetGraph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  [[nodiscard]] std::size_t num_vertices() const { return n_; }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
  // Each edge stored with its smaller endpoint first, in input order.
  [[nodiscard]] const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }
  [[nodiscard]] std::size_t degree(std::uint32_t v) const { return degree_[v]; }
  [[nodiscard]] std::size_t max_degree() const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::size_t> degree_;
};

}  // namespace divsub
