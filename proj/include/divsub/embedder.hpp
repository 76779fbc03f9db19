#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divsub/connector.hpp"

namespace divsub {

// Connector F_k, built for subgroup B_k inside the minor G_k.
struct LedgerEntry {
  Connector connector;
  Subgroup b;
  MinorPtr graph;
};

struct ConnectorLedger {
  std::vector<LedgerEntry> entries;
  MinorPtr final_graph;
  Subgroup final_subgroup;
  std::size_t spent_case1 = 0;
  std::size_t spent_case2 = 0;
  std::size_t descents = 0;
};

// Collects m connectors starting from B_0 = A, descending whenever a
// connector cannot be built. Throws ResourceError when the minor runs out of
// supernodes.
ConnectorLedger collect_connectors(const MinorPtr& g0, std::size_t m, const ConnectorOptions& options = {});

// Four supernodes of the final minor: a central one holding the branch
// vertex y and three sides, each with its vertex adjacent to the centre.
struct Cluster {
  SupernodeLabel central = 0;
  VertexId y = kNoVertex;
  std::array<SupernodeLabel, 3> sides{};
  std::array<VertexId, 3> side_vertex{};
  std::array<bool, 3> used{};

  // Lowest unused side, or nullopt.
  [[nodiscard]] std::optional<std::size_t> free_side() const;
};

// Consecutive groups of four from the lowest labels. Throws ResourceError
// when the minor has fewer than 4 * count supernodes.
std::vector<Cluster> select_clusters(const ReducedMinor& gm, std::size_t count);

struct BranchChoice {
  std::vector<std::size_t> chosen;     // indices into the cluster list
  std::vector<std::size_t> colour;     // coset index per cluster
  std::size_t colours = 0;             // |B*|
};

// Colours each central vertex by the coset of w(P_x) in B*, where B* is the
// halving preimage of B_m modulo B_m, and takes the first n clusters of the
// largest class (ties to the lower coset label).
BranchChoice pick_branch_vertices(const ReducedMinor& gm, const Subgroup& bm, const std::vector<Cluster>& clusters,
                                  std::size_t n);

// Weight-zero path of the original graph between the branch vertices of two
// clusters, routed through the entry's connector. Marks the sides it uses.
Path route_subdivision_path(const LedgerEntry& entry, const ReducedMinor& gm, Cluster& ci, Cluster& cj);

struct Subdivision {
  GroupPtr group;
  std::vector<VertexId> branch;  // per vertex of H
  std::vector<Path> paths;       // per edge of H, in edge-list order
};

struct EmbedStats {
  std::uint64_t f = 0;
  std::uint64_t bound = 0;
  bool below_bound = false;
  std::size_t connectors = 0;
  std::size_t descents = 0;
  std::size_t spent_case1 = 0;
  std::size_t spent_case2 = 0;
  std::size_t clusters = 0;
  std::size_t colours = 0;
  std::string final_subgroup;
};

struct Embedding {
  Subdivision subdivision;
  EmbedStats stats;
};

struct EmbedOptions {
  ConnectorOptions connector;
};

// 7m|A| + 4n sigma(A) + 14|A|.
std::uint64_t required_supernodes(const TargetGraph& h, const GroupPtr& a);

// Finds an A-divisible H-subdivision in g. Below the bound the attempt is
// still made and a failure surfaces as ResourceError naming the stage.
Embedding embed(const WeightedMinor& g, const TargetGraph& h, const EmbedOptions& options = {});

struct SubdivisionViolation {
  enum class Kind { Shape, Branch, MissingEdge, Endpoints, Disjointness, Weight };
  Kind kind;
  std::string detail;
  std::optional<std::size_t> path;
  std::optional<VertexId> vertex;
};

std::string_view to_string(SubdivisionViolation::Kind k);

// Checks sub against g and h alone.
std::optional<SubdivisionViolation> verify_subdivision(const WeightedGraph& g, const TargetGraph& h,
                                                       const Subdivision& sub);

}  // namespace divsub
