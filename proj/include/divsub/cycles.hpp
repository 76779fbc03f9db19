#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "divsub/minor.hpp"

namespace divsub {

inline constexpr std::size_t kDefaultCycleCap = 10000;

// A permissible cycle. `vertices` lists the cycle once around, without
// repeating the first vertex. `route` is the cyclic sequence of supernodes
// the cycle passes through; the exceptional supernode appears in it twice.
struct PermCycle {
  Path vertices;
  std::vector<SupernodeLabel> route;
  std::vector<SupernodeLabel> supernodes;  // ascending
  std::optional<SupernodeLabel> exceptional;
};

// `vertices` closed up by repeating the first vertex.
Path closed_walk(const PermCycle& c);
Element cycle_weight(const ReducedMinor& g, const PermCycle& c);

bool is_permissible_path(const ReducedMinor& g, const Path& p);
// `cycle` lists each vertex once; the closing edge is implied.
bool is_permissible_cycle(const ReducedMinor& g, const Path& cycle);
// The same predicates over an arbitrary minor.
bool is_permissible_path(const WeightedMinor& g, const Path& p);
bool is_permissible_cycle(const WeightedMinor& g, const Path& cycle);

// Builds the cycle that follows `route` through the supernode trees, or
// nullopt when the route does not give a permissible cycle.
std::optional<PermCycle> cycle_from_route(const ReducedMinor& g, const std::vector<SupernodeLabel>& route);

// Streams every permissible cycle whose vertices lie in at most
// `max_supernodes` (3..5) supernodes: all 3-subsets of labels in
// lexicographic order, then 4-subsets, then 5-subsets; within a subset the
// simple cyclic orders first and then the routes that visit one supernode
// twice. Throws IndeterminateError when one subset yields more than `cap`.
class SmallCycleStream {
 public:
  explicit SmallCycleStream(const ReducedMinor& g, std::size_t max_supernodes = 5, std::size_t cap = kDefaultCycleCap);

  std::optional<PermCycle> next();
  [[nodiscard]] std::size_t yielded() const { return yielded_; }

 private:
  bool advance_subset();
  void load_routes();

  const ReducedMinor& g_;
  std::size_t max_k_;
  std::size_t cap_;
  std::size_t k_ = 3;
  std::vector<std::size_t> comb_;
  bool started_ = false;
  bool done_ = false;
  std::vector<std::vector<SupernodeLabel>> routes_;
  std::size_t route_index_ = 0;
  std::size_t subset_count_ = 0;
  std::size_t yielded_ = 0;
};

// Triad data for a small permissible cycle. Index j in 0..2 stands for the
// j+1 of the usual notation: Q[j] runs from u[j] in N[j] through T[j] to the
// cycle vertex c[j], and x[j] is the weight of the cycle segment between
// c[j-1] and c[j+1] avoiding c[j].
struct TriadSplit {
  PermCycle cycle;
  std::array<SupernodeLabel, 3> T{};
  std::array<SupernodeLabel, 3> N{};
  std::array<VertexId, 3> u{};
  std::array<VertexId, 3> c{};
  std::array<Path, 3> Q;
  std::array<Element, 3> x{};
  std::array<Element, 3> delta{};
};

TriadSplit triad_split(const ReducedMinor& g, const PermCycle& cycle);

// Arc of `cycle` from `from` to `to` that does not pass through `avoid`.
Path cycle_arc(const PermCycle& cycle, VertexId from, VertexId to, VertexId avoid);

// Least subgroup R such that g is R-restricted. The triangles through the
// lowest supernode span the cycle space, so R is generated by their weights
// together with the doubled edge weights.
Subgroup minimal_restriction(const ReducedMinor& g);

// B-restriction decided through minimal_restriction.
bool verify_restricted(const ReducedMinor& g, const Subgroup& b);

// B-restriction decided by streaming every small permissible cycle and
// checking every doubled edge weight.
bool verify_restricted_enumerative(const ReducedMinor& g, const Subgroup& b, std::size_t cap = kDefaultCycleCap);

struct RestrictionWitness {
  std::optional<PermCycle> cycle;
  std::optional<EdgeId> edge;  // an edge with 2w(e) outside B
  Element weight;              // w(C), or 2w(e)
};

// nullopt when g is B-restricted. Otherwise the first small permissible cycle
// in stream order among the triangles through the lowest supernode whose
// weight leaves B, or failing that the first edge whose doubled weight does.
std::optional<RestrictionWitness> first_violation(const ReducedMinor& g, const Subgroup& b);

}  // namespace divsub
