#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "divsub/cycles.hpp"

namespace divsub {

// A chain P_0, C_1, P_1, ..., C_l, P_l of disjoint paths and cycles. Path
// P_{i-1} ends at attach_in[i] on C_i and P_i starts at attach_out[i]. Each
// cycle splits at its two attachment vertices into a base arc of weight y
// and a switch arc of weight x, both oriented attach_in -> attach_out. The
// empty connector (no paths, no cycles) realizes S = {0}.
struct Connector {
  std::vector<Path> cycles;
  std::vector<VertexId> attach_in;
  std::vector<VertexId> attach_out;
  std::vector<Path> base_arcs;
  std::vector<Path> switch_arcs;
  std::vector<Element> x;
  std::vector<Element> y;
  std::vector<Path> paths;
  std::vector<Element> realizable;          // S, ascending
  std::vector<SupernodeLabel> home;         // ascending

  [[nodiscard]] bool empty() const { return paths.empty(); }
  [[nodiscard]] std::size_t length() const { return cycles.size(); }
  [[nodiscard]] VertexId first() const { return paths.front().front(); }
  [[nodiscard]] VertexId last() const { return paths.back().back(); }
  // x_i - y_i for every cycle.
  [[nodiscard]] std::vector<Element> deltas(const FiniteAbelianGroup& a) const;
  [[nodiscard]] Path base_path() const;
};

struct DescentOutcome {
  Subgroup Bp;
  MinorPtr Gp;
  LiftMap lift;
  bool trivial = false;
};

struct ConnectorOptions {
  // Stream every small cycle on a failed pass and take the span of their
  // deltas instead of the minimal restriction subgroup. Both must agree.
  bool exhaustive_descent = false;
  std::size_t cycle_cap = kDefaultCycleCap;
};

using ConnectorResult = std::variant<Connector, DescentOutcome>;

// Builds a B-connector in g, or descends to a proper subgroup. Paths are in
// root ids and live in g. Throws DomainError when g is not B-restricted.
ConnectorResult build_connector(const MinorPtr& g, const Subgroup& b, const ConnectorOptions& options = {});

// Path between the endpoints of weight w(base path) + s. Cycles are switched
// by the first subset in index order whose deltas sum to s.
Path realize(const Connector& f, const FiniteAbelianGroup& a, Element s);

struct ConnectorViolation {
  enum class Kind { Shape, NotInGraph, Weight, Disjointness, Attachment, Realizability, Endpoint, Permissibility };
  Kind kind;
  std::string detail;
};

std::string_view to_string(ConnectorViolation::Kind k);

std::optional<ConnectorViolation> check_connector(const Connector& f, const ReducedMinor& g);

}  // namespace divsub
