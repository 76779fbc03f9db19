#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "divsub/connector.hpp"
#include "divsub/embedder.hpp"
#include "divsub/oracle.hpp"

namespace divsub {

using Json = nlohmann::ordered_json;

// Parses text, reporting failures as ParseError with line and column.
Json parse_json(std::string_view text, std::string_view source = "input");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Elements are residue vectors.
Json element_to_json(const FiniteAbelianGroup& a, Element e);
Element element_from_json(const FiniteAbelianGroup& a, const Json& j, const std::string& where = "");

// {"group", "num_vertices", "supernodes": [[v,...],...], "edges": [[u, v, [r,...]], ...]}
Json minor_to_json(const WeightedMinor& g);
WeightedMinor minor_from_json(const Json& j);

// {"n", "edges": [[i, j], ...]}
Json target_to_json(const TargetGraph& h);
TargetGraph target_from_json(const Json& j);

// Either a list of generators or {"generators": [...]}.
Subgroup subgroup_from_json(const GroupPtr& a, const Json& j);
Json subgroup_to_json(const Subgroup& b);

struct Certificate {
  Subdivision subdivision;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // as listed per path
  std::vector<Element> claimed_weights;
  std::optional<TargetGraph> target;                             // when embedded in the file
  Json stats;
};

Json certificate_to_json(const Embedding& e, const TargetGraph& h, const WeightedGraph& g);
Json subdivision_to_json(const Subdivision& sub, const TargetGraph& h, const WeightedGraph& g);
Certificate certificate_from_json(const Json& j, const GroupPtr& a);

// verify_subdivision, then agreement of the listed edges and claimed weights
// with h and with the weights recomputed from g.
std::optional<SubdivisionViolation> verify_certificate(const WeightedGraph& g, const TargetGraph& h,
                                                       const Certificate& c);

Json violation_to_json(const SubdivisionViolation& v);

Json connector_to_json(const Connector& f, const FiniteAbelianGroup& a);

// The reduced instance with contiguous ids plus the map back to the input:
// {"instance": ..., "lift": {"vertices": [root id per new id], "supernodes": [...],
//  "edges": [{"edge": [u, v], "interior": [...]}]}} with lift edges in root ids.
Json reduction_to_json(const ReducedMinor& g);

Json restriction_to_json(const ReducedMinor& g, const Subgroup& b, const std::optional<RestrictionWitness>& w);

Json oracle_to_json(const OracleResult& r, const TargetGraph& h, const WeightedGraph& g);

// Graphviz rendering coloured by supernode, with subdivision paths in bold
// when given. Layout hints are left out above 200 vertices.
std::string to_dot(const WeightedMinor& g, const Subdivision* sub = nullptr);

}  // namespace divsub
