#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "divsub/embedder.hpp"

namespace divsub {

struct SearchBudget {
  std::size_t max_vertices = 14;
  // Weight-zero candidate paths tried for one H-edge from one search state.
  std::uint64_t max_paths_per_pair = 1'000'000;
  std::chrono::milliseconds time_cap{60'000};
};

// Throws DomainError unless every field is positive.
void validate_budget(const SearchBudget& budget);

enum class OracleVerdict { Found, None, BudgetExceeded };

std::string_view to_string(OracleVerdict v);

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::None;
  std::optional<Subdivision> witness;  // set iff verdict is Found
  std::string reason;                  // which cap tripped, for BudgetExceeded
  std::uint64_t nodes = 0;             // search steps taken
};

// Exhaustive search for an A-divisible H-subdivision in g, A being g's group.
// Branch vertices and paths are chosen by backtracking, H-edges taken in
// descending order of endpoint degree sum.
OracleResult brute_force_subdivision(const WeightedGraph& g, const TargetGraph& h, const SearchBudget& budget = {});

enum class CrossCheckStatus { Consistent, IncompleteBelowBound, Divergence, Inconclusive };

std::string_view to_string(CrossCheckStatus s);

struct CrossCheckReport {
  CrossCheckStatus status = CrossCheckStatus::Consistent;
  OracleVerdict oracle = OracleVerdict::None;
  bool embedder_succeeded = false;
  bool meets_bound = false;
  std::string detail;
};

using EmbedFn = std::function<Embedding(const WeightedMinor&, const TargetGraph&)>;

// Runs the embedder (embed() unless one is injected) and the oracle on the same
// instance and compares: a verified embedder witness must agree with the
// oracle, and the embedder must succeed whenever f meets the bound.
CrossCheckReport cross_check(const WeightedMinor& g, const TargetGraph& h, const SearchBudget& budget = {},
                             const EmbedFn& embedder = {});

}  // namespace divsub
