#include "divsub/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "divsub/error.hpp"

namespace divsub {

namespace {

struct BudgetHit {
  std::string reason;
};

class Search {
 public:
  Search(const WeightedGraph& g, const TargetGraph& h, const SearchBudget& budget)
      : g_(g),
        h_(h),
        budget_(budget),
        zero_(g.group().zero()),
        deadline_(std::chrono::steady_clock::now() + budget.time_cap),
        branch_(h.num_vertices(), kNoVertex),
        pending_(h.num_vertices(), 0),
        used_(g.num_vertices(), 0),
        is_branch_(g.num_vertices(), 0),
        paths_(h.num_edges()) {
    order_.resize(h.num_edges());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    auto degree_sum = [&](std::size_t e) { return h.degree(h.edges()[e].first) + h.degree(h.edges()[e].second); };
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return degree_sum(a) > degree_sum(b); });
    for (const auto& [a, b] : h.edges()) {
      ++pending_[a];
      ++pending_[b];
    }
  }

  bool run() { return solve(0); }

  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

  [[nodiscard]] Subdivision witness() const { return {g_.group_ptr(), branch_, paths_}; }

 private:
  void tick() {
    if ((++nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      throw BudgetHit{"time cap of " + std::to_string(budget_.time_cap.count()) + " ms"};
    }
  }

  [[nodiscard]] bool can_host(VertexId v, std::uint32_t hv) const {
    return used_[v] == 0 && g_.degree(v) >= h_.degree(hv);
  }

  // Every placed branch vertex still needs one free or branch neighbour per
  // unrouted incident H-edge.
  [[nodiscard]] bool feasible() const {
    for (std::uint32_t u = 0; u < h_.num_vertices(); ++u) {
      if (branch_[u] == kNoVertex || pending_[u] == 0) continue;
      std::size_t room = 0;
      for (const Arc& arc : g_.neighbors(branch_[u])) {
        if (used_[arc.to] == 0 || is_branch_[arc.to] != 0) ++room;
      }
      if (room < pending_[u]) return false;
    }
    return true;
  }

  bool solve(std::size_t k) {
    tick();
    if (k == order_.size()) return place_isolated(0);
    const auto [a, b] = h_.edges()[order_[k]];
    if (branch_[a] == kNoVertex && branch_[b] == kNoVertex) {
      for (VertexId v = 0; v < g_.num_vertices(); ++v) {
        if (!can_host(v, a)) continue;
        place(a, v);
        const bool ok = feasible() && route(k, a, b);
        if (ok) return true;
        unplace(a);
      }
      return false;
    }
    return branch_[a] != kNoVertex ? route(k, a, b) : route(k, b, a);
  }

  bool place_isolated(std::uint32_t from) {
    for (std::uint32_t u = from; u < h_.num_vertices(); ++u) {
      if (branch_[u] != kNoVertex) continue;
      for (VertexId v = 0; v < g_.num_vertices(); ++v) {
        if (used_[v] != 0) continue;
        place(u, v);
        if (place_isolated(u + 1)) return true;
        unplace(u);
      }
      return false;
    }
    return true;
  }

  void place(std::uint32_t hv, VertexId v) {
    branch_[hv] = v;
    used_[v] = 1;
    is_branch_[v] = 1;
  }

  void unplace(std::uint32_t hv) {
    used_[branch_[hv]] = 0;
    is_branch_[branch_[hv]] = 0;
    branch_[hv] = kNoVertex;
  }

  // Paths from branch_[src] to the (possibly unplaced) dst with weight zero.
  // Interior vertices stay marked used while the rest of H is routed.
  bool route(std::size_t k, std::uint32_t src, std::uint32_t dst) {
    Path path{branch_[src]};
    std::uint64_t tried = 0;
    return extend(k, src, dst, path, zero_, tried);
  }

  bool commit(std::size_t k, std::uint32_t src, std::uint32_t dst, const Path& path, std::uint64_t& tried) {
    if (++tried > budget_.max_paths_per_pair) {
      throw BudgetHit{"more than " + std::to_string(budget_.max_paths_per_pair) + " candidate paths for one H-edge"};
    }
    const std::size_t e = order_[k];
    Path oriented = path;
    if (h_.edges()[e].first != src) std::reverse(oriented.begin(), oriented.end());
    --pending_[src];
    --pending_[dst];
    paths_[e] = std::move(oriented);
    const bool ok = feasible() && solve(k + 1);
    if (!ok) {
      paths_[e].clear();
      ++pending_[src];
      ++pending_[dst];
    }
    return ok;
  }

  bool extend(std::size_t k, std::uint32_t src, std::uint32_t dst, Path& path, Element weight,
              std::uint64_t& tried) {
    tick();
    const FiniteAbelianGroup& group = g_.group();
    const VertexId target = branch_[dst];
    const VertexId x = path.back();
    for (const Arc& arc : g_.neighbors(x)) {
      const VertexId y = arc.to;
      const Element w = group.add(weight, g_.edge(arc.edge).weight);
      if (target != kNoVertex) {
        if (y == target) {
          if (w != zero_) continue;
          path.push_back(y);
          const bool ok = commit(k, src, dst, path, tried);
          path.pop_back();
          if (ok) return true;
          continue;
        }
      } else if (w == zero_ && can_host(y, dst)) {
        place(dst, y);
        path.push_back(y);
        const bool ok = commit(k, src, dst, path, tried);
        path.pop_back();
        if (ok) return true;
        unplace(dst);
      }
      if (used_[y] != 0) continue;
      used_[y] = 1;
      path.push_back(y);
      const bool ok = extend(k, src, dst, path, w, tried);
      path.pop_back();
      used_[y] = 0;
      if (ok) return true;
    }
    return false;
  }

  const WeightedGraph& g_;
  const TargetGraph& h_;
  const SearchBudget& budget_;
  const Element zero_;
  const std::chrono::steady_clock::time_point deadline_;
  std::vector<std::size_t> order_;
  std::vector<VertexId> branch_;
  std::vector<std::size_t> pending_;
  std::vector<char> used_;
  std::vector<char> is_branch_;
  std::vector<Path> paths_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

void validate_budget(const SearchBudget& budget) {
  if (budget.max_vertices == 0 || budget.max_paths_per_pair == 0 || budget.time_cap.count() <= 0) {
    throw DomainError("search budget fields must be positive");
  }
}

std::string_view to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Found: return "found";
    case OracleVerdict::None: return "none";
    case OracleVerdict::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

OracleResult brute_force_subdivision(const WeightedGraph& g, const TargetGraph& h, const SearchBudget& budget) {
  validate_budget(budget);
  OracleResult result;
  if (g.num_vertices() > budget.max_vertices) {
    result.verdict = OracleVerdict::BudgetExceeded;
    result.reason = "graph has " + std::to_string(g.num_vertices()) + " vertices, cap is " +
                    std::to_string(budget.max_vertices);
    return result;
  }
  if (h.num_vertices() > g.num_vertices()) return result;
  Search search(g, h, budget);
  try {
    if (search.run()) {
      result.verdict = OracleVerdict::Found;
      result.witness = search.witness();
      if (auto v = verify_subdivision(g, h, *result.witness)) {
        throw SoundnessError("oracle witness rejected: " + v->detail);
      }
    }
  } catch (const BudgetHit& hit) {
    result.verdict = OracleVerdict::BudgetExceeded;
    result.reason = hit.reason;
  }
  result.nodes = search.nodes();
  return result;
}

std::string_view to_string(CrossCheckStatus s) {
  switch (s) {
    case CrossCheckStatus::Consistent: return "consistent";
    case CrossCheckStatus::IncompleteBelowBound: return "embedder incomplete below bound (expected)";
    case CrossCheckStatus::Divergence: return "divergence";
    case CrossCheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

CrossCheckReport cross_check(const WeightedMinor& g, const TargetGraph& h, const SearchBudget& budget,
                             const EmbedFn& embedder) {
  CrossCheckReport report;
  report.meets_bound = g.num_supernodes() >= required_supernodes(h, g.group_ptr());

  std::optional<Subdivision> produced;
  std::string failure;
  try {
    produced = embedder ? embedder(g, h).subdivision : embed(g, h).subdivision;
  } catch (const SoundnessError& e) {
    report.status = CrossCheckStatus::Divergence;
    report.detail = e.what();
    return report;
  } catch (const Error& e) {
    failure = e.what();
  }
  report.embedder_succeeded = produced.has_value();

  if (produced) {
    if (auto v = verify_subdivision(g.graph(), h, *produced)) {
      report.status = CrossCheckStatus::Divergence;
      report.detail = "embedder output rejected (" + std::string(to_string(v->kind)) + "): " + v->detail;
      return report;
    }
  } else if (report.meets_bound) {
    report.status = CrossCheckStatus::Divergence;
    report.detail = "embedder failed at or above the bound: " + failure;
    return report;
  }

  const OracleResult oracle = brute_force_subdivision(g.graph(), h, budget);
  report.oracle = oracle.verdict;
  if (produced) {
    if (oracle.verdict == OracleVerdict::None) {
      report.status = CrossCheckStatus::Divergence;
      report.detail = "oracle found no subdivision but the embedder produced a verified one";
    } else {
      report.status = CrossCheckStatus::Consistent;
      report.detail = oracle.verdict == OracleVerdict::Found ? "both found a subdivision"
                                                             : "embedder witness verified; oracle " + oracle.reason;
    }
    return report;
  }
  switch (oracle.verdict) {
    case OracleVerdict::Found:
      report.status = CrossCheckStatus::IncompleteBelowBound;
      report.detail = "oracle found a subdivision the embedder missed: " + failure;
      break;
    case OracleVerdict::None:
      report.status = CrossCheckStatus::Consistent;
      report.detail = "neither found a subdivision";
      break;
    case OracleVerdict::BudgetExceeded:
      report.status = CrossCheckStatus::Inconclusive;
      report.detail = "embedder failed below the bound; oracle " + oracle.reason;
      break;
  }
  return report;
}

}  // namespace divsub
