#include "divsub/embedder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "divsub/error.hpp"

namespace divsub {

std::optional<std::size_t> Cluster::free_side() const {
  for (std::size_t s = 0; s < 3; ++s)
    if (!used[s]) return s;
  return std::nullopt;
}

ConnectorLedger collect_connectors(const MinorPtr& g0, std::size_t m, const ConnectorOptions& options) {
  ConnectorLedger ledger{{}, g0, Subgroup::whole(g0->group_ptr()), 0, 0, 0};
  auto& cur = ledger.final_graph;
  auto& b = ledger.final_subgroup;
  while (ledger.entries.size() < m) {
    auto r = build_connector(cur, b, options);
    if (auto* d = std::get_if<DescentOutcome>(&r)) {
      if (d->trivial)
        throw ResourceError("stage connectors: " + std::to_string(cur->num_supernodes()) +
                            " supernodes left for a " + b.to_string() + "-connector after " +
                            std::to_string(ledger.entries.size()) + " of " + std::to_string(m));
      ledger.spent_case2 += cur->num_supernodes() - d->Gp->num_supernodes();
      ++ledger.descents;
      b = d->Bp;
      cur = d->Gp;
      continue;
    }
    auto& f = std::get<Connector>(r);
    ledger.spent_case1 += f.home.size();
    ledger.entries.push_back({f, b, cur});
    if (f.home.empty()) continue;
    if (cur->num_supernodes() < f.home.size() + 4)
      throw ResourceError("stage connectors: connector " + std::to_string(ledger.entries.size()) +
                          " leaves fewer than 4 supernodes");
    cur = delete_and_reduce(cur, f.home).first;
  }
  const auto order = g0->group().order();
  std::size_t budget = 0;
  for (const auto& e : ledger.entries) budget += 7 * e.b.size();
  if (ledger.spent_case1 > budget) throw SoundnessError("connectors spent more than 7|B_k| supernodes each");
  if (ledger.spent_case2 > 14 * static_cast<std::size_t>(order))
    throw SoundnessError("descents spent more than 14|A| supernodes");
  return ledger;
}

std::vector<Cluster> select_clusters(const ReducedMinor& gm, std::size_t count) {
  const auto& labels = gm.labels();
  if (labels.size() < 4 * count)
    throw ResourceError("stage clusters: " + std::to_string(count) + " clusters need " + std::to_string(4 * count) +
                        " supernodes, " + std::to_string(labels.size()) + " remain");
  std::vector<Cluster> out;
  for (std::size_t c = 0; c < count; ++c) {
    Cluster k;
    k.central = labels[4 * c];
    for (std::size_t s = 0; s < 3; ++s) {
      k.sides[s] = labels[4 * c + 1 + s];
      k.side_vertex[s] = gm.port(k.sides[s], k.central);
    }
    k.y = central_vertex(gm, k.central, gm.port(k.central, k.sides[0]), gm.port(k.central, k.sides[1]),
                         gm.port(k.central, k.sides[2]));
    out.push_back(k);
  }
  return out;
}

BranchChoice pick_branch_vertices(const ReducedMinor& gm, const Subgroup& bm, const std::vector<Cluster>& clusters,
                                  std::size_t n) {
  BranchChoice choice;
  if (n == 0) return choice;
  if (clusters.empty()) throw ResourceError("stage branch vertices: no clusters");
  const auto& a = gm.group();
  auto q = quotient(halving_preimage(gm.group_ptr(), bm), bm);
  choice.colours = q.size();
  const auto& first = clusters.front();
  std::vector<std::size_t> count(q.size(), 0);
  for (const auto& c : clusters) {
    auto w = c.central == first.central ? a.zero()
                                        : gm.path_weight(tree_path(gm, first.y, c.y, {first.central, c.central}));
    if (!q.numerator.contains(w)) throw SoundnessError("tree path weight " + a.format(w) + " escapes the halving preimage");
    choice.colour.push_back(q.coset_of(w));
    ++count[choice.colour.back()];
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < count.size(); ++k)
    if (count[k] > count[best]) best = k;
  if (count[best] < n)
    throw ResourceError("stage branch vertices: largest colour class has " + std::to_string(count[best]) +
                        " central vertices, need " + std::to_string(n));
  for (std::size_t i = 0; i < clusters.size() && choice.chosen.size() < n; ++i)
    if (choice.colour[i] == best) choice.chosen.push_back(i);
  for (std::size_t i = 0; i < choice.chosen.size(); ++i)
    for (std::size_t j = i + 1; j < choice.chosen.size(); ++j) {
      const auto& ci = clusters[choice.chosen[i]];
      const auto& cj = clusters[choice.chosen[j]];
      auto w = gm.path_weight(tree_path(gm, ci.y, cj.y, {ci.central, cj.central}));
      if (!bm.contains(w)) throw SoundnessError("branch vertices of one colour joined by weight " + a.format(w));
    }
  return choice;
}

namespace {

void append(Path& out, const Path& p) {
  auto from = out.empty() || p.empty() || out.back() != p.front() ? p.begin() : p.begin() + 1;
  out.insert(out.end(), from, p.end());
}

Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

// Lifted access path from the branch vertex into the side, cut at the first
// side vertex.
Path access(const ReducedMinor& gm, const ReducedMinor& gk, const std::vector<char>& alive, const Cluster& c,
            std::size_t side) {
  auto lifted = lift_to(gm, tree_path(gm, c.y, c.side_vertex[side], {c.central, c.sides[side]}), alive);
  auto it = std::find_if(lifted.begin(), lifted.end(), [&](VertexId v) { return gk.supernode_of(v) == c.sides[side]; });
  return Path(lifted.begin(), it + 1);
}

}  // namespace

Path route_subdivision_path(const LedgerEntry& entry, const ReducedMinor& gm, Cluster& ci, Cluster& cj) {
  const auto& gk = *entry.graph;
  const auto& a = gk.group();
  const auto& f = entry.connector;
  auto si = ci.free_side(), sj = cj.free_side();
  if (!si || !sj) throw SoundnessError("no free side supernode left in a cluster");
  const auto alive = gk.alive_mask();

  auto q1 = access(gm, gk, alive, ci, *si);
  auto q2 = access(gm, gk, alive, cj, *sj);
  auto p = lift_to(gm, tree_path(gm, ci.y, cj.y, {ci.central, cj.central}), alive);
  auto p1 = q1.back(), p2 = q2.back();

  Path head = q1, tail, middle;
  if (f.empty()) {
    append(head, tree_path(gk, p1, p2, {ci.sides[*si], cj.sides[*sj]}));
  } else {
    append(head, tree_path(gk, p1, f.first(), {ci.sides[*si], gk.supernode_of(f.first())}));
    tail = reversed(tree_path(gk, p2, f.last(), {cj.sides[*sj], gk.supernode_of(f.last())}));
    middle = f.base_path();
  }
  append(tail, reversed(q2));
  auto join = [&](const Path& mid) {
    Path r = head;
    append(r, mid);
    append(r, tail);
    return r;
  };
  auto route = join(middle);

  auto wp = gk.path_weight(p);
  auto wq = gk.path_weight(route);
  if (!entry.b.contains(a.add(wq, wp)))
    throw SoundnessError("routing cycle has weight " + a.format(a.add(wq, wp)) + " outside " + entry.b.to_string());
  if (!entry.b.contains(wp)) throw SoundnessError("branch path weight " + a.format(wp) + " outside B_k");
  if (!f.empty()) route = join(realize(f, a, a.neg(wq)));
  auto lifted = lift_to(gk, route, {});
  if (gk.path_weight(route) != a.zero()) throw SoundnessError("switched path has nonzero weight");
  ci.used[*si] = true;
  cj.used[*sj] = true;
  return lifted;
}

std::uint64_t required_supernodes(const TargetGraph& h, const GroupPtr& a) {
  return 7 * h.num_edges() * a->order() + 4 * h.num_vertices() * sigma(a) + 14 * a->order();
}

Embedding embed(const WeightedMinor& g, const TargetGraph& h, const EmbedOptions& options) {
  if (h.max_degree() > 3) throw DomainError("target graph is not subcubic");
  if (auto bad = validate_minor(g)) throw StructuralError(bad->detail);
  Embedding out;
  auto& st = out.stats;
  const auto& grp = g.group_ptr();
  st.f = g.num_supernodes();
  st.bound = required_supernodes(h, grp);
  st.below_bound = st.f < st.bound;
  const auto n = h.num_vertices();
  const auto m = h.num_edges();

  auto g0 = reduce(g).first;
  auto ledger = collect_connectors(g0, m, options.connector);
  st.connectors = ledger.entries.size();
  st.descents = ledger.descents;
  st.spent_case1 = ledger.spent_case1;
  st.spent_case2 = ledger.spent_case2;
  st.final_subgroup = ledger.final_subgroup.to_string();
  const auto& gm = *ledger.final_graph;

  auto want = static_cast<std::size_t>(n * sigma(grp));
  auto count = std::min(want, gm.num_supernodes() / 4);
  if (count < n)
    throw ResourceError("stage clusters: " + std::to_string(gm.num_supernodes()) + " supernodes remain, " +
                        std::to_string(4 * n) + " needed at least");
  auto clusters = select_clusters(gm, count);
  st.clusters = clusters.size();
  auto choice = pick_branch_vertices(gm, ledger.final_subgroup, clusters, n);
  st.colours = choice.colours;

  auto& sub = out.subdivision;
  sub.group = grp;
  for (auto c : choice.chosen) sub.branch.push_back(clusters[c].y);
  const auto& edges = h.edges();
  for (std::size_t k = 0; k < m; ++k) {
    auto [i, j] = edges[k];
    sub.paths.push_back(route_subdivision_path(ledger.entries[k], gm, clusters[choice.chosen[i]],
                                               clusters[choice.chosen[j]]));
  }
  if (auto bad = verify_subdivision(g.graph(), h, sub))
    throw SoundnessError("embedding failed verification: " + bad->detail);
  return out;
}

std::string_view to_string(SubdivisionViolation::Kind k) {
  switch (k) {
    case SubdivisionViolation::Kind::Shape: return "shape";
    case SubdivisionViolation::Kind::Branch: return "branch";
    case SubdivisionViolation::Kind::MissingEdge: return "missing-edge";
    case SubdivisionViolation::Kind::Endpoints: return "endpoints";
    case SubdivisionViolation::Kind::Disjointness: return "disjointness";
    case SubdivisionViolation::Kind::Weight: return "weight";
  }
  return "unknown";
}

std::optional<SubdivisionViolation> verify_subdivision(const WeightedGraph& g, const TargetGraph& h,
                                                       const Subdivision& sub) {
  using K = SubdivisionViolation::Kind;
  auto fail = [](K k, std::string d, std::optional<std::size_t> p = {}, std::optional<VertexId> v = {}) {
    return SubdivisionViolation{k, std::move(d), p, v};
  };
  if (!sub.group || !(*sub.group == g.group())) return fail(K::Shape, "group differs from the host graph's");
  if (sub.branch.size() != h.num_vertices()) return fail(K::Shape, "branch map size differs from |V(H)|");
  if (sub.paths.size() != h.num_edges()) return fail(K::Shape, "path count differs from |E(H)|");

  std::map<VertexId, std::size_t> branch_of;
  for (std::size_t i = 0; i < sub.branch.size(); ++i) {
    auto v = sub.branch[i];
    if (v >= g.num_vertices()) return fail(K::Branch, "branch vertex out of range", {}, v);
    if (!branch_of.emplace(v, i).second) return fail(K::Branch, "branch map is not injective", {}, v);
  }
  std::map<VertexId, std::size_t> interior_of;
  for (std::size_t k = 0; k < sub.paths.size(); ++k) {
    const auto& p = sub.paths[k];
    auto [i, j] = h.edges()[k];
    if (p.size() < 2) return fail(K::Shape, "path " + std::to_string(k) + " has fewer than two vertices", k);
    for (auto v : p)
      if (v >= g.num_vertices()) return fail(K::MissingEdge, "vertex out of range", k, v);
    bool forward = p.front() == sub.branch[i] && p.back() == sub.branch[j];
    bool backward = p.front() == sub.branch[j] && p.back() == sub.branch[i];
    if (!forward && !backward) return fail(K::Endpoints, "path " + std::to_string(k) + " has wrong endpoints", k);
    Element w = g.group().zero();
    for (std::size_t t = 1; t < p.size(); ++t) {
      auto e = g.edge_between(p[t - 1], p[t]);
      if (!e) return fail(K::MissingEdge, "path " + std::to_string(k) + " uses a non-edge", k, p[t - 1]);
      w = g.group().add(w, g.edge(*e).weight);
    }
    for (std::size_t t = 1; t + 1 < p.size(); ++t) {
      auto v = p[t];
      if (branch_of.count(v)) return fail(K::Disjointness, "path " + std::to_string(k) + " passes a branch vertex", k, v);
      if (!interior_of.emplace(v, k).second)
        return fail(K::Disjointness, "paths " + std::to_string(interior_of[v]) + " and " + std::to_string(k) +
                                         " share vertex " + std::to_string(v), k, v);
    }
    if (w != g.group().zero())
      return fail(K::Weight, "path " + std::to_string(k) + " has weight " + g.group().format(w), k);
  }
  return std::nullopt;
}

}  // namespace divsub
