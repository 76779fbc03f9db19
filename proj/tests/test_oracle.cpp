#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "divsub/error.hpp"
#include "divsub/oracle.hpp"
#include "support.hpp"

using namespace divsub;

namespace {

WeightedGraph complete(const GroupPtr& a, std::size_t n, Element w) {
  std::vector<WeightedEdge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  return WeightedGraph(a, n, edges);
}

WeightedGraph unit_clique(std::size_t n, std::uint32_t q) {
  auto a = make_group({q});
  return complete(a, n, a->unit());
}

WeightedGraph random_graph(const GroupPtr& a, std::size_t n, Rng& rng, std::uint64_t density) {
  std::vector<WeightedEdge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.chance(density, 100)) edges.push_back({u, v, Element(static_cast<std::uint32_t>(rng.uniform(0, a->order() - 1)))});
  return WeightedGraph(a, n, edges);
}

// Independent decision for H = C_3: some simple cycle through three marked
// vertices whose three arcs all weigh zero.
bool c3_exists(const WeightedGraph& g) {
  const auto& grp = g.group();
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> cyc;
  std::vector<char> on(n, 0);
  bool found = false;
  auto edge_w = [&](VertexId u, VertexId v) { return g.edge(*g.edge_between(u, v)).weight; };
  auto check = [&] {
    const std::size_t len = cyc.size();
    std::vector<Element> prefix(len + 1, grp.zero());
    for (std::size_t i = 0; i < len; ++i) prefix[i + 1] = grp.add(prefix[i], edge_w(cyc[i], cyc[(i + 1) % len]));
    // Branch positions i < j < k split the cycle into three zero arcs exactly
    // when the total is zero and the three prefix sums agree.
    if (prefix[len] != grp.zero()) return false;
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = i + 1; j < len; ++j)
        for (std::size_t k = j + 1; k < len; ++k)
          if (prefix[i] == prefix[j] && prefix[j] == prefix[k]) return true;
    return false;
  };
  std::function<void()> grow = [&] {
    if (found) return;
    VertexId x = cyc.back();
    for (const Arc& arc : g.neighbors(x)) {
      VertexId y = arc.to;
      if (y == cyc.front() && cyc.size() >= 3 && check()) {
        found = true;
        return;
      }
      if (on[y] || y < cyc.front()) continue;
      on[y] = 1;
      cyc.push_back(y);
      grow();
      cyc.pop_back();
      on[y] = 0;
    }
  };
  for (VertexId s = 0; s < n && !found; ++s) {
    cyc = {s};
    on.assign(n, 0);
    on[s] = 1;
    grow();
  }
  return found;
}

std::size_t vertices_used(const Subdivision& sub) {
  std::vector<VertexId> all(sub.branch.begin(), sub.branch.end());
  for (const auto& p : sub.paths) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

}  // namespace

TEST_CASE("unit K_6 over Z_2 holds an even C_3-subdivision") {
  auto g = unit_clique(6, 2);
  auto h = gen_target("C3");
  auto r = brute_force_subdivision(g, h);
  REQUIRE(r.verdict == OracleVerdict::Found);
  REQUIRE(r.witness);
  CHECK_FALSE(verify_subdivision(g, h, *r.witness));
  for (const auto& p : r.witness->paths) CHECK((p.size() - 1) % 2 == 0);
  CHECK(vertices_used(*r.witness) == 6);
}

TEST_CASE("unit K_5 over Z_2 has none") {
  auto r = brute_force_subdivision(unit_clique(5, 2), gen_target("C3"));
  CHECK(r.verdict == OracleVerdict::None);
  CHECK_FALSE(r.witness);
}

TEST_CASE("zero-weight triangle is its own witness") {
  auto a = make_group({2});
  auto g = complete(a, 3, a->zero());
  auto r = brute_force_subdivision(g, gen_target("C3"));
  REQUIRE(r.verdict == OracleVerdict::Found);
  auto b = r.witness->branch;
  std::sort(b.begin(), b.end());
  CHECK(b == std::vector<VertexId>{0, 1, 2});
  for (const auto& p : r.witness->paths) CHECK(p.size() == 2);
}

TEST_CASE("counting bound: unit cliques just below m(q-1)+n have none") {
  struct Case {
    const char* h;
    std::uint32_t q;
  };
  for (Case c : {Case{"C3", 2}, Case{"C3", 3}, Case{"P3", 2}, Case{"P4", 2}, Case{"P4", 3}, Case{"C4", 2},
                 Case{"K4", 2}}) {
    auto h = gen_target(c.h);
    const std::size_t need = h.num_edges() * (c.q - 1) + h.num_vertices();
    CAPTURE(c.h);
    CAPTURE(c.q);
    auto below = brute_force_subdivision(unit_clique(need - 1, c.q), h);
    CHECK(below.verdict == OracleVerdict::None);
  }
}

TEST_CASE("unit cliques at m(q-1)+n for paths and cycles have a witness") {
  for (auto [name, q] : {std::pair{"C3", 2u}, std::pair{"C3", 3u}, std::pair{"P4", 3u}, std::pair{"C4", 2u}}) {
    auto h = gen_target(name);
    const std::size_t need = h.num_edges() * (q - 1) + h.num_vertices();
    auto g = unit_clique(need, q);
    auto r = brute_force_subdivision(g, h);
    CAPTURE(name);
    REQUIRE(r.verdict == OracleVerdict::Found);
    CHECK_FALSE(verify_subdivision(g, h, *r.witness));
  }
}

TEST_CASE("agrees with an independent cycle search for C_3") {
  auto h = gen_target("C3");
  std::size_t found = 0, none = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    auto a = make_group({static_cast<std::uint32_t>(2 + seed % 3)});
    auto g = random_graph(a, 4 + seed % 4, rng, 45 + seed % 40);
    auto r = brute_force_subdivision(g, h);
    CAPTURE(seed);
    REQUIRE(r.verdict != OracleVerdict::BudgetExceeded);
    CHECK((r.verdict == OracleVerdict::Found) == c3_exists(g));
    if (r.witness) CHECK_FALSE(verify_subdivision(g, h, *r.witness));
    (r.verdict == OracleVerdict::Found ? found : none)++;
  }
  CHECK(found > 20);
  CHECK(none > 20);
}

TEST_CASE("witnesses survive adding a zero-weight edge") {
  for (const char* name : {"C3", "P4", "K4", "C4"}) {
    auto h = gen_target(name);
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Rng rng(seed * 31 + 7);
      auto a = make_group({3});
      auto g = random_graph(a, 7, rng, 60);
      auto r = brute_force_subdivision(g, h);
      if (r.verdict != OracleVerdict::Found) continue;
      std::vector<WeightedEdge> edges = g.edges();
      bool added = false;
      for (VertexId u = 0; u < 7 && !added; ++u)
        for (VertexId v = u + 1; v < 7 && !added; ++v)
          if (!g.edge_between(u, v)) {
            edges.push_back({u, v, a->zero()});
            added = true;
          }
      if (!added) continue;
      WeightedGraph bigger(a, 7, edges);
      CHECK_FALSE(verify_subdivision(bigger, h, *r.witness));
      CHECK(brute_force_subdivision(bigger, h).verdict == OracleVerdict::Found);
      ++checked;
    }
    CAPTURE(name);
    CHECK(checked > 0);
  }
}

TEST_CASE("isolated target vertices and empty targets") {
  auto g = unit_clique(4, 2);
  auto r = brute_force_subdivision(g, TargetGraph(3, {}));
  REQUIRE(r.verdict == OracleVerdict::Found);
  CHECK(vertices_used(*r.witness) == 3);
  CHECK(brute_force_subdivision(g, TargetGraph(5, {})).verdict == OracleVerdict::None);
}

TEST_CASE("budget overruns are reported, never silent") {
  auto h = gen_target("C3");
  auto big = brute_force_subdivision(unit_clique(15, 2), h);
  CHECK(big.verdict == OracleVerdict::BudgetExceeded);
  CHECK(big.reason.find("15") != std::string::npos);

  SearchBudget tight;
  tight.max_paths_per_pair = 1;
  auto r = brute_force_subdivision(unit_clique(5, 2), h, tight);
  CHECK(r.verdict == OracleVerdict::BudgetExceeded);
  CHECK_FALSE(r.witness);

  SearchBudget quick;
  quick.time_cap = std::chrono::milliseconds(1);
  auto slow = brute_force_subdivision(unit_clique(9, 2), gen_target("K4"), quick);
  CHECK(slow.verdict == OracleVerdict::BudgetExceeded);
  CHECK(slow.reason.find("time") != std::string::npos);

  SearchBudget bad;
  bad.max_vertices = 0;
  CHECK_THROWS_AS(brute_force_subdivision(unit_clique(3, 2), h, bad), DomainError);
}

TEST_CASE("cross_check") {
  auto h = gen_target("C3");
  GenSpec spec;
  spec.f = 6;
  spec.min_length = spec.max_length = 1;
  auto k6 = unit_weighting(gen_minor(spec), 2);
  spec.f = 5;
  auto k5 = unit_weighting(gen_minor(spec), 2);

  SUBCASE("tiny instances without a subdivision are consistent") {
    auto r = cross_check(k5, h);
    CHECK(r.status == CrossCheckStatus::Consistent);
    CHECK_FALSE(r.embedder_succeeded);
    CHECK(r.oracle == OracleVerdict::None);
  }
  SUBCASE("oracle-only witnesses below the bound are expected") {
    auto r = cross_check(k6, h);
    CHECK(r.status == CrossCheckStatus::IncompleteBelowBound);
    CHECK(to_string(r.status) == "embedder incomplete below bound (expected)");
  }
  SUBCASE("an honest injected embedder is consistent") {
    EmbedFn honest = [](const WeightedMinor& g, const TargetGraph& t) {
      return Embedding{*brute_force_subdivision(g.graph(), t).witness, {}};
    };
    auto r = cross_check(k6, h, {}, honest);
    CHECK(r.status == CrossCheckStatus::Consistent);
    CHECK(r.oracle == OracleVerdict::Found);
  }
  SUBCASE("corrupted embedder output is a divergence") {
    EmbedFn corrupt = [](const WeightedMinor& g, const TargetGraph& t) {
      auto sub = *brute_force_subdivision(g.graph(), t).witness;
      auto& p = sub.paths[0];
      p.erase(p.begin() + 1);
      return Embedding{sub, {}};
    };
    auto r = cross_check(k6, h, {}, corrupt);
    CHECK(r.status == CrossCheckStatus::Divergence);
  }
  SUBCASE("a claimed witness where none exists is a divergence") {
    auto a = make_group({2});
    EmbedFn liar = [a](const WeightedMinor&, const TargetGraph&) {
      return Embedding{Subdivision{a, {0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}}}, {}};
    };
    auto r = cross_check(k5, h, {}, liar);
    CHECK(r.status == CrossCheckStatus::Divergence);
  }
  SUBCASE("failure at the bound is a divergence") {
    spec.f = 94;
    auto k94 = unit_weighting(gen_minor(spec), 2);
    EmbedFn quitter = [](const WeightedMinor&, const TargetGraph&) -> Embedding {
      throw ResourceError("stage clusters: injected");
    };
    auto r = cross_check(k94, h, {}, quitter);
    CHECK(r.meets_bound);
    CHECK(r.status == CrossCheckStatus::Divergence);
  }
  SUBCASE("soundness failures are a divergence") {
    EmbedFn broken = [](const WeightedMinor&, const TargetGraph&) -> Embedding { throw SoundnessError("injected"); };
    CHECK(cross_check(k5, h, {}, broken).status == CrossCheckStatus::Divergence);
  }
  SUBCASE("at the bound the real embedder is consistent even past the oracle cap") {
    spec.f = 94;
    auto k94 = unit_weighting(gen_minor(spec), 2);
    auto r = cross_check(k94, h);
    CHECK(r.embedder_succeeded);
    CHECK(r.oracle == OracleVerdict::BudgetExceeded);
    CHECK(r.status == CrossCheckStatus::Consistent);
  }
}
