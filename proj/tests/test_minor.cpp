#include "divsub/error.hpp"
#include "divsub/minor.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace divsub;

namespace {

WeightedMinor clique(const GroupPtr& g, std::uint32_t f, Element w) {
  std::vector<WeightedEdge> edges;
  std::vector<std::vector<VertexId>> parts;
  for (VertexId a = 0; a < f; ++a) {
    parts.push_back({a});
    for (VertexId b = a + 1; b < f; ++b) edges.push_back({a, b, w});
  }
  return WeightedMinor(WeightedGraph(g, f, edges), parts);
}

}  // namespace

TEST_CASE("validate_minor examples") {
  auto z2 = make_group({2});
  CHECK_FALSE(validate_minor(clique(z2, 4, Element{1})));

  std::vector<WeightedEdge> edges{{0, 1, Element{0}}, {0, 2, Element{0}}, {1, 2, Element{0}},
                                  {2, 3, Element{0}}, {3, 4, Element{0}}, {0, 4, Element{0}}, {1, 3, Element{0}}};
  WeightedMinor split(WeightedGraph(z2, 5, edges), {{0, 3}, {1}, {2, 4}});
  auto bad = validate_minor(split);
  REQUIRE(bad);
  CHECK(bad->kind == MinorViolation::Kind::DisconnectedSupernode);
  CHECK(bad->first == 0);

  std::vector<WeightedEdge> path_edges{{0, 1, Element{0}}, {1, 2, Element{0}}};
  WeightedMinor path(WeightedGraph(z2, 3, path_edges), {{0}, {1}, {2}});
  bad = validate_minor(path);
  REQUIRE(bad);
  CHECK(bad->kind == MinorViolation::Kind::MissingPair);
  CHECK(bad->first == 0);
  CHECK(bad->second == 2);
}

TEST_CASE("suppressing a degree-2 vertex sums the two weights") {
  auto z5 = make_group({5});
  std::vector<WeightedEdge> edges{{0, 4, Element{2}}, {4, 1, Element{4}}, {0, 2, Element{0}},
                                  {0, 3, Element{0}}, {1, 2, Element{0}}, {1, 3, Element{0}}, {2, 3, Element{0}}};
  WeightedMinor g(WeightedGraph(z5, 5, edges), {{0, 4}, {1}, {2}, {3}});
  auto [r, lift] = reduce(g);
  CHECK(r->num_vertices() == 4);
  auto e = r->edge_between(0, 1);
  REQUIRE(e);
  CHECK(r->edge(*e).weight == Element{1});
  CHECK(lift_path(lift, Path{0, 1}) == Path{0, 4, 1});
  CHECK(lift_path(lift, Path{1, 0}) == Path{1, 4, 0});
  CHECK(g.graph().path_weight(lift_path(lift, Path{0, 1})) == Element{1});
}

TEST_CASE("reduce fixes an already reduced minor") {
  auto z3 = make_group({3});
  auto k5 = clique(z3, 5, Element{1});
  auto [r, lift] = reduce(k5);
  CHECK(r->num_vertices() == 5);
  CHECK(r->num_edges() == 10);
  for (const auto& e : r->edges()) CHECK(e.interior.empty());
  CHECK(lift_path(lift, Path{0, 3, 2}) == Path{0, 3, 2});
}

TEST_CASE("reduce rejects small and invalid minors") {
  auto z2 = make_group({2});
  CHECK_THROWS_AS(reduce(clique(z2, 3, Element{1})), UnsupportedError);
  std::vector<WeightedEdge> edges{{0, 1, Element{0}}, {0, 2, Element{0}}, {0, 3, Element{0}}, {1, 2, Element{0}}, {1, 3, Element{0}}};
  WeightedMinor missing(WeightedGraph(z2, 4, edges), {{0}, {1}, {2}, {3}});
  CHECK_THROWS_AS(reduce(missing), StructuralError);
}

TEST_CASE("reduced subdivided K_5 satisfies every property and lifts by weight") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec spec;
    spec.f = 5;
    spec.min_length = 2;
    spec.max_length = 2;
    spec.group = "Z_4";
    spec.weights = WeightMode::Random;
    spec.seed = seed;
    auto g = gen_minor(spec);
    auto [r, lift] = reduce(g);
    CHECK_FALSE(support::reduced_violation(*r));
    CHECK_FALSE(audit_reduced(*r));
    Rng rng(seed);
    for (int i = 0; i < 100; ++i) {
      auto p = support::random_path(*r, rng, 8);
      auto up = lift_path(lift, p);
      CHECK(support::is_walk(g.graph(), up));
      CHECK(support::distinct(up));
      CHECK(up.front() == p.front());
      CHECK(up.back() == p.back());
      CHECK(g.graph().path_weight(up) == support::sum_edges(*r, p));
    }
  }
}

TEST_CASE("reduction output across shapes") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto spec = support::spec_for(seed, 4 + seed % 9, seed % 2 ? "Z_6" : "Z_2 x Z_2");
    if (spec.shape == Shape::AdversarialDivisible) spec.group = "Z_3";
    auto g = gen_minor(spec);
    CHECK_FALSE(validate_minor(g));
    auto [r, lift] = reduce(g);
    INFO("seed " << seed);
    CHECK_FALSE(support::reduced_violation(*r));
    CHECK(r->num_supernodes() == spec.f);
  }
}

TEST_CASE("reduce is idempotent") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto spec = support::spec_for(seed, 6, "Z_5");
    if (spec.shape == Shape::AdversarialDivisible) spec.group = "Z_2";
    auto [r, lift] = reduce(gen_minor(spec));
    auto again = reduce(r->to_weighted_minor()).first;
    REQUIRE(again->num_vertices() == r->num_vertices());
    REQUIRE(again->num_edges() == r->num_edges());
    const auto& ids = r->vertices();
    for (const auto& e : again->edges()) {
      auto orig = r->edge_between(ids[e.u], ids[e.v]);
      REQUIRE(orig);
      CHECK(r->edge(*orig).weight == e.weight);
    }
  }
}

TEST_CASE("delete_and_reduce") {
  auto z2 = make_group({2});
  auto [k6, l0] = reduce(clique(z2, 6, Element{1}));
  auto [same, id] = delete_and_reduce(k6, {});
  CHECK(same == k6);
  CHECK(lift_path(id, Path{0, 1, 2}) == Path{0, 1, 2});

  std::vector<SupernodeLabel> one{2};
  auto [k5, l1] = delete_and_reduce(k6, one);
  CHECK(k5->num_supernodes() == 5);
  CHECK_FALSE(k5->has_supernode(2));
  CHECK(k5->labels() == std::vector<SupernodeLabel>{0, 1, 3, 4, 5});
  CHECK_FALSE(support::reduced_violation(*k5));

  std::vector<SupernodeLabel> three{0, 1, 2};
  CHECK_THROWS_AS(delete_and_reduce(k6, three), UnsupportedError);
}

TEST_CASE("deleting supernodes suppresses the exposed degree-2 vertices") {
  // Supernode 0 is a path 0-6-7; vertex 6 only reaches supernode 5 from outside.
  auto z7 = make_group({7});
  std::vector<WeightedEdge> edges;
  std::vector<std::vector<VertexId>> parts{{0, 6, 7}, {1}, {2}, {3}, {4}, {5}};
  edges.push_back({0, 6, Element{1}});
  edges.push_back({6, 7, Element{2}});
  edges.push_back({6, 5, Element{3}});
  for (VertexId b = 1; b <= 4; ++b) edges.push_back({b % 2 ? 0u : 7u, b, Element{0}});
  for (VertexId a = 1; a <= 5; ++a)
    for (VertexId b = a + 1; b <= 5; ++b) edges.push_back({a, b, Element{0}});
  auto [r, l0] = reduce(WeightedMinor(WeightedGraph(z7, 8, edges), parts));
  CHECK(r->num_vertices() == 8);
  std::vector<SupernodeLabel> doomed{5};
  auto [d, l1] = delete_and_reduce(r, doomed);
  CHECK_FALSE(d->contains(6));
  auto e = d->edge_between(0, 7);
  REQUIRE(e);
  CHECK(d->edge(*e).weight == Element{3});
  CHECK(lift_path(l1, Path{0, 7}) == Path{0, 6, 7});
  CHECK_FALSE(support::reduced_violation(*d));
}

TEST_CASE("lift maps compose") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto spec = support::spec_for(seed, 10, "Z_4");
    auto g = gen_minor(spec);
    auto [g1, l1] = reduce(g);
    Rng rng(seed + 100);
    std::vector<SupernodeLabel> first{static_cast<SupernodeLabel>(rng.uniform(0, 9))};
    auto [g2, l2] = delete_and_reduce(g1, first);
    std::vector<SupernodeLabel> second;
    for (auto s : g2->labels())
      if (rng.chance(1, 3) && second.size() < 3) second.push_back(s);
    auto [g3, l3] = delete_and_reduce(g2, second);
    CHECK_FALSE(support::reduced_violation(*g3));
    auto direct = compose(l1, compose(l2, l3));
    for (int i = 0; i < 50; ++i) {
      auto p = support::random_path(*g3, rng, 10);
      auto stepwise = lift_path(l1, lift_path(l2, lift_path(l3, p)));
      CHECK(lift_path(direct, p) == stepwise);
      CHECK(g.graph().path_weight(stepwise) == support::sum_edges(*g3, p));
    }
  }
}

TEST_CASE("lift_path rejects non-paths") {
  auto z2 = make_group({2});
  auto [k4, lift] = reduce(clique(z2, 4, Element{1}));
  CHECK_THROWS_AS(lift_path(lift, Path{0, 1, 0}), StructuralError);
  std::vector<WeightedEdge> edges{{0, 4, Element{1}}, {4, 1, Element{1}}, {0, 2, Element{1}},
                                  {0, 3, Element{1}}, {1, 2, Element{1}}, {1, 3, Element{1}}, {2, 3, Element{1}}};
  auto [r, l] = reduce(WeightedMinor(WeightedGraph(z2, 5, edges), {{0, 4}, {1}, {2}, {3}}));
  CHECK_THROWS_AS(lift_path(l, Path{0, 4}), StructuralError);
}

TEST_CASE("tree_path") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec;
    spec.shape = Shape::BlownupClique;
    spec.f = 6;
    spec.max_tree = 7;
    spec.chords = 2;
    spec.extra_links = 2;
    spec.group = "Z_3";
    spec.weights = WeightMode::Random;
    spec.seed = seed;
    auto [r, lift] = reduce(gen_minor(spec));
    Rng rng(seed);
    for (int i = 0; i < 30; ++i) {
      auto a = r->labels()[rng.uniform(0, 5)];
      auto b = r->labels()[rng.uniform(0, 5)];
      const auto& ma = r->members(a);
      const auto& mb = r->members(b);
      auto u = ma[rng.uniform(0, ma.size() - 1)];
      auto v = mb[rng.uniform(0, mb.size() - 1)];
      std::set<VertexId> allowed(ma.begin(), ma.end());
      allowed.insert(mb.begin(), mb.end());
      auto p = tree_path(*r, u, v, {a, b});
      CHECK(p == support::bfs_path(*r, u, v, allowed));
      if (a == b) CHECK(r->supernode_path_weight(u, v) == support::sum_edges(*r, p));
    }
    auto u = r->members(r->labels()[0]).front();
    CHECK(tree_path(*r, u, u, {r->labels()[0], r->labels()[1]}) == Path{u});
    auto a = r->labels()[0], b = r->labels()[1];
    CHECK(tree_path(*r, r->port(a, b), r->port(b, a), {a, b}) == Path{r->port(a, b), r->port(b, a)});
    CHECK_THROWS_AS(tree_path(*r, u, r->members(r->labels()[2]).front(), {a, b}), DomainError);
  }
}

TEST_CASE("central_vertex") {
  // Supernode 0 is the path 0-4-5; each of its vertices has outside neighbours.
  auto z2 = make_group({2});
  std::vector<WeightedEdge> edges{{0, 4, Element{0}}, {4, 5, Element{0}}, {0, 1, Element{0}}, {0, 6, Element{0}},
                                  {4, 2, Element{0}}, {5, 3, Element{0}}, {5, 7, Element{0}}};
  std::vector<VertexId> outer{1, 2, 3, 6, 7};
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (std::size_t j = i + 1; j < outer.size(); ++j) edges.push_back({outer[i], outer[j], Element{0}});
  auto [r, lift] = reduce(WeightedMinor(WeightedGraph(z2, 8, edges), {{0, 4, 5}, {1}, {2}, {3}, {6}, {7}}));
  REQUIRE(r->members(0).size() == 3);
  CHECK(central_vertex(*r, 0, 0, 5, 4) == 4);
  CHECK(central_vertex(*r, 0, 4, 4, 4) == 4);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec;
    spec.shape = Shape::BlownupClique;
    spec.f = 7;
    spec.min_tree = 4;
    spec.max_tree = 12;
    spec.seed = seed;
    auto [g, l] = reduce(gen_minor(spec));
    Rng rng(seed);
    for (auto s : g->labels()) {
      const auto& m = g->members(s);
      for (int t = 0; t < 10; ++t) {
        VertexId v[3];
        for (auto& x : v) x = m[rng.uniform(0, m.size() - 1)];
        auto c = central_vertex(*g, s, v[0], v[1], v[2]);
        std::set<VertexId> allowed(m.begin(), m.end());
        std::vector<std::set<VertexId>> paths;
        for (auto x : v) {
          auto p = support::bfs_path(*g, c, x, allowed);
          paths.emplace_back(p.begin(), p.end());
        }
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            std::vector<VertexId> common;
            std::set_intersection(paths[i].begin(), paths[i].end(), paths[j].begin(), paths[j].end(),
                                  std::back_inserter(common));
            CHECK(common == std::vector<VertexId>{c});
          }
      }
    }
  }
  CHECK_THROWS_AS(central_vertex(*r, 0, 0, 1, 4), DomainError);
}
