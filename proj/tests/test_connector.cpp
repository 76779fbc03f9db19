#include <set>

#include "divsub/connector.hpp"
#include "divsub/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace divsub;

namespace {

MinorPtr instance(Shape shape, std::uint32_t f, const std::string& group, std::uint64_t seed, WeightMode w) {
  GenSpec spec;
  spec.shape = shape;
  spec.f = f;
  spec.group = group;
  spec.seed = seed;
  spec.weights = w;
  spec.min_length = 1;
  spec.max_length = 3;
  spec.min_tree = 1;
  spec.max_tree = 3;
  spec.extra_links = 1;
  spec.chords = 1;
  return reduce(gen_minor(spec)).first;
}

// Structural audit of a connector written against the definition only.
void audit(const Connector& c, const ReducedMinor& g, const Subgroup& b) {
  const auto& a = g.group();
  REQUIRE(c.paths.size() == c.cycles.size() + 1);
  std::map<VertexId, int> seen;
  for (const auto& p : c.paths) {
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(g.edge_between(p[i - 1], p[i]));
    for (auto v : p) seen[v]++;
  }
  for (std::size_t i = 0; i < c.cycles.size(); ++i) {
    const auto& cy = c.cycles[i];
    for (std::size_t k = 0; k < cy.size(); ++k) CHECK(g.edge_between(cy[k], cy[(k + 1) % cy.size()]));
    for (auto v : cy) seen[v]++;
    CHECK(c.paths[i].back() == c.attach_in[i]);
    CHECK(c.paths[i + 1].front() == c.attach_out[i]);
    CHECK(support::sum_edges(g, c.base_arcs[i]) == c.y[i]);
    CHECK(support::sum_edges(g, c.switch_arcs[i]) == c.x[i]);
    CHECK(c.base_arcs[i].size() + c.switch_arcs[i].size() == cy.size() + 2);
  }
  std::size_t attachments = 2 * c.cycles.size();
  std::size_t doubles = 0;
  for (auto [v, n] : seen) {
    CHECK(n <= 2);
    doubles += n == 2;
  }
  CHECK(doubles == attachments);

  std::set<SupernodeLabel> touched;
  for (auto [v, n] : seen) touched.insert(g.supernode_of(v));
  CHECK(touched.size() <= 7 * b.size());
  for (auto s : touched) CHECK(std::binary_search(c.home.begin(), c.home.end(), s));
  for (auto end : {c.first(), c.last()})
    for (auto [v, n] : seen)
      if (v != end) CHECK(g.supernode_of(v) != g.supernode_of(end));

  auto base = c.base_path();
  CHECK(support::distinct(base));
  std::map<SupernodeLabel, int> runs;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (i == 0 || g.supernode_of(base[i]) != g.supernode_of(base[i - 1])) runs[g.supernode_of(base[i])]++;
  for (auto [s, r] : runs) CHECK(r == 1);

  std::set<std::uint32_t> reach{a.zero().code()};
  for (std::size_t i = 0; i < c.cycles.size(); ++i) {
    auto d = a.sub(c.x[i], c.y[i]);
    auto next = reach;
    for (auto r : reach) next.insert(a.add(Element{r}, d).code());
    reach = next;
  }
  std::set<std::uint32_t> realizable;
  for (auto s : c.realizable) realizable.insert(s.code());
  for (auto s : b.elements()) {
    CHECK(realizable.count(s.code()));
    CHECK(reach.count(s.code()));
  }
  auto wbase = support::sum_edges(g, base);
  for (auto s : c.realizable) {
    auto p = realize(c, a, s);
    CHECK(p.front() == c.first());
    CHECK(p.back() == c.last());
    CHECK(support::distinct(p));
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(g.edge_between(p[i - 1], p[i]));
    CHECK(support::sum_edges(g, p) == a.add(wbase, s));
  }
}

void audit_descent(const DescentOutcome& d, const ReducedMinor& g, const Subgroup& b) {
  CHECK_FALSE(d.trivial);
  CHECK(d.Bp.size() < b.size());
  CHECK(d.Bp.is_subset_of(b));
  REQUIRE(d.Gp);
  CHECK(d.Gp->num_supernodes() + 7 * b.size() >= g.num_supernodes());
  CHECK(verify_restricted(*d.Gp, d.Bp));
  for (const auto& e : d.Gp->edges()) CHECK(d.Bp.contains(g.group().twice(e.weight)));
  SmallCycleStream triangles(*d.Gp, 3);
  while (auto c = triangles.next()) CHECK(d.Bp.contains(support::sum_edges(*d.Gp, closed_walk(*c))));
  if (d.Gp->num_supernodes() <= 16) CHECK(verify_restricted_enumerative(*d.Gp, d.Bp, 1u << 20));
  CHECK_FALSE(support::reduced_violation(*d.Gp));
}

}  // namespace

TEST_CASE("trivial subgroup gives the empty connector") {
  auto g = instance(Shape::BlownupClique, 10, "Z3", 1, WeightMode::Random);
  auto r = build_connector(g, Subgroup::trivial(g->group_ptr()));
  REQUIRE(std::holds_alternative<Connector>(r));
  const auto& c = std::get<Connector>(r);
  CHECK(c.empty());
  CHECK(c.realizable == std::vector<Element>{Element{0}});
  CHECK_FALSE(check_connector(c, *g));
  CHECK(realize(c, g->group(), Element{0}).empty());
  CHECK_THROWS_AS(realize(c, g->group(), Element{1}), DomainError);
}

TEST_CASE("few supernodes give the trivial descent") {
  auto g = instance(Shape::SubdividedClique, 14, "Z2", 3, WeightMode::Unit);
  auto r = build_connector(g, Subgroup::whole(g->group_ptr()));
  REQUIRE(std::holds_alternative<DescentOutcome>(r));
  const auto& d = std::get<DescentOutcome>(r);
  CHECK(d.trivial);
  CHECK(d.Bp.is_trivial());
}

TEST_CASE("unrestricted input is rejected") {
  auto g = instance(Shape::SubdividedClique, 20, "Z4", 3, WeightMode::Unit);
  auto b = generate_subgroup(g->group_ptr(), std::vector<Element>{Element{2}});
  REQUIRE_FALSE(verify_restricted(*g, b));
  CHECK_THROWS_AS(build_connector(g, b), DomainError);
}

TEST_CASE("unit-weighted subdivided K_50 over Z_2") {
  auto g = instance(Shape::SubdividedClique, 50, "Z2", 7, WeightMode::Unit);
  auto b = Subgroup::whole(g->group_ptr());
  auto r = build_connector(g, b);
  REQUIRE(std::holds_alternative<Connector>(r));
  const auto& c = std::get<Connector>(r);
  CHECK(c.home.size() <= 14);
  CHECK(c.length() == 1);
  CHECK(c.realizable == std::vector<Element>{Element{0}, Element{1}});
  CHECK(g->group().sub(c.x[0], c.y[0]) == Element{1});
  CHECK_FALSE(check_connector(c, *g));
  CHECK(is_permissible_path(*g, c.base_path()));
  audit(c, *g, b);
}

TEST_CASE("realize switches the chosen cycles") {
  auto g = instance(Shape::BlownupClique, 40, "Z5", 2, WeightMode::Random);
  auto b = Subgroup::whole(g->group_ptr());
  auto r = build_connector(g, b);
  REQUIRE(std::holds_alternative<Connector>(r));
  const auto& c = std::get<Connector>(r);
  const auto& a = g->group();
  CHECK(realize(c, a, Element{0}) == c.base_path());
  auto d = a.sub(c.x[0], c.y[0]);
  auto p = realize(c, a, d);
  Path expected = c.paths[0];
  expected.insert(expected.end(), c.switch_arcs[0].begin() + 1, c.switch_arcs[0].end());
  for (std::size_t i = 1; i < c.paths.size(); ++i) {
    expected.insert(expected.end(), c.paths[i].begin() + 1, c.paths[i].end());
    if (i < c.cycles.size()) expected.insert(expected.end(), c.base_arcs[i].begin() + 1, c.base_arcs[i].end());
  }
  CHECK(p == expected);
  audit(c, *g, b);
}

TEST_CASE("check_connector flags tampering") {
  auto g = instance(Shape::BlownupClique, 40, "Z3", 4, WeightMode::Random);
  auto b = Subgroup::whole(g->group_ptr());
  auto r = build_connector(g, b);
  REQUIRE(std::holds_alternative<Connector>(r));
  const auto c = std::get<Connector>(r);
  REQUIRE(c.length() >= 1);
  REQUIRE_FALSE(check_connector(c, *g));

  auto overlap = c;
  overlap.cycles.push_back(c.cycles[0]);
  overlap.attach_in.push_back(c.attach_in[0]);
  overlap.attach_out.push_back(c.attach_out[0]);
  overlap.base_arcs.push_back(c.base_arcs[0]);
  overlap.switch_arcs.push_back(c.switch_arcs[0]);
  overlap.x.push_back(c.x[0]);
  overlap.y.push_back(c.y[0]);
  overlap.paths.insert(overlap.paths.end() - 1, Path{c.attach_out[0], c.attach_in[0]});
  auto v = check_connector(overlap, *g);
  REQUIRE(v);
  CHECK(v->kind != ConnectorViolation::Kind::Realizability);

  auto shared = c;
  shared.paths.back().push_back(c.cycles[0][0]);
  v = check_connector(shared, *g);
  REQUIRE(v);

  auto heavy = c;
  heavy.x[0] = g->group().add(heavy.x[0], Element{1});
  v = check_connector(heavy, *g);
  REQUIRE(v);
  CHECK(v->kind == ConnectorViolation::Kind::Weight);

  auto overclaim = c;
  overclaim.cycles.resize(1);
  overclaim.attach_in.resize(1);
  overclaim.attach_out.resize(1);
  overclaim.base_arcs.resize(1);
  overclaim.switch_arcs.resize(1);
  overclaim.x.resize(1);
  overclaim.y.resize(1);
  overclaim.paths.resize(2);
  overclaim.realizable = {Element{0}, Element{1}, Element{2}};
  v = check_connector(overclaim, *g);
  REQUIRE(v);
  CHECK(v->kind == ConnectorViolation::Kind::Realizability);
}

TEST_CASE("adversarial divisible instances over Z_2 descend to the trivial subgroup") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = instance(Shape::AdversarialDivisible, 30, "Z2", seed, WeightMode::Unit);
    auto b = Subgroup::whole(g->group_ptr());
    auto r = build_connector(g, b);
    REQUIRE(std::holds_alternative<DescentOutcome>(r));
    const auto& d = std::get<DescentOutcome>(r);
    CHECK(d.Bp.is_trivial());
    CHECK(d.Gp == g);
    audit_descent(d, *g, b);
  }
}

TEST_CASE("connector or descent on restricted instances") {
  const std::vector<std::string> groups{"Z2", "Z3", "Z4", "Z2xZ2"};
  int connectors = 0, descents = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto& name = groups[seed % groups.size()];
    auto q = parse_group(name)->order();
    auto shape = static_cast<Shape>(seed % 3);
    if (shape == Shape::AdversarialDivisible && name == "Z2xZ2") shape = Shape::BlownupClique;
    auto w = shape == Shape::AdversarialDivisible ? WeightMode::Unit : (seed % 2 ? WeightMode::Random : WeightMode::Unit);
    auto g = instance(shape, static_cast<std::uint32_t>(7 * q + 3 + seed % 5), name, seed, w);
    auto subs = enumerate_subgroups(g->group_ptr());
    for (const auto& b : subs) {
      if (!verify_restricted(*g, b)) continue;
      auto r = build_connector(g, b);
      if (auto* c = std::get_if<Connector>(&r)) {
        CHECK_FALSE(check_connector(*c, *g));
        if (!c->empty()) audit(*c, *g, b);
        ++connectors;
      } else {
        const auto& d = std::get<DescentOutcome>(r);
        if (!d.trivial) audit_descent(d, *g, b);
        ++descents;
      }
    }
  }
  CHECK(connectors > 10);
  CHECK(descents > 5);
}

TEST_CASE("exhaustive descent agrees with the restriction subgroup") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto shape = seed % 2 ? Shape::AdversarialDivisible : Shape::SubdividedClique;
    auto g = instance(shape, 15, "Z2", seed, WeightMode::Unit);
    auto b = Subgroup::whole(g->group_ptr());
    auto fast = build_connector(g, b);
    ConnectorOptions slow_opts;
    slow_opts.exhaustive_descent = true;
    auto slow = build_connector(g, b, slow_opts);
    REQUIRE(fast.index() == slow.index());
    if (auto* c = std::get_if<Connector>(&fast)) {
      CHECK(c->paths == std::get<Connector>(slow).paths);
      CHECK(c->cycles == std::get<Connector>(slow).cycles);
    } else {
      CHECK(std::get<DescentOutcome>(fast).Bp == std::get<DescentOutcome>(slow).Bp);
    }
  }
}
