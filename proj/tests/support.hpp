#pragma once

// Independent reference checks shared by the unit tests and the acceptance
// binary. Nothing here calls the library's own auditors.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divsub/generators.hpp"
#include "divsub/minor.hpp"

namespace support {

using namespace divsub;

inline Element sum_edges(const ReducedMinor& g, const Path& p) {
  Element total = g.group().zero();
  for (std::size_t i = 1; i < p.size(); ++i) {
    for (const auto& e : g.edges())
      if ((e.u == p[i - 1] && e.v == p[i]) || (e.v == p[i - 1] && e.u == p[i])) {
        total = g.group().add(total, e.weight);
        break;
      }
  }
  return total;
}

inline bool is_walk(const WeightedGraph& g, const Path& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!g.edge_between(p[i - 1], p[i])) return false;
  return true;
}

inline bool distinct(Path p) {
  std::sort(p.begin(), p.end());
  return std::adjacent_find(p.begin(), p.end()) == p.end();
}

// Every reduced-minor property, recomputed from the edge list alone.
inline std::optional<std::string> reduced_violation(const ReducedMinor& g) {
  std::map<VertexId, std::vector<VertexId>> adj;
  std::map<std::pair<SupernodeLabel, SupernodeLabel>, int> links;
  std::set<std::pair<VertexId, VertexId>> seen_edges;
  for (auto v : g.vertices()) adj[v];
  for (const auto& e : g.edges()) {
    if (!seen_edges.insert(std::minmax(e.u, e.v)).second) return std::string("parallel edge");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
    auto a = g.supernode_of(e.u), b = g.supernode_of(e.v);
    if (a != b) links[std::minmax(a, b)]++;
  }
  for (auto [v, nb] : adj)
    if (nb.size() < 3) return "degree of " + std::to_string(v) + " below 3";
  for (auto s : g.labels()) {
    std::set<VertexId> mem(g.members(s).begin(), g.members(s).end());
    std::size_t intra = 0;
    for (auto v : mem) {
      std::size_t in = 0, out = 0;
      for (auto w : adj[v]) (mem.count(w) ? in : out)++;
      intra += in;
      if (mem.size() > 1 && in == 1 && out == 0) return "leaf without outside neighbour";
    }
    if (intra / 2 + 1 != mem.size()) return "supernode is not a tree";
    std::set<VertexId> reach{*mem.begin()};
    std::deque<VertexId> q{*mem.begin()};
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto w : adj[v])
        if (mem.count(w) && reach.insert(w).second) q.push_back(w);
    }
    if (reach.size() != mem.size()) return std::string("supernode disconnected");
  }
  for (std::size_t i = 0; i < g.labels().size(); ++i)
    for (std::size_t j = i + 1; j < g.labels().size(); ++j)
      if (links[{g.labels()[i], g.labels()[j]}] != 1) return std::string("pair without exactly one edge");
  return std::nullopt;
}

// Shortest path by BFS restricted to `allowed` vertices.
inline Path bfs_path(const ReducedMinor& g, VertexId s, VertexId t, const std::set<VertexId>& allowed) {
  std::map<VertexId, VertexId> from{{s, s}};
  std::deque<VertexId> q{s};
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    if (v == t) break;
    for (const auto& e : g.edges()) {
      VertexId w;
      if (e.u == v) w = e.v;
      else if (e.v == v) w = e.u;
      else continue;
      if (allowed.count(w) && !from.count(w)) {
        from[w] = v;
        q.push_back(w);
      }
    }
  }
  Path p;
  if (!from.count(t)) return p;
  for (auto v = t; v != s; v = from[v]) p.push_back(v);
  p.push_back(s);
  std::reverse(p.begin(), p.end());
  return p;
}

// A random simple path grown by a self-avoiding walk of up to max_len steps.
inline Path random_path(const ReducedMinor& g, Rng& rng, std::size_t max_len) {
  const auto& vs = g.vertices();
  Path p{vs[rng.uniform(0, vs.size() - 1)]};
  std::set<VertexId> used{p.front()};
  auto len = rng.uniform(0, max_len);
  while (p.size() <= len) {
    std::vector<VertexId> options;
    for (const auto& arc : g.neighbors(p.back()))
      if (!used.count(arc.to)) options.push_back(arc.to);
    if (options.empty()) break;
    auto next = options[rng.uniform(0, options.size() - 1)];
    used.insert(next);
    p.push_back(next);
  }
  return p;
}

inline GenSpec spec_for(std::uint64_t seed, std::uint32_t f, const std::string& group) {
  Rng rng(seed * 7919 + 17);
  GenSpec spec;
  spec.shape = static_cast<Shape>(seed % 3);
  spec.f = f;
  spec.group = group;
  spec.seed = seed;
  spec.weights = spec.shape == Shape::AdversarialDivisible ? WeightMode::Unit : WeightMode::Random;
  spec.min_length = 1;
  spec.max_length = static_cast<std::uint32_t>(1 + rng.uniform(0, 4));
  spec.min_tree = 1;
  spec.max_tree = static_cast<std::uint32_t>(1 + rng.uniform(0, 5));
  spec.extra_links = static_cast<std::uint32_t>(rng.uniform(0, 2));
  spec.chords = static_cast<std::uint32_t>(rng.uniform(0, 3));
  return spec;
}

}  // namespace support
