#include "divsub/generators.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "divsub/error.hpp"

namespace divsub {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw DomainError("empty sampling range");
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return next();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
  std::uint64_t x;
  do x = next();
  while (x > limit);
  return lo + x % range;
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::SubdividedClique: return "subdivided-clique";
    case Shape::BlownupClique: return "blownup-clique";
    case Shape::AdversarialDivisible: return "adversarial-divisible";
  }
  return "?";
}

std::string_view to_string(WeightMode w) {
  switch (w) {
    case WeightMode::Unit: return "unit";
    case WeightMode::Random: return "random";
    case WeightMode::Zero: return "zero";
  }
  return "?";
}

std::optional<Shape> parse_shape(std::string_view s) {
  for (auto v : {Shape::SubdividedClique, Shape::BlownupClique, Shape::AdversarialDivisible})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<WeightMode> parse_weight_mode(std::string_view s) {
  for (auto v : {WeightMode::Unit, WeightMode::Random, WeightMode::Zero})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

void validate_spec(const GenSpec& spec) {
  if (spec.f < 4) throw StructuralError("f must be at least 4");
  if (spec.min_length < 1 || spec.max_length < spec.min_length) throw StructuralError("bad length range");
  if (spec.min_tree < 1 || spec.max_tree < spec.min_tree) throw StructuralError("bad tree size range");
  if (spec.shape == Shape::AdversarialDivisible) {
    auto g = parse_group(spec.group);
    if (g->rank() != 1 || g->order() < 2) throw StructuralError("adversarial instances need a cyclic group Z_q, q >= 2");
  }
}

namespace {

Element draw_weight(const FiniteAbelianGroup& g, WeightMode mode, Rng& rng) {
  switch (mode) {
    case WeightMode::Unit: return g.unit();
    case WeightMode::Zero: return g.zero();
    case WeightMode::Random: return Element{static_cast<std::uint32_t>(rng.uniform(0, g.order() - 1))};
  }
  return g.zero();
}

WeightedMinor subdivided(const GenSpec& spec, const GroupPtr& group, std::uint32_t multiplier, WeightMode mode, Rng& rng) {
  const auto f = spec.f;
  std::vector<std::vector<VertexId>> parts(f);
  std::vector<WeightedEdge> edges;
  VertexId next = f;
  for (VertexId v = 0; v < f; ++v) parts[v].push_back(v);
  for (VertexId a = 0; a < f; ++a)
    for (VertexId b = a + 1; b < f; ++b) {
      auto len = static_cast<std::uint32_t>(rng.uniform(spec.min_length, spec.max_length)) * multiplier;
      auto split = static_cast<std::uint32_t>(rng.uniform(0, len - 1));
      VertexId prev = a;
      for (std::uint32_t i = 1; i < len; ++i) {
        VertexId cur = next++;
        parts[i <= split ? a : b].push_back(cur);
        edges.push_back({prev, cur, draw_weight(*group, mode, rng)});
        prev = cur;
      }
      edges.push_back({prev, b, draw_weight(*group, mode, rng)});
    }
  return WeightedMinor(WeightedGraph(group, next, std::move(edges)), std::move(parts));
}

WeightedMinor blownup(const GenSpec& spec, const GroupPtr& group, Rng& rng) {
  const auto f = spec.f;
  std::vector<std::vector<VertexId>> parts(f);
  std::vector<WeightedEdge> edges;
  std::set<std::pair<VertexId, VertexId>> present;
  auto add = [&](VertexId u, VertexId v) {
    if (u == v || !present.insert(std::minmax(u, v)).second) return;
    edges.push_back({u, v, draw_weight(*group, spec.weights, rng)});
  };
  VertexId next = 0;
  for (auto& part : parts) {
    auto size = static_cast<std::uint32_t>(rng.uniform(spec.min_tree, spec.max_tree));
    for (std::uint32_t i = 0; i < size; ++i) {
      VertexId v = next++;
      if (i > 0) add(part[rng.uniform(0, i - 1)], v);
      part.push_back(v);
    }
    if (size > 2) {
      auto chords = rng.uniform(0, spec.chords);
      for (std::uint64_t c = 0; c < chords; ++c) add(part[rng.uniform(0, size - 1)], part[rng.uniform(0, size - 1)]);
    }
  }
  for (std::uint32_t a = 0; a < f; ++a)
    for (std::uint32_t b = a + 1; b < f; ++b) {
      auto count = 1 + rng.uniform(0, spec.extra_links);
      for (std::uint64_t c = 0; c < count; ++c)
        add(parts[a][rng.uniform(0, parts[a].size() - 1)], parts[b][rng.uniform(0, parts[b].size() - 1)]);
    }
  return WeightedMinor(WeightedGraph(group, next, std::move(edges)), std::move(parts));
}

std::uint32_t parse_count(std::string_view text, std::string_view whole) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || value > 100000)
    throw ParseError("bad number in target name '" + std::string(whole) + "'");
  return static_cast<std::uint32_t>(value);
}

std::string_view strip_prefix(std::string_view name) {
  name.remove_prefix(1);
  if (!name.empty() && name.front() == '_') name.remove_prefix(1);
  return name;
}

}  // namespace

WeightedMinor gen_minor(const GenSpec& spec) {
  validate_spec(spec);
  auto group = parse_group(spec.group);
  Rng rng(spec.seed);
  switch (spec.shape) {
    case Shape::SubdividedClique: return subdivided(spec, group, 1, spec.weights, rng);
    case Shape::BlownupClique: return blownup(spec, group, rng);
    case Shape::AdversarialDivisible: return subdivided(spec, group, group->order(), WeightMode::Unit, rng);
  }
  throw StructuralError("unknown shape");
}

TargetGraph gen_target(std::string_view name) {
  using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  if (name == "petersen") {
    Edges e;
    for (std::uint32_t i = 0; i < 5; ++i) {
      e.emplace_back(i, (i + 1) % 5);
      e.emplace_back(i, i + 5);
      e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return TargetGraph(10, e);
  }
  const std::string_view random_prefix = "random-subcubic(";
  if (name.substr(0, random_prefix.size()) == random_prefix) {
    if (name.back() != ')') throw ParseError("unterminated target name '" + std::string(name) + "'");
    auto inner = name.substr(random_prefix.size(), name.size() - random_prefix.size() - 1);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("random-subcubic needs (n, seed)");
    auto n = parse_count(inner.substr(0, comma), name);
    auto seed_text = inner.substr(comma + 1);
    while (!seed_text.empty() && seed_text.front() == ' ') seed_text.remove_prefix(1);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size())
      throw ParseError("bad seed in target name '" + std::string(name) + "'");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
      Edges e;
      std::vector<std::uint32_t> deg(n, 0);
      bool ok = true;
      for (std::uint32_t a = 0; a < n && ok; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
          if (rng.chance(3, 2 * (n - 1))) {
            e.emplace_back(a, b);
            if (++deg[a] > 3 || ++deg[b] > 3) {
              ok = false;
              break;
            }
          }
      if (ok) return TargetGraph(n, e);
    }
    throw ResourceError("no subcubic sample found for '" + std::string(name) + "'");
  }
  if (name.size() >= 2 && (name.front() == 'C' || name.front() == 'P' || name.front() == 'K')) {
    auto k = parse_count(strip_prefix(name), name);
    Edges e;
    if (name.front() == 'C') {
      if (k < 3) throw ParseError("C_k needs k >= 3");
      for (std::uint32_t i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    } else if (name.front() == 'P') {
      if (k < 1) throw ParseError("P_k needs k >= 1");
      for (std::uint32_t i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
    } else {
      if (k < 1 || k > 4) throw ParseError("K_k is subcubic only for k <= 4");
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j) e.emplace_back(i, j);
    }
    return TargetGraph(k, e);
  }
  throw ParseError("unknown target graph '" + std::string(name) + "'");
}

WeightedMinor reweight(const WeightedMinor& g, const GroupPtr& group, Element w) {
  std::vector<WeightedEdge> edges;
  for (const auto& e : g.graph().edges()) edges.push_back({e.u, e.v, w});
  return WeightedMinor(WeightedGraph(group, g.graph().num_vertices(), std::move(edges)), g.supernodes());
}

WeightedMinor unit_weighting(const WeightedMinor& g, std::uint32_t q) {
  if (q < 2) throw DomainError("unit weighting needs q >= 2");
  auto group = make_group({q});
  return reweight(g, group, group->unit());
}

}  // namespace divsub
