#include "divsub/connector.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "divsub/error.hpp"

namespace divsub {

std::vector<Element> Connector::deltas(const FiniteAbelianGroup& a) const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(a.sub(x[i], y[i]));
  return out;
}

namespace {

void append(Path& out, const Path& p) {
  auto from = out.empty() || p.empty() || out.back() != p.front() ? p.begin() : p.begin() + 1;
  out.insert(out.end(), from, p.end());
}

Path chain(const Connector& f, const std::vector<char>& switched) {
  Path out;
  if (f.empty()) return out;
  append(out, f.paths[0]);
  for (std::size_t i = 0; i < f.length(); ++i) {
    append(out, switched[i] ? f.switch_arcs[i] : f.base_arcs[i]);
    append(out, f.paths[i + 1]);
  }
  return out;
}

std::vector<Element> add_switch(const FiniteAbelianGroup& a, const std::vector<Element>& s, Element d) {
  std::vector<std::vector<Element>> parts{s, {a.zero(), d}};
  return sumset(a, parts);
}

// The arc of `cycle` with the same endpoints as `arc` and no other vertex
// in common.
Path other_arc(const Path& cycle, const Path& arc) {
  const auto n = cycle.size();
  auto at = [&](VertexId v) { return static_cast<std::size_t>(std::find(cycle.begin(), cycle.end(), v) - cycle.begin()); };
  auto from = at(arc.front()), to = at(arc.back());
  bool forward = arc.size() > 1 && cycle[(from + 1) % n] == arc[1];
  Path out;
  for (auto i = from;; i = forward ? (i + n - 1) % n : (i + 1) % n) {
    out.push_back(cycle[i]);
    if (i == to) break;
  }
  return out;
}

Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

struct Extension {
  std::size_t j = 0;
  TriadSplit triad;
};

class Builder {
 public:
  Builder(const MinorPtr& g, const Subgroup& b, const ConnectorOptions& options)
      : g_(g), b_(b), a_(g->group()), options_(options) {}

  ConnectorResult run() {
    f_.realizable = {a_.zero()};
    const auto limit = 7 * b_.size();
    while (f_.realizable.size() < b_.size()) {
      auto [gi, lift] = delete_and_reduce(g_, f_.home);
      auto stab = stabilizer(g_->group_ptr(), f_.realizable);
      auto ext = find_extension(*gi, stab);
      if (!ext) return descend(gi, lift);
      extend(lift, *ext);
      if (f_.home.size() > limit) throw SoundnessError("connector meets more than 7|B| supernodes");
    }
    return f_;
  }

 private:
  std::optional<Extension> first_extending(const ReducedMinor& gi, const Subgroup& stab) {
    SmallCycleStream stream(gi, 5, options_.cycle_cap);
    while (auto c = stream.next()) {
      auto t = triad_split(gi, *c);
      for (std::size_t j = 0; j < 3; ++j)
        if (!stab.contains(t.delta[j])) return Extension{j, std::move(t)};
      for (auto d : t.delta) deltas_seen_.push_back(d);
    }
    return std::nullopt;
  }

  std::optional<Extension> find_extension(const ReducedMinor& gi, const Subgroup& stab) {
    deltas_seen_.clear();
    if (options_.exhaustive_descent) return first_extending(gi, stab);
    restriction_ = minimal_restriction(gi);
    if (restriction_->is_subset_of(stab)) return std::nullopt;
    auto ext = first_extending(gi, stab);
    if (!ext) throw SoundnessError("restriction subgroup escapes the stabilizer but no cycle extends");
    return ext;
  }

  ConnectorResult descend(const MinorPtr& gi, const LiftMap& lift) {
    Subgroup bp = options_.exhaustive_descent ? generate_subgroup(g_->group_ptr(), deltas_seen_) : *restriction_;
    if (options_.exhaustive_descent && !(bp == minimal_restriction(*gi)))
      throw SoundnessError("delta span " + bp.to_string() + " differs from the restriction subgroup");
    if (bp.size() >= b_.size() || !bp.is_subset_of(b_)) throw SoundnessError("descent subgroup is not proper");
    if (!verify_restricted(*gi, bp)) throw SoundnessError("descended minor is not " + bp.to_string() + "-restricted");
    if (gi->num_supernodes() + 7 * b_.size() < g_->num_supernodes())
      throw SoundnessError("descent lost more than 7|B| supernodes");
    return DescentOutcome{std::move(bp), gi, lift, false};
  }

  // Trims a lifted access path, oriented from its N end, so that only its last
  // vertex in `n` survives.
  Path trim_access(const Path& lifted, SupernodeLabel n) const {
    std::size_t last = 0;
    for (std::size_t k = 0; k < lifted.size(); ++k)
      if (g_->supernode_of(lifted[k]) == n) last = k;
    return Path(lifted.begin() + static_cast<std::ptrdiff_t>(last), lifted.end());
  }

  void extend(const LiftMap& lift, const Extension& ext) {
    const auto& t = ext.triad;
    const auto j = ext.j, k = (j + 1) % 3, l = (j + 2) % 3;
    auto up = [&](const Path& p) { return lift_path(lift, p); };

    auto q_in = trim_access(up(t.Q[j]), t.N[j]);
    auto q_out = reversed(trim_access(up(t.Q[k]), t.N[k]));
    auto base_local = cycle_arc(t.cycle, t.c[j], t.c[k], t.c[l]);
    auto base = up(base_local);
    auto sw = up(other_arc(t.cycle.vertices, base_local));

    Path cycle(base);
    for (auto it = sw.rbegin() + 1; it + 1 != sw.rend(); ++it) cycle.push_back(*it);

    if (f_.empty()) {
      f_.paths.push_back(q_in);
    } else {
      auto z = f_.last();
      auto bridge = tree_path(*g_, z, q_in.front(), {g_->supernode_of(z), t.N[j]});
      append(f_.paths.back(), bridge);
      append(f_.paths.back(), q_in);
    }
    f_.cycles.push_back(std::move(cycle));
    f_.attach_in.push_back(base.front());
    f_.attach_out.push_back(base.back());
    f_.y.push_back(g_->path_weight(base));
    f_.x.push_back(g_->path_weight(sw));
    f_.base_arcs.push_back(std::move(base));
    f_.switch_arcs.push_back(std::move(sw));
    f_.paths.push_back(std::move(q_out));
    f_.realizable = add_switch(a_, f_.realizable, t.delta[j]);

    std::set<SupernodeLabel> home(f_.home.begin(), f_.home.end());
    for (const auto& p : f_.paths)
      for (auto v : p) home.insert(g_->supernode_of(v));
    for (const auto& c : f_.cycles)
      for (auto v : c) home.insert(g_->supernode_of(v));
    f_.home.assign(home.begin(), home.end());
  }

  MinorPtr g_;
  const Subgroup& b_;
  const FiniteAbelianGroup& a_;
  ConnectorOptions options_;
  Connector f_;
  std::optional<Subgroup> restriction_;
  std::vector<Element> deltas_seen_;
};

}  // namespace

Path Connector::base_path() const { return chain(*this, std::vector<char>(length(), 0)); }

ConnectorResult build_connector(const MinorPtr& g, const Subgroup& b, const ConnectorOptions& options) {
  if (b.is_trivial()) {
    Connector f;
    f.realizable = {b.group().zero()};
    return f;
  }
  if (g->num_supernodes() <= 7 * b.size())
    return DescentOutcome{Subgroup::trivial(g->group_ptr()), nullptr, LiftMap{}, true};
  if (!verify_restricted(*g, b)) throw DomainError("minor is not " + b.to_string() + "-restricted");
  return Builder(g, b, options).run();
}

Path realize(const Connector& f, const FiniteAbelianGroup& a, Element s) {
  if (!std::binary_search(f.realizable.begin(), f.realizable.end(), s))
    throw DomainError(a.format(s) + " is not in the realizable set");
  auto d = f.deltas(a);
  std::vector<std::vector<char>> reach{std::vector<char>(a.order(), 0)};
  reach[0][a.zero().code()] = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto next = reach.back();
    for (std::uint32_t code = 0; code < a.order(); ++code)
      if (reach.back()[code]) next[a.add(Element{code}, d[i]).code()] = 1;
    reach.push_back(std::move(next));
  }
  if (!reach.back()[s.code()]) throw DomainError(a.format(s) + " is not a sum of connector deltas");
  std::vector<char> switched(d.size(), 0);
  for (auto i = d.size(); i > 0; --i) {
    if (reach[i - 1][s.code()]) continue;
    switched[i - 1] = 1;
    s = a.sub(s, d[i - 1]);
  }
  return chain(f, switched);
}

std::string_view to_string(ConnectorViolation::Kind k) {
  switch (k) {
    case ConnectorViolation::Kind::Shape: return "shape";
    case ConnectorViolation::Kind::NotInGraph: return "not-in-graph";
    case ConnectorViolation::Kind::Weight: return "weight";
    case ConnectorViolation::Kind::Disjointness: return "disjointness";
    case ConnectorViolation::Kind::Attachment: return "attachment";
    case ConnectorViolation::Kind::Realizability: return "realizability";
    case ConnectorViolation::Kind::Endpoint: return "endpoint";
    case ConnectorViolation::Kind::Permissibility: return "permissibility";
  }
  return "unknown";
}

std::optional<ConnectorViolation> check_connector(const Connector& f, const ReducedMinor& g) {
  using K = ConnectorViolation::Kind;
  const auto& a = g.group();
  auto fail = [](K k, std::string d) { return ConnectorViolation{k, std::move(d)}; };
  const auto l = f.cycles.size();
  if (f.attach_in.size() != l || f.attach_out.size() != l || f.base_arcs.size() != l || f.switch_arcs.size() != l ||
      f.x.size() != l || f.y.size() != l)
    return fail(K::Shape, "per-cycle fields disagree in length");
  if (f.paths.empty() ? l != 0 : f.paths.size() != l + 1) return fail(K::Shape, "expected one more path than cycles");
  if (!std::is_sorted(f.realizable.begin(), f.realizable.end()) ||
      std::adjacent_find(f.realizable.begin(), f.realizable.end()) != f.realizable.end())
    return fail(K::Shape, "realizable set is not sorted and distinct");

  auto walk_ok = [&](const Path& p) {
    for (auto v : p)
      if (!g.contains(v)) return false;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!g.edge_between(p[i - 1], p[i])) return false;
    return true;
  };
  for (std::size_t i = 0; i < f.paths.size(); ++i)
    if (f.paths[i].empty() || !walk_ok(f.paths[i])) return fail(K::NotInGraph, "path " + std::to_string(i));
  for (std::size_t i = 0; i < l; ++i) {
    const auto& c = f.cycles[i];
    Path closed(c);
    if (!c.empty()) closed.push_back(c.front());
    if (c.size() < 3 || !walk_ok(closed)) return fail(K::NotInGraph, "cycle " + std::to_string(i));
    if (!walk_ok(f.base_arcs[i]) || !walk_ok(f.switch_arcs[i])) return fail(K::NotInGraph, "arc " + std::to_string(i));
  }

  std::map<VertexId, int> uses;
  for (const auto& c : f.cycles)
    for (auto v : c) ++uses[v];
  for (const auto& p : f.paths)
    for (auto v : p) ++uses[v];
  std::set<VertexId> shared;
  for (std::size_t i = 0; i < l; ++i) {
    const auto& c = f.cycles[i];
    auto ai = f.attach_in[i], bi = f.attach_out[i];
    if (f.paths[i].back() != ai || f.paths[i + 1].front() != bi || ai == bi)
      return fail(K::Attachment, "cycle " + std::to_string(i) + " is not joined to its paths");
    const auto& yb = f.base_arcs[i];
    const auto& xs = f.switch_arcs[i];
    if (yb.front() != ai || yb.back() != bi || xs.front() != ai || xs.back() != bi)
      return fail(K::Attachment, "arc endpoints of cycle " + std::to_string(i));
    Path joined(yb);
    for (auto it = xs.rbegin() + 1; it + 1 != xs.rend(); ++it) joined.push_back(*it);
    Path sorted_joined(joined), sorted_c(c);
    std::sort(sorted_joined.begin(), sorted_joined.end());
    std::sort(sorted_c.begin(), sorted_c.end());
    if (sorted_joined != sorted_c || std::adjacent_find(sorted_c.begin(), sorted_c.end()) != sorted_c.end())
      return fail(K::Attachment, "arcs of cycle " + std::to_string(i) + " do not partition it");
    if (!g.edge_between(joined.back(), joined.front()) && joined.size() > 2)
      return fail(K::Attachment, "arcs of cycle " + std::to_string(i) + " do not close up");
    if (g.path_weight(yb) != f.y[i] || g.path_weight(xs) != f.x[i])
      return fail(K::Weight, "arc weights of cycle " + std::to_string(i));
    shared.insert(ai);
    shared.insert(bi);
  }
  for (auto [v, n] : uses)
    if (n > (shared.count(v) ? 2 : 1)) return fail(K::Disjointness, "vertex " + std::to_string(v) + " is reused");

  if (f.realizable.empty() || f.realizable.front() != a.zero()) return fail(K::Realizability, "0 is not realizable");
  std::vector<Element> reach{a.zero()};
  for (auto d : f.deltas(a)) reach = add_switch(a, reach, d);
  for (auto s : f.realizable)
    if (!std::binary_search(reach.begin(), reach.end(), s))
      return fail(K::Realizability, a.format(s) + " is not a sum of deltas");

  std::set<SupernodeLabel> home(f.home.begin(), f.home.end());
  for (const auto& [v, n] : uses)
    if (!home.count(g.supernode_of(v))) return fail(K::Shape, "vertex " + std::to_string(v) + " outside home supernodes");
  if (f.empty()) return std::nullopt;
  for (auto end : {f.first(), f.last()}) {
    auto s = g.supernode_of(end);
    for (const auto& [v, n] : uses)
      if (v != end && g.supernode_of(v) == s)
        return fail(K::Endpoint, "supernode " + std::to_string(s) + " holds more connector vertices than its endpoint");
  }
  auto base = f.base_path();
  Path sorted(base);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return fail(K::Disjointness, "base path is not simple");
  if (!is_permissible_path(g, base)) return fail(K::Permissibility, "base path is not permissible");
  return std::nullopt;
}

}  // namespace divsub
