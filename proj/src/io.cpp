#include "divsub/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "divsub/error.hpp"

namespace divsub {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& where, const char* key) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::uint64_t natural(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    bad(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::uint32_t vertex(const Json& j, const std::string& where, std::size_t n) {
  auto v = natural(j, where);
  if (v >= n) bad(where, "vertex " + std::to_string(v) + " out of range");
  return static_cast<std::uint32_t>(v);
}

std::string at(const std::string& where, std::string_view key) { return where + "/" + std::string(key); }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

Json path_json(const Path& p) { return Json(p); }

Path path_from(const Json& j, const std::string& where, std::size_t n) {
  array(j, where);
  Path p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(vertex(j[i], at(where, i), n));
  return p;
}

GroupPtr group_from(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a group spec string");
  try {
    return parse_group(j.get<std::string>());
  } catch (const ParseError& e) {
    bad(where, e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Json element_to_json(const FiniteAbelianGroup& a, Element e) { return Json(a.residues(e)); }

Element element_from_json(const FiniteAbelianGroup& a, const Json& j, const std::string& where) {
  // A bare integer is accepted for cyclic groups.
  if (j.is_number_integer() && a.rank() <= 1) return a.element({j.get<std::int64_t>()});
  array(j, where);
  if (j.size() != a.rank()) bad(where, "expected " + std::to_string(a.rank()) + " residues for " + a.to_string());
  std::vector<std::int64_t> r;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) bad(at(where, i), "expected an integer residue");
    r.push_back(j[i].get<std::int64_t>());
  }
  return a.element(r);
}

Json minor_to_json(const WeightedMinor& g) {
  const auto& a = g.group();
  Json edges = Json::array();
  for (const auto& e : g.graph().edges()) edges.push_back(Json::array({e.u, e.v, element_to_json(a, e.weight)}));
  return Json{{"group", a.to_string()},
              {"num_vertices", g.graph().num_vertices()},
              {"supernodes", g.supernodes()},
              {"edges", std::move(edges)}};
}

WeightedMinor minor_from_json(const Json& j) {
  auto a = group_from(field(j, "", "group"), "/group");
  const auto n = natural(field(j, "", "num_vertices"), "/num_vertices");
  const auto& sj = array(field(j, "", "supernodes"), "/supernodes");
  std::vector<std::vector<VertexId>> supernodes;
  for (std::size_t s = 0; s < sj.size(); ++s) supernodes.push_back(path_from(sj[s], at("/supernodes", s), n));
  const auto& ej = array(field(j, "", "edges"), "/edges");
  std::vector<WeightedEdge> edges;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const std::string where = at("/edges", k);
    const auto& e = array(ej[k], where);
    if (e.size() != 3) bad(where, "expected [u, v, weight]");
    edges.push_back({vertex(e[0], at(where, 0), n), vertex(e[1], at(where, 1), n),
                     element_from_json(*a, e[2], at(where, 2))});
  }
  return WeightedMinor(WeightedGraph(a, n, std::move(edges)), std::move(supernodes));
}

Json target_to_json(const TargetGraph& h) { return Json{{"n", h.num_vertices()}, {"edges", h.edges()}}; }

TargetGraph target_from_json(const Json& j) {
  const auto n = natural(field(j, "", "n"), "/n");
  const auto& ej = array(field(j, "", "edges"), "/edges");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const std::string where = at("/edges", k);
    if (!ej[k].is_array() || ej[k].size() != 2) bad(where, "expected [i, j]");
    edges.emplace_back(vertex(ej[k][0], at(where, 0), n), vertex(ej[k][1], at(where, 1), n));
  }
  return TargetGraph(n, std::move(edges));
}

Subgroup subgroup_from_json(const GroupPtr& a, const Json& j) {
  const Json& gens = j.is_object() ? field(j, "", "generators") : j;
  const std::string where = j.is_object() ? "/generators" : "";
  array(gens, where);
  std::vector<Element> elements;
  for (std::size_t i = 0; i < gens.size(); ++i) elements.push_back(element_from_json(*a, gens[i], at(where, i)));
  return Subgroup(a, std::move(elements));
}

Json subgroup_to_json(const Subgroup& b) {
  Json gens = Json::array(), elems = Json::array();
  for (auto e : b.generators()) gens.push_back(element_to_json(b.group(), e));
  for (auto e : b.elements()) elems.push_back(element_to_json(b.group(), e));
  return Json{{"order", b.size()}, {"generators", std::move(gens)}, {"elements", std::move(elems)}};
}

Json subdivision_to_json(const Subdivision& sub, const TargetGraph& h, const WeightedGraph& g) {
  Json branch = Json::object();
  for (std::size_t i = 0; i < sub.branch.size(); ++i) branch[std::to_string(i)] = sub.branch[i];
  Json paths = Json::array();
  for (std::size_t k = 0; k < sub.paths.size(); ++k) {
    auto [i, j] = h.edges()[k];
    paths.push_back(Json{{"edge", {i, j}},
                         {"vertices", path_json(sub.paths[k])},
                         {"weight", element_to_json(g.group(), g.path_weight(sub.paths[k]))}});
  }
  return Json{{"group", g.group().to_string()}, {"target", target_to_json(h)}, {"branch_map", std::move(branch)},
              {"paths", std::move(paths)}};
}

Json certificate_to_json(const Embedding& e, const TargetGraph& h, const WeightedGraph& g) {
  Json j = subdivision_to_json(e.subdivision, h, g);
  const auto& s = e.stats;
  j["stats"] = Json{{"f", s.f},
                    {"bound", s.bound},
                    {"below_bound", s.below_bound},
                    {"connectors", s.connectors},
                    {"descents", s.descents},
                    {"supernodes_spent", {{"connectors", s.spent_case1},
                                          {"descents", s.spent_case2},
                                          {"clusters", 4 * s.clusters}}},
                    {"colours", s.colours},
                    {"final_subgroup", s.final_subgroup}};
  return j;
}

Certificate certificate_from_json(const Json& j, const GroupPtr& a) {
  Certificate c;
  c.subdivision.group = a;
  if (auto it = j.find("group"); it != j.end()) {
    auto declared = group_from(*it, "/group");
    if (!(*declared == *a)) bad("/group", "certificate is over " + declared->to_string() + ", instance over " + a->to_string());
  }
  if (auto it = j.find("target"); it != j.end()) c.target = target_from_json(*it);
  const auto& bm = field(j, "", "branch_map");
  if (!bm.is_object()) bad("/branch_map", "expected an object");
  c.subdivision.branch.assign(bm.size(), kNoVertex);
  for (const auto& [key, value] : bm.items()) {
    const std::string where = at("/branch_map", key);
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      bad(where, "key is not a vertex index");
    }
    if (idx >= bm.size()) bad(where, "branch map keys must be 0..n-1");
    c.subdivision.branch[idx] = static_cast<VertexId>(natural(value, where));
  }
  const auto& pj = array(field(j, "", "paths"), "/paths");
  for (std::size_t k = 0; k < pj.size(); ++k) {
    const std::string where = at("/paths", k);
    const auto& edge = field(pj[k], where, "edge");
    if (!edge.is_array() || edge.size() != 2) bad(at(where, "edge"), "expected [i, j]");
    c.edges.emplace_back(static_cast<std::uint32_t>(natural(edge[0], at(at(where, "edge"), 0))),
                         static_cast<std::uint32_t>(natural(edge[1], at(at(where, "edge"), 1))));
    const auto& vj = array(field(pj[k], where, "vertices"), at(where, "vertices"));
    Path p;
    for (std::size_t t = 0; t < vj.size(); ++t) p.push_back(static_cast<VertexId>(natural(vj[t], at(at(where, "vertices"), t))));
    c.subdivision.paths.push_back(std::move(p));
    c.claimed_weights.push_back(element_from_json(*a, field(pj[k], where, "weight"), at(where, "weight")));
  }
  if (auto it = j.find("stats"); it != j.end()) c.stats = *it;
  return c;
}

std::optional<SubdivisionViolation> verify_certificate(const WeightedGraph& g, const TargetGraph& h,
                                                       const Certificate& c) {
  using K = SubdivisionViolation::Kind;
  if (auto v = verify_subdivision(g, h, c.subdivision)) return v;
  if (c.edges.size() != h.num_edges()) return SubdivisionViolation{K::Shape, "edge list differs from H", {}, {}};
  for (std::size_t k = 0; k < h.num_edges(); ++k) {
    std::pair<std::uint32_t, std::uint32_t> e = std::minmax(c.edges[k].first, c.edges[k].second);
    if (e != h.edges()[k])
      return SubdivisionViolation{K::Shape, "path " + std::to_string(k) + " is listed for the wrong edge of H", k, {}};
    if (c.claimed_weights[k] != g.path_weight(c.subdivision.paths[k]))
      return SubdivisionViolation{K::Weight, "path " + std::to_string(k) + " claims weight " +
                                                 g.group().format(c.claimed_weights[k]) + " but weighs " +
                                                 g.group().format(g.path_weight(c.subdivision.paths[k])),
                                  k, {}};
  }
  return std::nullopt;
}

Json violation_to_json(const SubdivisionViolation& v) {
  Json j{{"kind", std::string(to_string(v.kind))}, {"detail", v.detail}};
  if (v.path) j["path"] = *v.path;
  if (v.vertex) j["vertex"] = *v.vertex;
  return j;
}

Json connector_to_json(const Connector& f, const FiniteAbelianGroup& a) {
  auto elements = [&](const std::vector<Element>& xs) {
    Json out = Json::array();
    for (auto x : xs) out.push_back(element_to_json(a, x));
    return out;
  };
  Json cycles = Json::array();
  const auto deltas = f.deltas(a);
  for (std::size_t i = 0; i < f.length(); ++i) {
    cycles.push_back(Json{{"vertices", path_json(f.cycles[i])},
                          {"attach", {f.attach_in[i], f.attach_out[i]}},
                          {"base_arc", path_json(f.base_arcs[i])},
                          {"switch_arc", path_json(f.switch_arcs[i])},
                          {"delta", element_to_json(a, deltas[i])}});
  }
  Json paths = Json::array();
  for (const auto& p : f.paths) paths.push_back(path_json(p));
  return Json{{"cycles", std::move(cycles)}, {"paths", std::move(paths)}, {"S", elements(f.realizable)},
              {"home", f.home}};
}

Json reduction_to_json(const ReducedMinor& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json{{"edge", {e.u, e.v}}, {"interior", e.interior}});
  return Json{{"instance", minor_to_json(g.to_weighted_minor())},
              {"lift", {{"vertices", g.vertices()}, {"supernodes", g.labels()}, {"edges", std::move(edges)}}}};
}

Json restriction_to_json(const ReducedMinor& g, const Subgroup& b, const std::optional<RestrictionWitness>& w) {
  Json j{{"group", g.group().to_string()}, {"subgroup", subgroup_to_json(b)}, {"restricted", !w.has_value()}};
  if (w) {
    Json v{{"weight", element_to_json(g.group(), w->weight)}};
    if (w->cycle) {
      v["cycle"] = path_json(w->cycle->vertices);
      v["route"] = w->cycle->route;
    }
    if (w->edge) v["edge"] = {g.edge(*w->edge).u, g.edge(*w->edge).v};
    j["violation"] = std::move(v);
  }
  return j;
}

Json oracle_to_json(const OracleResult& r, const TargetGraph& h, const WeightedGraph& g) {
  Json j{{"verdict", std::string(to_string(r.verdict))}, {"nodes", r.nodes}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.witness) j["witness"] = subdivision_to_json(*r.witness, h, g);
  return j;
}

std::string to_dot(const WeightedMinor& g, const Subdivision* sub) {
  static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                             "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  const auto& graph = g.graph();
  const bool hints = graph.num_vertices() <= 200;
  std::set<std::pair<VertexId, VertexId>> bold;
  std::set<VertexId> branch;
  if (sub) {
    branch.insert(sub->branch.begin(), sub->branch.end());
    for (const auto& p : sub->paths)
      for (std::size_t t = 1; t < p.size(); ++t) bold.insert(std::minmax(p[t - 1], p[t]));
  }
  std::ostringstream out;
  out << "graph minor {\n";
  if (hints) out << "  layout=neato;\n  overlap=false;\n  node [shape=circle, style=filled, fontsize=10];\n";
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const auto s = g.supernode_of(v);
    out << "  " << v << " [";
    out << "fillcolor=\"" << (s == kNoVertex ? "#ffffff" : kPalette[s % std::size(kPalette)]) << "\"";
    if (s != kNoVertex) out << ", supernode=" << s;
    if (branch.count(v)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : graph.edges()) {
    out << "  " << e.u << " -- " << e.v << " [label=\"" << g.group().format(e.weight) << "\"";
    if (bold.count(std::minmax(e.u, e.v))) out << ", penwidth=3";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace divsub
