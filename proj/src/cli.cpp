#include "divsub/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "divsub/error.hpp"
#include "divsub/io.hpp"

namespace divsub::cli {

namespace {

struct Log {
  std::ostream& err;
  int verbosity;

  void info(const std::string& msg) const {
    if (verbosity >= 1) err << "divsub: " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (verbosity >= 2) err << "divsub: " << msg << '\n';
  }
};

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  } else {
    write_text_file(c.out, text);
  }
}

void require(const std::string& value, const char* what) {
  if (value.empty()) throw UnsupportedError(std::string("missing ") + what);
}

TargetGraph load_target(const std::string& spec) {
  require(spec, "--h");
  if (std::filesystem::is_regular_file(spec)) return target_from_json(read_json_file(spec));
  return gen_target(spec);
}

WeightedMinor load_instance(const std::string& path) {
  require(path, "instance path");
  auto g = minor_from_json(read_json_file(path));
  if (auto v = validate_minor(g)) throw StructuralError(path + ": not a clique minor: " + v->detail);
  return g;
}

Subgroup load_subgroup(const GroupPtr& a, const std::string& spec) {
  if (spec.empty() || spec == "trivial") return Subgroup::trivial(a);
  if (spec == "whole") return Subgroup::whole(a);
  if (std::filesystem::is_regular_file(spec)) return subgroup_from_json(a, read_json_file(spec));
  return subgroup_from_json(a, parse_json(spec, "--subgroup"));
}

EmbedOptions embed_options(const RunConfig& c) {
  EmbedOptions o;
  o.connector.exhaustive_descent = c.exhaustive_descent;
  if (c.cycle_cap > 0) o.connector.cycle_cap = c.cycle_cap;
  return o;
}

SearchBudget oracle_budget(const RunConfig& c) {
  SearchBudget b;
  b.max_vertices = c.oracle_max_vertices;
  b.max_paths_per_pair = c.oracle_max_paths;
  b.time_cap = std::chrono::milliseconds(c.oracle_time_ms);
  return b;
}

std::string stats_line(const EmbedStats& s) {
  std::ostringstream o;
  o << "f=" << s.f << " bound=" << s.bound << (s.below_bound ? " (below)" : "") << " connectors=" << s.connectors
    << " descents=" << s.descents << " spent=" << s.spent_case1 << "+" << s.spent_case2
    << " clusters=" << s.clusters << " final=" << s.final_subgroup;
  return o.str();
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  GenSpec spec = c.gen;
  spec.group = c.group;
  spec.seed = c.seed;
  emit(c, out, minor_to_json(gen_minor(spec)).dump());
  return kOk;
}

int cmd_embed(const RunConfig& c, std::ostream& out, const Log& log) {
  auto g = load_instance(c.input);
  auto h = load_target(c.h);
  auto e = embed(g, h, embed_options(c));
  log.info("embedded: " + stats_line(e.stats));
  emit(c, out, certificate_to_json(e, h, g.graph()).dump());
  if (!c.dot.empty()) write_text_file(c.dot, to_dot(g, &e.subdivision));
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  auto g = load_instance(c.input);
  require(c.certificate, "certificate path");
  auto cert = certificate_from_json(read_json_file(c.certificate), g.group_ptr());
  std::optional<TargetGraph> h;
  if (!c.h.empty()) h = load_target(c.h);
  else h = cert.target;
  if (!h) throw UnsupportedError("certificate names no target graph; pass --h");
  auto v = verify_certificate(g.graph(), *h, cert);
  Json j{{"verdict", v ? "violation" : "ok"}};
  if (v) j["violation"] = violation_to_json(*v);
  emit(c, out, j.dump());
  return v ? kViolation : kOk;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  auto [r, lift] = reduce(load_instance(c.input));
  emit(c, out, reduction_to_json(*r).dump());
  return kOk;
}

int cmd_sigma(const RunConfig& c, std::ostream& out) {
  emit(c, out, std::to_string(sigma(parse_group(c.group))));
  return kOk;
}

int cmd_check_restricted(const RunConfig& c, std::ostream& out) {
  auto [r, lift] = reduce(load_instance(c.input));
  auto b = load_subgroup(r->group_ptr(), c.subgroup);
  auto w = first_violation(*r, b);
  emit(c, out, restriction_to_json(*r, b, w).dump());
  return w ? kViolation : kOk;
}

WeightedMinor unit_clique(const GroupPtr& a, std::uint32_t f) {
  std::vector<WeightedEdge> edges;
  std::vector<std::vector<VertexId>> parts;
  for (VertexId u = 0; u < f; ++u) {
    parts.push_back({u});
    for (VertexId v = u + 1; v < f; ++v) edges.push_back({u, v, a->unit()});
  }
  return WeightedMinor(WeightedGraph(a, f, std::move(edges)), std::move(parts));
}

int cmd_oracle(const RunConfig& c, std::ostream& out, const Log& log) {
  auto g = c.clique > 0 ? unit_clique(parse_group(c.group), c.clique) : load_instance(c.input);
  auto h = load_target(c.h);
  auto r = brute_force_subdivision(g.graph(), h, oracle_budget(c));
  log.debug("oracle: " + std::string(to_string(r.verdict)) + " after " + std::to_string(r.nodes) + " steps");
  emit(c, out, oracle_to_json(r, h, g.graph()).dump());
  switch (r.verdict) {
    case OracleVerdict::Found: return kOk;
    case OracleVerdict::None: return kViolation;
    case OracleVerdict::BudgetExceeded: return kBudget;
  }
  return kUsage;
}

struct BatchRow {
  std::uint64_t seed = 0;
  std::uint64_t f = 0;
  std::string status;
  EmbedStats stats;
  std::string detail;
  int code = kOk;
};

BatchRow batch_one(const RunConfig& c, const TargetGraph& h, std::uint64_t bound, std::uint64_t seed) {
  BatchRow row;
  row.seed = seed;
  GenSpec spec = c.gen;
  spec.group = c.group;
  spec.seed = seed;
  if (!c.f_given) spec.f = static_cast<std::uint32_t>(bound);
  row.f = spec.f;
  try {
    auto g = gen_minor(spec);
    auto e = embed(g, h, embed_options(c));
    row.stats = e.stats;
    if (auto v = verify_subdivision(g.graph(), h, e.subdivision)) {
      row.status = "rejected";
      row.detail = v->detail;
      row.code = kViolation;
    } else {
      row.status = "ok";
    }
  } catch (const SoundnessError& e) {
    row.status = "soundness";
    row.detail = e.what();
    row.code = kSoundness;
  } catch (const ResourceError& e) {
    row.status = "exhausted";
    row.detail = e.what();
    row.code = kBudget;
  } catch (const IndeterminateError& e) {
    row.status = "indeterminate";
    row.detail = e.what();
    row.code = kBudget;
  } catch (const Error& e) {
    row.status = "error";
    row.detail = e.what();
    row.code = kUsage;
  }
  return row;
}

int cmd_batch(const RunConfig& c, std::ostream& out, const Log& log) {
  if (c.seed_to < c.seed_from) throw UnsupportedError("--to must not be below --from");
  auto h = load_target(c.h);
  const auto bound = required_supernodes(h, parse_group(c.group));
  const std::size_t count = c.seed_to - c.seed_from + 1;
  std::vector<BatchRow> rows(count);
  const int workers = static_cast<int>(std::max<std::size_t>(1, c.workers));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t i = 0; i < count; ++i) rows[i] = batch_one(c, h, bound, c.seed_from + i);

  std::ostringstream table;
  table << "seed\tf\tstatus\tconnectors\tdescents\tspent_connectors\tspent_descents\tclusters\tfinal_subgroup\n";
  int worst = kOk;
  std::size_t ok = 0;
  for (const auto& r : rows) {
    table << r.seed << '\t' << r.f << '\t' << r.status << '\t' << r.stats.connectors << '\t' << r.stats.descents
          << '\t' << r.stats.spent_case1 << '\t' << r.stats.spent_case2 << '\t' << r.stats.clusters << '\t'
          << (r.stats.final_subgroup.empty() ? "-" : r.stats.final_subgroup) << '\n';
    if (!r.detail.empty()) log.debug("seed " + std::to_string(r.seed) + ": " + r.detail);
    if (r.code == kOk) ++ok;
    // Soundness outranks rejection, then errors, then exhaustion.
    auto rank = [](int code) {
      return code == kSoundness ? 4 : code == kViolation ? 3 : code == kUsage ? 2 : code == kBudget ? 1 : 0;
    };
    if (rank(r.code) > rank(worst)) worst = r.code;
  }
  emit(c, out, table.str());
  log.info(std::to_string(ok) + "/" + std::to_string(count) + " seeds embedded and verified");
  return worst;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Log log{err, config.verbosity};
  try {
    const auto& s = config.subcommand;
    if (s == "gen") return cmd_gen(config, out);
    if (s == "embed") return cmd_embed(config, out, log);
    if (s == "verify") return cmd_verify(config, out);
    if (s == "reduce") return cmd_reduce(config, out);
    if (s == "sigma") return cmd_sigma(config, out);
    if (s == "check-restricted") return cmd_check_restricted(config, out);
    if (s == "oracle") return cmd_oracle(config, out, log);
    if (s == "batch") return cmd_batch(config, out, log);
    err << "divsub: unknown subcommand \"" << s << "\"\n";
    return kUsage;
  } catch (const SoundnessError& e) {
    err << "divsub: " << e.what() << "\n  while running " << config.subcommand
        << (config.input.empty() ? "" : " on " + config.input) << " (group " << config.group << ", seed "
        << config.seed << ")\n";
    return kSoundness;
  } catch (const ResourceError& e) {
    err << "divsub: " << e.what() << '\n';
    return kBudget;
  } catch (const IndeterminateError& e) {
    err << "divsub: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "divsub: " << e.what() << '\n';
    return kUsage;
  }
}

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Divisible subdivisions in group-weighted clique minors"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.footer(
      "Environment: DIVSUB_GROUP, DIVSUB_SEED, DIVSUB_CYCLE_CAP, DIVSUB_ORACLE_MAX_VERTICES, DIVSUB_WORKERS and\n"
      "DIVSUB_VERBOSITY supply defaults for the matching flags; flags given on the command line win.\n"
      "Exit status: 0 ok, 1 violation or none, 2 usage or parse error, 3 budget exceeded, 4 soundness failure.");

  bool quiet = false;
  int verbose = 0;
  std::string shape = "subdivided-clique", weights = "unit";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", c.out, "Output file (default stdout)");
    sub->add_flag("--quiet,-q", quiet, "Only print results");
    sub->add_flag("--verbose,-v", verbose, "More diagnostics on stderr");
  };
  auto group = [&](CLI::App* sub) {
    sub->add_option("--group,-g", c.group, "Group spec, e.g. Z_6 or \"Z_2 x Z_2\"")->envname("DIVSUB_GROUP");
  };
  auto caps = [&](CLI::App* sub) {
    sub->add_option("--cycle-cap", c.cycle_cap, "Cap on enumerated cycles")
        ->envname("DIVSUB_CYCLE_CAP")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--exhaustive-descent", c.exhaustive_descent, "Cross-check descents against full enumeration");
  };
  auto shape_opts = [&](CLI::App* sub) {
    sub->add_option("--shape", shape, "subdivided-clique | blownup-clique | adversarial-divisible");
    sub->add_option("--weights", weights, "unit | random | zero");
    sub->add_option("--min-length", c.gen.min_length)->check(CLI::PositiveNumber);
    sub->add_option("--max-length", c.gen.max_length)->check(CLI::PositiveNumber);
    sub->add_option("--min-tree", c.gen.min_tree)->check(CLI::PositiveNumber);
    sub->add_option("--max-tree", c.gen.max_tree)->check(CLI::PositiveNumber);
    sub->add_option("--extra-links", c.gen.extra_links);
    sub->add_option("--chords", c.gen.chords);
  };

  auto* gen = app.add_subcommand("gen", "Emit a generated instance as JSON");
  common(gen);
  group(gen);
  shape_opts(gen);
  gen->add_option("--f,-f", c.gen.f, "Number of supernodes")->check(CLI::Range(4u, 1u << 20));
  gen->add_option("--seed,-s", c.seed, "Random seed")->envname("DIVSUB_SEED");

  auto* emb = app.add_subcommand("embed", "Find a divisible subdivision and print its certificate");
  common(emb);
  caps(emb);
  emb->add_option("instance", c.input, "Instance JSON")->required();
  emb->add_option("--h", c.h, "Target: C_k, P_k, K_4, petersen, random-subcubic(n, seed), or a JSON file")->required();
  emb->add_option("--dot", c.dot, "Also write a Graphviz rendering here");

  auto* ver = app.add_subcommand("verify", "Check a certificate against an instance");
  common(ver);
  ver->add_option("instance", c.input, "Instance JSON")->required();
  ver->add_option("certificate", c.certificate, "Certificate JSON")->required();
  ver->add_option("--h", c.h, "Target (default: the one recorded in the certificate)");

  auto* red = app.add_subcommand("reduce", "Print the reduced instance and its lift map");
  common(red);
  red->add_option("instance", c.input, "Instance JSON")->required();

  auto* sig = app.add_subcommand("sigma", "Print sigma of a group");
  common(sig);
  sig->add_option("spec", c.group, "Group spec")->envname("DIVSUB_GROUP");
  sig->add_option("--group,-g", c.group, "Group spec");

  auto* chk = app.add_subcommand("check-restricted", "Decide whether an instance is B-restricted");
  common(chk);
  chk->add_option("instance", c.input, "Instance JSON")->required();
  chk->add_option("--subgroup,-b", c.subgroup, "Generators as JSON, a JSON file, \"trivial\" or \"whole\"");

  auto* orc = app.add_subcommand("oracle", "Exhaustive search on a tiny instance");
  common(orc);
  group(orc);
  orc->add_option("instance", c.input, "Instance JSON");
  orc->add_option("--h", c.h, "Target graph")->required();
  orc->add_option("--clique", c.clique, "Search the unit-weighted K_n over --group instead of an instance");
  orc->add_option("--oracle-max-vertices", c.oracle_max_vertices, "Largest graph the search accepts")
      ->envname("DIVSUB_ORACLE_MAX_VERTICES")
      ->check(CLI::PositiveNumber);
  orc->add_option("--oracle-max-paths", c.oracle_max_paths, "Candidate paths per H-edge and state")
      ->check(CLI::PositiveNumber);
  orc->add_option("--oracle-time-ms", c.oracle_time_ms, "Wall-clock cap")->check(CLI::PositiveNumber);

  auto* bat = app.add_subcommand("batch", "Generate, embed and verify a range of seeds");
  common(bat);
  group(bat);
  caps(bat);
  shape_opts(bat);
  bat->add_option("--h", c.h, "Target graph")->required();
  bat->add_option("--from", c.seed_from, "First seed")->envname("DIVSUB_SEED");
  bat->add_option("--to", c.seed_to, "Last seed (inclusive)");
  auto* f_opt = bat->add_option("--f,-f", c.gen.f, "Supernodes (default: the bound)")->check(CLI::Range(4u, 1u << 20));
  bat->add_option("--workers,-j", c.workers, "Parallel seeds")->envname("DIVSUB_WORKERS")->check(CLI::PositiveNumber);

  std::string env_verbosity;
  if (const char* v = std::getenv("DIVSUB_VERBOSITY")) env_verbosity = v;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  if (!env_verbosity.empty()) {
    try {
      c.verbosity = std::stoi(env_verbosity);
    } catch (const std::exception&) {
      std::cerr << "divsub: DIVSUB_VERBOSITY must be an integer\n";
      return kUsage;
    }
  }
  if (quiet) c.verbosity = 0;
  if (verbose > 0) c.verbosity = 1 + verbose;
  c.f_given = f_opt->count() > 0;
  if (c.subcommand == "oracle" && c.input.empty() && c.clique == 0) {
    std::cerr << "divsub: oracle needs an instance or --clique\n";
    return kUsage;
  }
  auto s = parse_shape(shape);
  auto w = parse_weight_mode(weights);
  if (!s || !w) {
    std::cerr << "divsub: unknown " << (!s ? "shape \"" + shape : "weight mode \"" + weights) << "\"\n";
    return kUsage;
  }
  c.gen.shape = *s;
  c.gen.weights = *w;
  return run(c, std::cout, std::cerr);
}

}  // namespace divsub::cli
