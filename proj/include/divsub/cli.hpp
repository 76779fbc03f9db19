#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divsub/generators.hpp"

namespace divsub::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3, kSoundness = 4 };

struct RunConfig {
  std::string subcommand;
  std::string input;        // instance JSON
  std::string certificate;  // verify
  std::string out;          // empty: stdout
  std::string dot;          // embed: optional DOT file
  std::string group = "Z_2";
  std::string h;            // target name or JSON path
  std::string subgroup;     // check-restricted: JSON text, file, "trivial" or "whole"
  std::uint64_t seed = 0;
  std::uint64_t seed_from = 0;
  std::uint64_t seed_to = 0;  // inclusive
  std::size_t cycle_cap = 0;  // 0: library default
  bool exhaustive_descent = false;
  std::size_t oracle_max_vertices = 14;
  std::uint64_t oracle_max_paths = 1'000'000;
  std::uint64_t oracle_time_ms = 60'000;
  std::uint32_t clique = 0;   // oracle: unit-weighted K_clique instead of an instance
  int verbosity = 1;          // 0 quiet, 1 normal, 2 verbose
  std::size_t workers = 1;
  GenSpec gen;                // gen and batch
  bool f_given = false;       // batch: otherwise f is the bound
};

// Executes one subcommand; returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (flags, then DIVSUB_* environment overrides) and runs.
int main(int argc, char** argv);

}  // namespace divsub::cli
