#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "divsub/graph.hpp"

namespace divsub {

// mt19937_64 with integer sampling by rejection, so streams are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [lo, hi], inclusive.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 engine_;
};

enum class Shape { SubdividedClique, BlownupClique, AdversarialDivisible };
enum class WeightMode { Unit, Random, Zero };

std::string_view to_string(Shape s);
std::string_view to_string(WeightMode w);
std::optional<Shape> parse_shape(std::string_view s);
std::optional<WeightMode> parse_weight_mode(std::string_view s);

struct GenSpec {
  Shape shape = Shape::SubdividedClique;
  std::uint32_t f = 4;
  // Subdivided cliques: each clique edge becomes a path with length drawn from
  // [min_length, max_length]. Adversarial instances multiply the draw by q.
  std::uint32_t min_length = 1;
  std::uint32_t max_length = 3;
  // Blown-up cliques: supernode tree sizes and noise.
  std::uint32_t min_tree = 1;
  std::uint32_t max_tree = 4;
  std::uint32_t extra_links = 0;  // up to this many additional edges per supernode pair
  std::uint32_t chords = 0;       // up to this many additional edges inside each supernode
  std::string group = "Z_2";
  WeightMode weights = WeightMode::Unit;
  std::uint64_t seed = 0;
};

// Throws StructuralError for an invalid spec.
void validate_spec(const GenSpec& spec);

WeightedMinor gen_minor(const GenSpec& spec);

// "C_k", "P_k", "K_1".."K_4", "petersen", "random-subcubic(n, seed)".
TargetGraph gen_target(std::string_view name);

// Same graph and partition over Z_q with every weight equal to 1.
WeightedMinor unit_weighting(const WeightedMinor& g, std::uint32_t q);

// Same graph and partition over `group`, with weight w on every edge.
WeightedMinor reweight(const WeightedMinor& g, const GroupPtr& group, Element w);

}  // namespace divsub
