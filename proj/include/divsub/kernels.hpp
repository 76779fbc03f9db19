#pragma once

#include <vector>

#include "divsub/minor.hpp"

namespace divsub {

// Distinct values, ascending, of the weights of the triangles through the
// lowest supernode and of 2w(e) for every edge e. Their span is the least
// subgroup B for which the minor is B-restricted.
std::vector<Element> restriction_generators_serial(const ReducedMinor& g);

// Same result; the triangle sweep is split across OpenMP threads.
std::vector<Element> restriction_generators_parallel(const ReducedMinor& g, int threads = 0);

// Weight of the triangle on supernodes a, b, c through the supernode trees.
Element triangle_weight(const ReducedMinor& g, SupernodeLabel a, SupernodeLabel b, SupernodeLabel c);

}  // namespace divsub
