#include "divsub/kernels.hpp"

#include <omp.h>

namespace divsub {

Element triangle_weight(const ReducedMinor& g, SupernodeLabel a, SupernodeLabel b, SupernodeLabel c) {
  const auto& grp = g.group();
  Element w = g.supernode_path_weight(g.port(a, c), g.port(a, b));
  w = grp.add(w, g.edge(g.link(a, b)).weight);
  w = grp.add(w, g.supernode_path_weight(g.port(b, a), g.port(b, c)));
  w = grp.add(w, g.edge(g.link(b, c)).weight);
  w = grp.add(w, g.supernode_path_weight(g.port(c, b), g.port(c, a)));
  return grp.add(w, g.edge(g.link(c, a)).weight);
}

namespace {

std::vector<Element> collect(const std::vector<char>& seen) {
  std::vector<Element> out;
  for (std::uint32_t code = 0; code < seen.size(); ++code)
    if (seen[code]) out.push_back(Element{code});
  return out;
}

void mark_edges(const ReducedMinor& g, std::vector<char>& seen) {
  for (const auto& e : g.edges()) seen[g.group().twice(e.weight).code()] = 1;
}

}  // namespace

std::vector<Element> restriction_generators_serial(const ReducedMinor& g) {
  std::vector<char> seen(g.group().order(), 0);
  mark_edges(g, seen);
  const auto& labels = g.labels();
  for (std::size_t i = 1; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      seen[triangle_weight(g, labels[0], labels[i], labels[j]).code()] = 1;
  return collect(seen);
}

std::vector<Element> restriction_generators_parallel(const ReducedMinor& g, int threads) {
  const auto order = g.group().order();
  std::vector<char> seen(order, 0);
  mark_edges(g, seen);
  const auto& labels = g.labels();
  const auto f = static_cast<long>(labels.size());
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::vector<char> local(order, 0);
#pragma omp for schedule(dynamic, 4) nowait
    for (long i = 1; i < f; ++i)
      for (long j = i + 1; j < f; ++j) local[triangle_weight(g, labels[0], labels[i], labels[j]).code()] = 1;
#pragma omp critical
    for (std::uint32_t code = 0; code < order; ++code)
      if (local[code]) seen[code] = 1;
  }
  return collect(seen);
}

}  // namespace divsub
