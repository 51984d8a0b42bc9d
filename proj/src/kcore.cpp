#include "mdlsum/kcore.hpp"

#include <omp.h>

#include <algorithm>

namespace mdlsum {

namespace {

// Batagelj-Zaversnik peeling. `degree_of(v)` and `for_neighbors(v, f)`
// abstract over CSR and vector-of-vector adjacency.
template <class DegreeFn, class NeighborFn>
std::vector<std::uint32_t> peel(std::size_t n, DegreeFn degree_of, NeighborFn for_neighbors) {
  std::vector<std::uint32_t> degree(n);
  std::uint32_t max_degree = 0;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = static_cast<std::uint32_t>(degree_of(v));
    max_degree = std::max(max_degree, degree[v]);
  }

  std::vector<std::size_t> bin(max_degree + 2, 0);
  for (std::size_t v = 0; v < n; ++v) ++bin[degree[v]];
  std::size_t start = 0;
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> position(n);
  for (std::size_t v = 0; v < n; ++v) {
    position[v] = bin[degree[v]]++;
    order[position[v]] = static_cast<NodeId>(v);
  }
  for (std::uint32_t d = max_degree + 1; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = order[i];
    for_neighbors(v, [&](NodeId u) {
      if (degree[u] > degree[v]) {
        // Swap u with the first node of its bin, then shrink the bin.
        std::uint32_t du = degree[u];
        std::size_t pu = position[u];
        std::size_t pw = bin[du];
        NodeId w = order[pw];
        if (u != w) {
          order[pu] = w;
          order[pw] = u;
          position[u] = pw;
          position[w] = pu;
        }
        ++bin[du];
        --degree[u];
      }
    });
  }
  return degree;
}

}  // namespace

std::vector<std::uint32_t> core_numbers(const Graph& g) {
  return peel(
      g.node_count(), [&](std::size_t v) { return g.degree(static_cast<NodeId>(v)); },
      [&](NodeId v, auto&& f) {
        for (NodeId u : g.neighbors(v)) f(u);
      });
}

std::vector<std::uint32_t> core_numbers(const std::vector<std::vector<NodeId>>& adjacency) {
  return peel(
      adjacency.size(), [&](std::size_t v) { return adjacency[v].size(); },
      [&](NodeId v, auto&& f) {
        for (NodeId u : adjacency[v]) f(u);
      });
}

std::vector<std::uint32_t> core_numbers_parallel(const Graph& g) {
  const std::int64_t n = static_cast<std::int64_t>(g.node_count());
  std::vector<std::uint32_t> current(g.node_count());
  std::vector<std::uint32_t> next(g.node_count());
  for (std::int64_t v = 0; v < n; ++v) current[v] = static_cast<std::uint32_t>(g.degree(static_cast<NodeId>(v)));

  bool changed = true;
  while (changed) {
    changed = false;
#pragma omp parallel reduction(|| : changed)
    {
      std::vector<std::uint32_t> histogram;
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t v = 0; v < n; ++v) {
        const std::uint32_t estimate = current[v];
        if (estimate == 0) {
          next[v] = 0;
          continue;
        }
        // h-index of neighbor estimates, capped at the current estimate.
        histogram.assign(estimate + 1, 0);
        for (NodeId u : g.neighbors(static_cast<NodeId>(v))) ++histogram[std::min(current[u], estimate)];
        std::uint32_t h = estimate;
        std::size_t at_least = histogram[estimate];
        while (at_least < h) {
          --h;
          at_least += histogram[h];
        }
        next[v] = h;
        if (h != estimate) changed = true;
      }
    }
    current.swap(next);
  }
  return current;
}

}  // namespace mdlsum
