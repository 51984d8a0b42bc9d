#pragma once

// Graph builders and brute-force oracles shared by the unit and acceptance
// tests. Nothing here calls into the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "mdlsum/graph.hpp"
#include "mdlsum/rng.hpp"
#include "mdlsum/structure.hpp"

namespace testing {

using mdlsum::Edge;
using mdlsum::Graph;
using mdlsum::NodeId;

inline void add_clique(std::vector<Edge>& e, std::vector<NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) e.emplace_back(nodes[i], nodes[j]);
}

inline std::vector<NodeId> range(NodeId first, NodeId last) {  // [first, last)
  std::vector<NodeId> v(last - first);
  std::iota(v.begin(), v.end(), first);
  return v;
}

inline Graph clique_graph(std::size_t n) {
  std::vector<Edge> e;
  add_clique(e, range(0, static_cast<NodeId>(n)));
  return Graph::from_edges(n, e);
}

inline Graph star_graph(std::size_t spokes) {
  std::vector<Edge> e;
  for (NodeId s = 1; s <= spokes; ++s) e.emplace_back(0, s);
  return Graph::from_edges(spokes + 1, e);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v < n; ++v) e.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  return Graph::from_edges(n, e);
}

inline Graph biclique_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < a; ++i)
    for (NodeId j = 0; j < b; ++j) e.emplace_back(i, static_cast<NodeId>(a + j));
  return Graph::from_edges(a + b, e);
}

// Two s-cliques {0..s-1}, {s..2s-1} joined by the edge (s-1, s).
inline Graph barbell_graph(std::size_t s) {
  std::vector<Edge> e;
  add_clique(e, range(0, static_cast<NodeId>(s)));
  add_clique(e, range(static_cast<NodeId>(s), static_cast<NodeId>(2 * s)));
  e.emplace_back(static_cast<NodeId>(s - 1), static_cast<NodeId>(s));
  return Graph::from_edges(2 * s, e);
}

inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, e);
}

// The 40-node example: full cliques on 0-19, 10-29, 20-39 (1-based 1-20 ...).
inline Graph three_clique_graph() {
  std::vector<Edge> e;
  add_clique(e, range(0, 20));
  add_clique(e, range(10, 30));
  add_clique(e, range(20, 40));
  return Graph::from_edges(40, e);
}

inline Graph random_graph(std::size_t n, double p, mdlsum::Rng& rng) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.uniform() < p) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline std::vector<std::set<NodeId>> adjacency_sets(const Graph& g) {
  std::vector<std::set<NodeId>> adj(g.node_count());
  g.for_each_edge([&](NodeId u, NodeId v) {
    adj[u].insert(v);
    adj[v].insert(u);
  });
  return adj;
}

// Core numbers by repeatedly deleting one minimum-degree node and tracking
// the running maximum of the deleted degrees.
inline std::vector<std::uint32_t> brute_core_numbers(const Graph& g) {
  auto adj = adjacency_sets(g);
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> core(n, 0);
  std::vector<bool> gone(n, false);
  std::uint32_t level = 0;
  for (std::size_t round = 0; round < n; ++round) {
    NodeId best = 0;
    std::size_t best_deg = SIZE_MAX;
    for (NodeId v = 0; v < n; ++v)
      if (!gone[v] && adj[v].size() < best_deg) {
        best = v;
        best_deg = adj[v].size();
      }
    level = std::max<std::uint32_t>(level, static_cast<std::uint32_t>(best_deg));
    core[best] = level;
    gone[best] = true;
    for (NodeId w : adj[best]) adj[w].erase(best);
    adj[best].clear();
  }
  return core;
}

// Flood fill, components as sorted sets, ordered by smallest member.
inline std::vector<std::vector<NodeId>> flood_components(const Graph& g) {
  auto adj = adjacency_sets(g);
  std::vector<int> seen(g.node_count(), 0);
  std::vector<std::vector<NodeId>> out;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

// Modularity straight from the definition over all node pairs.
inline double brute_modularity(const Graph& g, const std::vector<std::uint32_t>& label, double resolution) {
  const double m = static_cast<double>(g.edge_count());
  if (m == 0) return 0;
  double q = 0;
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j = 0; j < g.node_count(); ++j) {
      if (label[i] != label[j]) continue;
      const double a = g.has_edge(i, j) ? 1.0 : 0.0;
      q += a - resolution * static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / (2 * m);
    }
  return q / (2 * m);
}

inline std::size_t brute_cut(const Graph& g, const std::vector<std::uint32_t>& label) {
  std::size_t cut = 0;
  g.for_each_edge([&](NodeId u, NodeId v) { cut += label[u] != label[v]; });
  return cut;
}

// Bitmask -> label vector for exhaustive bipartition searches (n <= 20).
inline std::vector<std::uint32_t> mask_labels(std::uint32_t mask, std::size_t n) {
  std::vector<std::uint32_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = (mask >> i) & 1u;
  return label;
}

// Groups node ids by label, each group sorted, groups sorted.
inline std::set<std::vector<NodeId>> groups(const std::vector<std::uint32_t>& label) {
  std::map<std::uint32_t, std::vector<NodeId>> by;
  for (NodeId v = 0; v < label.size(); ++v) by[label[v]].push_back(v);
  std::set<std::vector<NodeId>> out;
  for (auto& [k, v] : by) out.insert(v);
  return out;
}

// Algorithm 2 on explicit edge sets, using the brute-force core oracle. Each
// result holds a candidate's nodes and the working-graph edges it had when
// it was emitted.
struct KcbcStep {
  std::vector<NodeId> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;
};

inline std::vector<KcbcStep> brute_kcbc(const Graph& g) {
  const std::size_t n = g.node_count();
  std::set<std::pair<NodeId, NodeId>> live;
  g.for_each_edge([&](NodeId u, NodeId v) { live.insert({u, v}); });
  std::vector<KcbcStep> out;
  for (;;) {
    std::vector<Edge> e(live.begin(), live.end());
    const Graph work = Graph::from_edges(n, e);
    const auto core = brute_core_numbers(work);
    const std::uint32_t kmax = core.empty() ? 0 : *std::max_element(core.begin(), core.end());
    if (kmax <= 1) break;
    std::vector<NodeId> set;
    for (NodeId v = 0; v < n; ++v)
      if (core[v] == kmax) set.push_back(v);
    std::vector<Edge> inner;
    for (const auto& [u, v] : live)
      if (core[u] == kmax && core[v] == kmax) inner.emplace_back(u, v);
    const Graph induced = Graph::from_edges(n, inner);
    for (const auto& comp : flood_components(induced)) {
      if (core[comp.front()] != kmax || comp.size() < 3) continue;
      KcbcStep step{comp, {}};
      for (const auto& [u, v] : inner)
        if (std::binary_search(comp.begin(), comp.end(), u)) step.edges.insert({u, v});
      out.push_back(std::move(step));
    }
    for (const Edge& edge : inner) live.erase(edge);
  }
  return out;
}

// ---- description-length oracle ----------------------------------------
// Straight transcriptions of the cost formulas, evaluated naively.

inline double oracle_LN(std::uint64_t z) {
  double bits = std::log2(2.865064);
  double term = std::log2(static_cast<double>(z));
  while (term > 0) {
    bits += term;
    term = std::log2(term);
  }
  return bits;
}

inline double oracle_log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n - k) k = n - k;
  double bits = 0;
  for (std::uint64_t i = 1; i <= k; ++i) bits += std::log2(static_cast<double>(n - k + i) / static_cast<double>(i));
  return bits;
}

inline double oracle_prefix(std::uint64_t present, std::uint64_t universe) {
  if (present == 0) return 0;
  const double p = static_cast<double>(present), u = static_cast<double>(universe);
  double bits = std::log2(p + 1) - p * std::log2(p / u);
  if (universe > present) bits -= (u - p) * std::log2((u - p) / u);
  return bits;
}

inline double oracle_structure(const mdlsum::Structure& s, std::uint64_t n) {
  using mdlsum::StructureKind;
  switch (s.kind()) {
    case StructureKind::FullClique:
      return oracle_LN(s.size()) + oracle_log_binomial(n, s.size());
    case StructureKind::Star:
      return oracle_LN(s.size() - 1) + std::log2(static_cast<double>(n)) + oracle_log_binomial(n - 1, s.size() - 1);
    case StructureKind::BipartiteCore: {
      const auto a = s.side_a().size(), b = s.side_b().size();
      return oracle_LN(a) + oracle_LN(b) + oracle_log_binomial(n, a) + oracle_log_binomial(n - a, b);
    }
    case StructureKind::Chain: {
      double bits = oracle_LN(s.size() - 1);
      for (std::uint64_t i = 0; i < s.size(); ++i) bits += std::log2(static_cast<double>(n - i));
      return bits;
    }
  }
  return 0;
}

struct OracleCost {
  double model = 0, error = 0, overlap = 0;
  double total(bool overlap_aware) const { return model + error + (overlap_aware ? overlap : 0); }
};

// Model bits, two-area error bits (covered cells / the rest) and overlap bits
// from an explicit map of cover counts.
inline OracleCost oracle_cost(const Graph& g, const std::vector<mdlsum::Structure>& model) {
  const std::uint64_t n = g.node_count();
  const std::uint64_t universe = n < 2 ? 0 : n * (n - 1) / 2;
  OracleCost c;
  c.model = oracle_LN(model.size() + 1) + oracle_log_binomial(model.size() + 3, 3);
  std::map<std::pair<NodeId, NodeId>, std::uint32_t> cover;
  for (const auto& s : model) {
    c.model += oracle_structure(s, n);
    s.for_each_implied_edge([&](NodeId u, NodeId v) { ++cover[{std::min(u, v), std::max(u, v)}]; });
  }
  std::uint64_t covered_edges = 0, overlaps = 0;
  double weights = 0;
  for (const auto& [cell, count] : cover) {
    covered_edges += g.has_edge(cell.first, cell.second);
    if (count >= 2) {
      ++overlaps;
      weights += oracle_LN(count);
    }
  }
  const std::uint64_t covered = cover.size();
  c.error = oracle_prefix(covered - covered_edges, covered) +
            oracle_prefix(g.edge_count() - covered_edges, universe - covered);
  c.overlap = overlaps == 0 ? 0 : oracle_prefix(overlaps, universe) + weights;
  return c;
}

}  // namespace testing
