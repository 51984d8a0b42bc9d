#include <algorithm>
#include <numeric>

#include "mdlsum/decomposition.hpp"
#include "mdlsum/errors.hpp"
#include "mdlsum/rng.hpp"

namespace mdlsum {

namespace {

// Weighted graph used across contraction levels. `self_weight[i]` is the
// weight of edges internal to supernode i; strength counts it twice.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
  std::vector<double> self_weight;
  std::vector<double> strength;
  double total_weight = 0;  // 2m

  std::size_t size() const { return adjacency.size(); }
};

WeightedGraph from_graph(const Graph& g) {
  WeightedGraph w;
  const std::size_t n = g.node_count();
  w.adjacency.resize(n);
  w.self_weight.assign(n, 0);
  w.strength.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v)) w.adjacency[v].emplace_back(u, 1.0);
    w.strength[v] = static_cast<double>(g.degree(v));
    w.total_weight += w.strength[v];
  }
  return w;
}

// One local-moving phase. Returns true if any node changed community.
bool local_moves(const WeightedGraph& w, std::vector<std::uint32_t>& community, double resolution,
                 std::span<const std::uint32_t> order, std::size_t max_passes) {
  const std::size_t n = w.size();
  std::vector<double> total(n, 0);
  for (std::size_t i = 0; i < n; ++i) total[community[i]] += w.strength[i];

  std::vector<double> link(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  const double m2 = w.total_weight;
  bool any_move = false;

  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t own = community[i];
      const double k_i = w.strength[i];
      touched.clear();
      touched.push_back(own);
      seen[own] = 1;
      for (auto [j, weight] : w.adjacency[i]) {
        const std::uint32_t c = community[j];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += weight;
      }
      total[own] -= k_i;

      auto gain = [&](std::uint32_t c) { return link[c] - resolution * total[c] * k_i / m2; };
      const double stay = gain(own);
      std::uint32_t best = own;
      double best_gain = stay;
      for (std::uint32_t c : touched) {
        const double g = gain(c);
        if (g > best_gain + 1e-12 || (std::abs(g - best_gain) <= 1e-12 && c < best)) {
          best = c;
          best_gain = g;
        }
      }
      if (best != own && best_gain > stay + 1e-12) {
        community[i] = best;
        moved = true;
      } else {
        best = own;
      }
      total[best] += k_i;
      for (std::uint32_t c : touched) {
        link[c] = 0;
        seen[c] = 0;
      }
    }
    if (!moved) break;
    any_move = true;
  }
  return any_move;
}

WeightedGraph contract(const WeightedGraph& w, std::span<const std::uint32_t> community, std::size_t count) {
  WeightedGraph coarse;
  coarse.adjacency.resize(count);
  coarse.self_weight.assign(count, 0);
  coarse.strength.assign(count, 0);
  coarse.total_weight = w.total_weight;
  std::vector<double> accum(count, 0);
  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::uint32_t i = 0; i < w.size(); ++i) members[community[i]].push_back(i);

  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < count; ++c) {
    touched.clear();
    double internal = 0;
    for (std::uint32_t i : members[c]) {
      internal += w.self_weight[i];
      coarse.strength[c] += w.strength[i];
      for (auto [j, weight] : w.adjacency[i]) {
        const std::uint32_t d = community[j];
        if (d == c) {
          internal += weight / 2;  // each internal edge is seen from both ends
          continue;
        }
        if (accum[d] == 0) touched.push_back(d);
        accum[d] += weight;
      }
    }
    coarse.self_weight[c] = internal;
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t d : touched) {
      coarse.adjacency[c].emplace_back(d, accum[d]);
      accum[d] = 0;
    }
  }
  return coarse;
}

}  // namespace

double modularity(const Graph& g, const Partition& p, double resolution) {
  const double m = static_cast<double>(g.edge_count());
  if (m == 0) return 0.0;
  std::vector<double> internal(p.community_count, 0);
  std::vector<double> degree(p.community_count, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) degree[p.assignment[v]] += static_cast<double>(g.degree(v));
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.assignment[u] == p.assignment[v]) internal[p.assignment[u]] += 1;
  });
  double q = 0;
  for (std::size_t c = 0; c < p.community_count; ++c) {
    const double share = degree[c] / (2 * m);
    q += internal[c] / m - resolution * share * share;
  }
  return q;
}

LouvainResult louvain_cluster_traced(const Graph& g, const DecomposerConfig& cfg) {
  cfg.validate();
  LouvainResult result;
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  if (n == 0) return result;

  const WeightedGraph base = from_graph(g);
  if (base.total_weight == 0) {
    result.partition = densify(std::move(membership));
    return result;
  }
  WeightedGraph level = base;
  Rng rng(cfg.seed);
  for (std::size_t round = 0; round < cfg.max_iterations; ++round) {
    for (std::size_t depth = 0; depth < cfg.max_iterations; ++depth) {
      std::vector<std::uint32_t> community(level.size());
      std::iota(community.begin(), community.end(), 0u);
      std::vector<std::uint32_t> order(level.size());
      std::iota(order.begin(), order.end(), 0u);
      rng.shuffle(std::span(order));
      if (!local_moves(level, community, cfg.resolution, order, cfg.max_iterations)) break;

      Partition dense = densify(community);
      for (auto& c : membership) c = dense.assignment[c];
      result.level_modularity.push_back(modularity(g, densify(membership), cfg.resolution));
      level = contract(level, dense.assignment, dense.community_count);
    }

    // Levels only move whole supernodes; single nodes may still gain.
    std::vector<std::uint32_t> community = densify(membership).assignment;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(std::span(order));
    if (!local_moves(base, community, cfg.resolution, order, cfg.max_iterations)) break;
    Partition polished = densify(std::move(community));
    result.level_modularity.push_back(modularity(g, polished, cfg.resolution));
    membership = polished.assignment;
    level = contract(base, polished.assignment, polished.community_count);
  }
  result.partition = densify(std::move(membership));
  return result;
}

Partition louvain_cluster(const Graph& g, const DecomposerConfig& cfg) {
  return louvain_cluster_traced(g, cfg).partition;
}

}  // namespace mdlsum
