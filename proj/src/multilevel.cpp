#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdlsum/decomposition.hpp"
#include "mdlsum/errors.hpp"
#include "mdlsum/rng.hpp"

namespace mdlsum {

namespace {

struct Level {
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adjacency;  // (neighbor, edge weight)
  std::vector<std::int64_t> weight;                                            // vertex weight
  std::vector<std::uint32_t> coarse_of;  // fine vertex -> vertex of the next coarser level

  std::size_t size() const { return weight.size(); }
};

Level from_graph(const Graph& g) {
  Level level;
  level.adjacency.resize(g.node_count());
  level.weight.assign(g.node_count(), 1);
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId u : g.neighbors(v)) level.adjacency[v].emplace_back(u, 1);
  return level;
}

// Heavy-edge matching in a seeded visiting order. Returns the number of
// coarse vertices; fills fine.coarse_of.
std::size_t match(Level& fine, std::int64_t max_vertex_weight, Rng& rng) {
  const std::size_t n = fine.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(std::span(order));
  constexpr std::uint32_t kUnmatched = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> mate(n, kUnmatched);
  for (std::uint32_t u : order) {
    if (mate[u] != kUnmatched) continue;
    std::uint32_t best = u;
    std::int64_t best_weight = 0;
    for (auto [v, w] : fine.adjacency[u]) {
      if (mate[v] != kUnmatched || v == u) continue;
      if (fine.weight[u] + fine.weight[v] > max_vertex_weight) continue;
      if (w > best_weight || (w == best_weight && v < best)) {
        best = v;
        best_weight = w;
      }
    }
    mate[u] = best;
    mate[best] = u;
  }
  fine.coarse_of.assign(n, 0);
  std::uint32_t next = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (mate[u] >= u) {
      fine.coarse_of[u] = next;
      if (mate[u] != u) fine.coarse_of[mate[u]] = next;
      ++next;
    }
  }
  return next;
}

Level contract(const Level& fine, std::size_t coarse_count) {
  Level coarse;
  coarse.adjacency.resize(coarse_count);
  coarse.weight.assign(coarse_count, 0);
  std::vector<std::vector<std::uint32_t>> members(coarse_count);
  for (std::uint32_t v = 0; v < fine.size(); ++v) {
    coarse.weight[fine.coarse_of[v]] += fine.weight[v];
    members[fine.coarse_of[v]].push_back(v);
  }
  std::vector<std::int64_t> accum(coarse_count, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < coarse_count; ++c) {
    touched.clear();
    for (std::uint32_t v : members[c]) {
      for (auto [u, w] : fine.adjacency[v]) {
        const std::uint32_t d = fine.coarse_of[u];
        if (d == c) continue;
        if (accum[d] == 0) touched.push_back(d);
        accum[d] += w;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t d : touched) {
      coarse.adjacency[c].emplace_back(d, accum[d]);
      accum[d] = 0;
    }
  }
  return coarse;
}

std::int64_t cut_of(const Level& level, const std::vector<std::uint32_t>& part) {
  std::int64_t cut = 0;
  for (std::uint32_t v = 0; v < level.size(); ++v)
    for (auto [u, w] : level.adjacency[v])
      if (v < u && part[v] != part[u]) cut += w;
  return cut;
}

struct Bounds {
  std::int64_t max_weight;
};

// Greedy graph growing: parts are grown one at a time from a start vertex by
// repeatedly absorbing the frontier vertex most connected to the part.
std::vector<std::uint32_t> grow(const Level& level, std::size_t k, std::uint32_t start) {
  const std::size_t n = level.size();
  constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> part(n, kFree);
  const std::int64_t total = std::accumulate(level.weight.begin(), level.weight.end(), std::int64_t{0});
  std::int64_t assigned = 0;
  std::vector<std::int64_t> connection(n, 0);

  for (std::uint32_t p = 0; p + 1 < k; ++p) {
    const std::int64_t target = (total * (p + 1) + static_cast<std::int64_t>(k) - 1) / static_cast<std::int64_t>(k) - assigned;
    std::int64_t weight = 0;
    std::fill(connection.begin(), connection.end(), 0);
    std::vector<std::uint32_t> frontier;
    std::uint32_t seed = start;
    if (part[seed] != kFree) {
      seed = kFree;
      for (std::uint32_t v = 0; v < n; ++v)
        if (part[v] == kFree) {
          seed = v;
          break;
        }
    }
    while (weight < target && seed != kFree) {
      part[seed] = p;
      weight += level.weight[seed];
      for (auto [u, w] : level.adjacency[seed]) {
        if (part[u] != kFree) continue;
        if (connection[u] == 0) frontier.push_back(u);
        connection[u] += w;
      }
      seed = kFree;
      std::int64_t best = -1;
      for (std::uint32_t u : frontier) {
        if (part[u] != kFree) continue;
        if (weight + level.weight[u] > target && weight > 0 && level.weight[u] > 1) continue;
        if (connection[u] > best || (connection[u] == best && u < seed)) {
          best = connection[u];
          seed = u;
        }
      }
      if (seed == kFree && weight < target) {
        for (std::uint32_t v = 0; v < n; ++v)
          if (part[v] == kFree) {
            seed = v;
            break;
          }
      }
    }
    assigned += weight;
    // Next part starts from the lowest free vertex.
    start = kFree;
    for (std::uint32_t v = 0; v < n && start == kFree; ++v)
      if (part[v] == kFree) start = v;
    if (start == kFree) break;
  }
  for (auto& x : part)
    if (x == kFree) x = static_cast<std::uint32_t>(k - 1);
  return part;
}

// Boundary refinement at one level: positive-gain single moves under the
// balance bound, then Kernighan-Lin pair swaps between adjacent parts.
void refine(const Level& level, std::vector<std::uint32_t>& part, std::size_t k, std::int64_t max_weight) {
  const std::size_t n = level.size();
  std::vector<std::int64_t> part_weight(k, 0);
  for (std::uint32_t v = 0; v < n; ++v) part_weight[part[v]] += level.weight[v];
  std::vector<std::int64_t> link(k, 0);

  auto connections = [&](std::uint32_t v, std::vector<std::uint32_t>& touched) {
    touched.clear();
    for (auto [u, w] : level.adjacency[v]) {
      if (link[part[u]] == 0) touched.push_back(part[u]);
      link[part[u]] += w;
    }
  };
  std::vector<std::uint32_t> touched;

  for (int pass = 0; pass < 20; ++pass) {
    bool improved = false;
    // Single moves.
    for (std::uint32_t v = 0; v < n; ++v) {
      connections(v, touched);
      const std::uint32_t own = part[v];
      const std::int64_t internal = link[own];
      std::uint32_t best = own;
      std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
      for (std::uint32_t p : touched) {
        if (p == own || part_weight[p] + level.weight[v] > max_weight) continue;
        const std::int64_t gain = link[p] - internal;
        if (gain > best_gain || (gain == best_gain && p < best)) {
          best = p;
          best_gain = gain;
        }
      }
      const bool evens_out = best != own && part_weight[best] + level.weight[v] < part_weight[own];
      if (best != own && part_weight[own] > level.weight[v] && (best_gain > 0 || (best_gain == 0 && evens_out))) {
        part_weight[own] -= level.weight[v];
        part_weight[best] += level.weight[v];
        part[v] = best;
        if (best_gain > 0) improved = true;
      }
      for (std::uint32_t p : touched) link[p] = 0;
    }

    // Pair swaps between boundary vertices of two parts.
    std::vector<std::uint32_t> boundary;
    for (std::uint32_t v = 0; v < n; ++v)
      for (auto [u, w] : level.adjacency[v])
        if (part[u] != part[v]) {
          boundary.push_back(v);
          break;
        }
    if (boundary.size() <= 2000) {
      auto gain_to = [&](std::uint32_t v, std::uint32_t p) {
        std::int64_t to = 0, own = 0;
        for (auto [u, w] : level.adjacency[v]) {
          if (part[u] == p) to += w;
          if (part[u] == part[v]) own += w;
        }
        return to - own;
      };
      auto edge_weight = [&](std::uint32_t a, std::uint32_t b) {
        for (auto [u, w] : level.adjacency[a])
          if (u == b) return w;
        return std::int64_t{0};
      };
      for (std::size_t i = 0; i < boundary.size(); ++i) {
        for (std::size_t j = i + 1; j < boundary.size(); ++j) {
          const std::uint32_t a = boundary[i], b = boundary[j];
          const std::uint32_t pa = part[a], pb = part[b];
          if (pa == pb) continue;
          const std::int64_t wa = level.weight[a], wb = level.weight[b];
          if (part_weight[pa] - wa + wb > max_weight || part_weight[pb] - wb + wa > max_weight) continue;
          const std::int64_t gain = gain_to(a, pb) + gain_to(b, pa) - 2 * edge_weight(a, b);
          if (gain > 0) {
            part[a] = pb;
            part[b] = pa;
            part_weight[pa] += wb - wa;
            part_weight[pb] += wa - wb;
            improved = true;
          }
        }
      }
    }
    if (!improved) break;
  }
}

// Moves vertices out of overweight parts, cheapest cut increase first.
void rebalance(const Level& level, std::vector<std::uint32_t>& part, std::size_t k, std::int64_t max_weight) {
  const std::size_t n = level.size();
  std::vector<std::int64_t> part_weight(k, 0);
  for (std::uint32_t v = 0; v < n; ++v) part_weight[part[v]] += level.weight[v];
  for (std::size_t guard = 0; guard < 4 * n; ++guard) {
    std::uint32_t heavy = 0;
    for (std::uint32_t p = 1; p < k; ++p)
      if (part_weight[p] > part_weight[heavy]) heavy = p;
    if (part_weight[heavy] <= max_weight) return;

    std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
    std::uint32_t best_v = 0, best_p = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (part[v] != heavy) continue;
      std::vector<std::int64_t> link(k, 0);
      for (auto [u, w] : level.adjacency[v]) link[part[u]] += w;
      for (std::uint32_t p = 0; p < k; ++p) {
        if (p == heavy || part_weight[p] + level.weight[v] > max_weight) continue;
        const std::int64_t gain = link[p] - link[heavy];
        if (gain > best_gain) {
          best_gain = gain;
          best_v = v;
          best_p = p;
        }
      }
    }
    if (best_gain == std::numeric_limits<std::int64_t>::min()) return;
    part_weight[heavy] -= level.weight[best_v];
    part_weight[best_p] += level.weight[best_v];
    part[best_v] = best_p;
  }
}

std::uint32_t farthest_from(const Level& level, std::uint32_t source) {
  std::vector<std::uint32_t> dist(level.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> queue{source};
  dist[source] = 0;
  std::uint32_t last = source;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    if (dist[v] > dist[last] || (dist[v] == dist[last] && v < last)) last = v;
    for (auto [u, w] : level.adjacency[v]) {
      if (dist[u] == std::numeric_limits<std::uint32_t>::max()) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return last;
}

}  // namespace

Partition multilevel_partition(const Graph& g, const DecomposerConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.node_count();
  const std::size_t k = resolved_cluster_count(cfg, n);
  if (k < 2) throw DomainError("cluster count must be at least 2");
  if (k > n) throw DomainError("cluster count " + std::to_string(k) + " exceeds node count " + std::to_string(n));
  if (k == n) {
    std::vector<std::uint32_t> own(n);
    std::iota(own.begin(), own.end(), 0u);
    return densify(std::move(own));
  }

  const std::int64_t ideal = static_cast<std::int64_t>((n + k - 1) / k);
  const std::int64_t max_weight =
      std::max(ideal, static_cast<std::int64_t>(std::floor(static_cast<double>(ideal) * (1 + cfg.balance_tolerance))));

  // Coarsening.
  Rng rng(cfg.seed);
  std::vector<Level> levels;
  levels.push_back(from_graph(g));
  const std::size_t threshold = std::max<std::size_t>(50, 20 * k);
  const std::int64_t max_vertex_weight = std::max<std::int64_t>(1, max_weight / 2);
  while (levels.back().size() > threshold) {
    Level& fine = levels.back();
    const std::size_t coarse_count = match(fine, max_vertex_weight, rng);
    if (coarse_count * 20 > fine.size() * 19) break;  // under 5% shrinkage
    Level coarse = contract(fine, coarse_count);
    levels.push_back(std::move(coarse));
  }

  // Initial partition on the coarsest level: several growth starts, best cut
  // after refinement wins.
  const Level& coarsest = levels.back();
  std::vector<std::uint32_t> best_part;
  std::int64_t best_cut = std::numeric_limits<std::int64_t>::max();
  std::vector<std::uint32_t> starts{farthest_from(coarsest, 0)};
  for (int t = 0; t < 4; ++t) starts.push_back(static_cast<std::uint32_t>(rng.below(coarsest.size())));
  for (std::uint32_t start : starts) {
    std::vector<std::uint32_t> part = grow(coarsest, k, start);
    refine(coarsest, part, k, max_weight);
    const std::int64_t cut = cut_of(coarsest, part);
    if (cut < best_cut) {
      best_cut = cut;
      best_part = std::move(part);
    }
  }

  // Uncoarsening with refinement at every level.
  std::vector<std::uint32_t> part = std::move(best_part);
  for (std::size_t l = levels.size() - 1; l > 0; --l) {
    const Level& fine = levels[l - 1];
    std::vector<std::uint32_t> projected(fine.size());
    for (std::uint32_t v = 0; v < fine.size(); ++v) projected[v] = part[fine.coarse_of[v]];
    part = std::move(projected);
    refine(fine, part, k, max_weight);
  }
  rebalance(levels.front(), part, k, max_weight);
  refine(levels.front(), part, k, max_weight);
  return densify(std::move(part));
}

}  // namespace mdlsum
