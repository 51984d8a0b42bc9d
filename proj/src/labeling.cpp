#include "mdlsum/labeling.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>
#include <optional>

#include "mdlsum/errors.hpp"
#include "mdlsum/mdl.hpp"

namespace mdlsum {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source, std::vector<NodeId>* parent = nullptr) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreached);
  if (parent) parent->assign(g.node_count(), source);
  std::vector<NodeId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId u : g.neighbors(v)) {
      if (dist[u] != kUnreached) continue;
      dist[u] = dist[v] + 1;
      if (parent) (*parent)[u] = v;
      queue.push_back(u);
    }
  }
  return dist;
}

// Farthest reached node, lowest id on ties.
NodeId farthest(const std::vector<std::uint32_t>& dist, NodeId source) {
  NodeId best = source;
  for (NodeId v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreached && (dist[v] > dist[best] || (dist[v] == dist[best] && v < best))) best = v;
  return best;
}

NodeId max_degree_node(const Graph& sub) {
  NodeId hub = 0;
  for (NodeId v = 1; v < sub.node_count(); ++v)
    if (sub.degree(v) > sub.degree(hub)) hub = v;
  return hub;
}

}  // namespace

StarRoles choose_star_role(const Graph& sub) {
  if (sub.node_count() < kMinCandidateSize) throw DomainError("star roles need at least 3 nodes");
  StarRoles roles;
  roles.hub = max_degree_node(sub);
  for (NodeId v = 0; v < sub.node_count(); ++v)
    if (v != roles.hub) roles.spokes.push_back(v);
  return roles;
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> choose_bipartition(const Graph& sub) {
  const std::size_t n = sub.node_count();
  if (n < kMinCandidateSize) throw DomainError("bipartition needs at least 3 nodes");

  // BFS 2-coloring; every component is started from its max-degree node,
  // the first from the global one.
  constexpr char kUncolored = 2;
  std::vector<char> side(n, kUncolored);
  std::size_t count[2] = {0, 0};
  std::vector<NodeId> starts(n);
  for (NodeId v = 0; v < n; ++v) starts[v] = v;
  std::stable_sort(starts.begin(), starts.end(), [&](NodeId a, NodeId b) { return sub.degree(a) > sub.degree(b); });
  std::vector<NodeId> queue;
  for (NodeId s : starts) {
    if (side[s] != kUncolored) continue;
    side[s] = 0;
    ++count[0];
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      for (NodeId u : sub.neighbors(v)) {
        if (side[u] != kUncolored) continue;
        // Wanted color is the opposite of v; if u already touches both
        // colors (odd cycle), it joins the smaller side.
        bool sees[2] = {false, false};
        for (NodeId w : sub.neighbors(u))
          if (side[w] != kUncolored) sees[static_cast<int>(side[w])] = true;
        char color = static_cast<char>(1 - side[v]);
        if (sees[0] && sees[1]) color = count[0] <= count[1] ? 0 : 1;
        side[u] = color;
        ++count[static_cast<int>(color)];
        queue.push_back(u);
      }
    }
  }

  // Greedy single-node moves while the error strictly drops.
  std::vector<std::uint64_t> same_side(n, 0);  // neighbors on the node's own side
  auto recount = [&] {
    for (NodeId v = 0; v < n; ++v) {
      same_side[v] = 0;
      for (NodeId u : sub.neighbors(v)) same_side[v] += side[u] == side[v];
    }
  };
  recount();
  for (std::size_t move = 0; move < 2 * n; ++move) {
    // Moving v flips its same-side and cross edges, and shifts the cross area.
    std::int64_t best_delta = 0;
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < n; ++v) {
      const int own = side[v];
      const std::int64_t here = static_cast<std::int64_t>(count[own]) - 1;
      const std::int64_t there = static_cast<std::int64_t>(count[1 - own]);
      if (here == 0) continue;  // keep both sides nonempty
      const std::int64_t deg = static_cast<std::int64_t>(sub.degree(v));
      const std::int64_t same = static_cast<std::int64_t>(same_side[v]);
      const std::int64_t cross = deg - same;
      // before: same + (there - cross); after: cross + (here - same)
      const std::int64_t delta = (cross + (here - same)) - (same + (there - cross));
      if (delta < best_delta) {
        best_delta = delta;
        best = v;
        found = true;
      }
    }
    if (!found) break;
    const int from = side[best];
    side[best] = static_cast<char>(1 - from);
    --count[from];
    ++count[1 - from];
    std::uint64_t now_same = 0;
    for (NodeId u : sub.neighbors(best)) {
      if (side[u] == side[best]) {
        ++same_side[u];
        ++now_same;
      } else {
        --same_side[u];
      }
    }
    same_side[best] = now_same;
  }

  std::vector<NodeId> sides[2];
  for (NodeId v = 0; v < n; ++v) sides[static_cast<int>(side[v])].push_back(v);
  // The bipartite-core shape needs one side of 1+ and the other of 2+.
  if (sides[0].empty() || sides[1].empty()) {
    auto& full = sides[0].empty() ? sides[1] : sides[0];
    auto& hollow = sides[0].empty() ? sides[0] : sides[1];
    hollow.push_back(full.back());
    full.pop_back();
  }
  if (sides[0].size() > sides[1].size()) std::swap(sides[0], sides[1]);
  return {std::move(sides[0]), std::move(sides[1])};
}

std::vector<NodeId> choose_chain_order(const Graph& sub) {
  const std::size_t n = sub.node_count();
  if (n < kMinCandidateSize) throw DomainError("chain order needs at least 3 nodes");
  const NodeId u = farthest(bfs_distances(sub, 0), 0);
  std::vector<NodeId> parent;
  const NodeId v = farthest(bfs_distances(sub, u, &parent), u);

  std::vector<NodeId> order;
  for (NodeId x = v;; x = parent[x]) {
    order.push_back(x);
    if (x == u) break;
  }
  std::reverse(order.begin(), order.end());

  std::vector<char> placed(n, 0);
  for (NodeId x : order) placed[x] = 1;
  const std::vector<std::uint32_t> from_end = bfs_distances(sub, order.back());
  std::vector<NodeId> rest;
  for (NodeId x = 0; x < n; ++x)
    if (!placed[x]) rest.push_back(x);
  std::stable_sort(rest.begin(), rest.end(), [&](NodeId a, NodeId b) { return from_end[a] < from_end[b]; });
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

std::uint64_t local_error_count(const Structure& s, const Graph& sub) {
  const std::uint64_t n = sub.node_count();
  if (s.size() != n) throw DomainError("structure must span the candidate");
  const std::uint64_t edges = sub.edge_count();
  std::uint64_t implied_present = 0;
  s.for_each_implied_edge([&](NodeId a, NodeId b) { implied_present += sub.has_edge(a, b); });
  // implied-but-absent + present-but-not-implied
  return (s.implied_edge_count() - implied_present) + (edges - implied_present);
}

double local_error_cost(const Structure& s, const Graph& sub) {
  const std::uint64_t errors = local_error_count(s, sub);
  return universal_int_cost(errors + 1) + binomial_cost(cell_universe(sub.node_count()), errors);
}

double null_cost(const Graph& sub, std::size_t host_nodes) {
  const std::uint64_t edges = sub.edge_count();
  return universal_int_cost(edges + 1) + binomial_cost(cell_universe(host_nodes), edges);
}

std::array<Structure, 4> vocabulary_instances(const Graph& sub) {
  const std::size_t n = sub.node_count();
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  StarRoles star = choose_star_role(sub);
  auto [side_a, side_b] = choose_bipartition(sub);
  return {Structure::clique(all), Structure::star(star.hub, star.spokes), Structure::bipartite_core(side_a, side_b),
          Structure::chain(choose_chain_order(sub))};
}

TypeCosts type_costs(const Graph& sub, std::span<const Structure, 4> instances, std::size_t host_nodes) {
  TypeCosts costs;
  for (std::size_t i = 0; i < 4; ++i) {
    costs.structure_bits[i] = structure_cost(instances[i], host_nodes);
    costs.local_error_bits[i] = local_error_cost(instances[i], sub);
  }
  return costs;
}

LabeledCandidate label_subgraph(const Graph& g, const CandidateSubgraph& c) {
  if (c.nodes.size() < kMinCandidateSize) throw DomainError("candidates need at least 3 nodes");
  Subgraph sub = induced_subgraph(g, c.nodes);
  std::array<Structure, 4> instances = vocabulary_instances(sub.graph);
  TypeCosts costs = type_costs(sub.graph, instances, g.node_count());

  // Strict improvement only, so the fc > st > bc > ch order decides ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (costs.total(i) < costs.total(best) - kBitTolerance) best = i;

  LabeledCandidate out{instances[best].relabeled(sub.to_parent)};
  out.structure_bits = costs.structure_bits[best];
  out.local_error_bits = costs.local_error_bits[best];
  out.benefit_bits = null_cost(sub.graph, g.node_count()) - costs.total(best);
  return out;
}

std::vector<LabeledCandidate> label_candidates_serial(const Graph& g, std::span<const CandidateSubgraph> candidates) {
  std::vector<LabeledCandidate> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.push_back(label_subgraph(g, candidates[i]));
    out.back().candidate_index = i;
  }
  return out;
}

std::vector<LabeledCandidate> label_candidates(const Graph& g, std::span<const CandidateSubgraph> candidates) {
  const std::int64_t count = static_cast<std::int64_t>(candidates.size());
  std::vector<std::optional<LabeledCandidate>> slots(candidates.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      slots[i] = label_subgraph(g, candidates[i]);
      slots[i]->candidate_index = static_cast<std::size_t>(i);
    } catch (...) {
#pragma omp critical(mdlsum_label_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<LabeledCandidate> out;
  out.reserve(candidates.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace mdlsum
