#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "mdlsum/candidate.hpp"
#include "mdlsum/graph.hpp"
#include "mdlsum/structure.hpp"

namespace mdlsum {

struct LabeledCandidate {
  Structure structure;  // host-graph node ids
  double structure_bits = 0;
  double local_error_bits = 0;
  double benefit_bits = 0;
  std::size_t candidate_index = 0;  // position in the decomposer's output
};

struct StarRoles {
  NodeId hub = 0;
  std::vector<NodeId> spokes;
};

/// Hub is the max-degree node (lowest id on ties), all others are spokes.
StarRoles choose_star_role(const Graph& sub);

/// BFS 2-coloring from the max-degree node, then greedy single-node moves
/// while the bipartite-core local error strictly drops (at most 2|V| moves).
/// The smaller side is returned first.
std::pair<std::vector<NodeId>, std::vector<NodeId>> choose_bipartition(const Graph& sub);

/// Double-BFS longest shortest path, then the remaining nodes by distance
/// from the path end.
std::vector<NodeId> choose_chain_order(const Graph& sub);

/// Pairs inside the structure's node set where the structure and `sub`
/// disagree. `s` uses sub-local ids and must span all of sub's nodes.
std::uint64_t local_error_count(const Structure& s, const Graph& sub);

/// L_N(errors + 1) + log2 C(area, errors), area = C(|V|, 2).
double local_error_cost(const Structure& s, const Graph& sub);

/// Bits to leave the candidate's induced edges unexplained: which of the
/// host graph's C(host_nodes, 2) cells they occupy.
double null_cost(const Graph& sub, std::size_t host_nodes);

/// One typed instance per vocabulary kind in fc, st, bc, ch order, using
/// sub-local ids.
std::array<Structure, 4> vocabulary_instances(const Graph& sub);

struct TypeCosts {
  std::array<double, 4> structure_bits{};
  std::array<double, 4> local_error_bits{};
  double total(std::size_t i) const { return structure_bits[i] + local_error_bits[i]; }
};

/// Costs of every kind for the induced subgraph `sub` in a host of
/// `host_nodes` nodes.
TypeCosts type_costs(const Graph& sub, std::span<const Structure, 4> instances, std::size_t host_nodes);

LabeledCandidate label_subgraph(const Graph& g, const CandidateSubgraph& c);

/// Labels every candidate; results are in input order. OpenMP dynamic loop.
std::vector<LabeledCandidate> label_candidates(const Graph& g, std::span<const CandidateSubgraph> candidates);
/// Serial reference for label_candidates.
std::vector<LabeledCandidate> label_candidates_serial(const Graph& g, std::span<const CandidateSubgraph> candidates);

}  // namespace mdlsum
