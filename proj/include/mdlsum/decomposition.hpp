#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "mdlsum/candidate.hpp"
#include "mdlsum/graph.hpp"

namespace mdlsum {

struct DecomposerConfig {
  Method method = Method::SlashBurn;
  double slashburn_hub_fraction = 0.005;
  // Spectral / multilevel cluster count; nullopt means ceil(n / 100)
  // clamped to [2, 500].
  std::optional<std::size_t> cluster_count;
  double resolution = 0.0001;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 1000;

  // Spectral eigensolver controls.
  double eigen_tolerance = 1e-8;
  std::size_t eigen_max_sweeps = 5000;
  std::size_t kmeans_restarts = 10;

  double balance_tolerance = 0.05;

  /// Throws DomainError describing the first violated constraint.
  void validate() const;
};

std::size_t default_cluster_count(std::size_t node_count);
std::size_t resolved_cluster_count(const DecomposerConfig& cfg, std::size_t node_count);

/// Non-overlapping assignment of every node to a dense community id.
struct Partition {
  std::vector<std::uint32_t> assignment;
  std::size_t community_count = 0;

  std::vector<std::vector<NodeId>> communities() const;
};

/// Renumbers community ids densely in order of first appearance.
Partition densify(std::vector<std::uint32_t> labels);

std::vector<CandidateSubgraph> slashburn_decompose(const Graph& g, const DecomposerConfig& cfg);

std::vector<CandidateSubgraph> kcbc_decompose(const Graph& g);

struct LouvainResult {
  Partition partition;
  std::vector<double> level_modularity;  // after each contraction level
};

Partition louvain_cluster(const Graph& g, const DecomposerConfig& cfg);
LouvainResult louvain_cluster_traced(const Graph& g, const DecomposerConfig& cfg);

/// Q = sum_c [ e_c / m - resolution * (d_c / 2m)^2 ].
double modularity(const Graph& g, const Partition& p, double resolution);

Partition spectral_cluster(const Graph& g, const DecomposerConfig& cfg);

Partition multilevel_partition(const Graph& g, const DecomposerConfig& cfg);

/// Number of edges whose endpoints lie in different communities.
std::size_t edge_cut(const Graph& g, const Partition& p);

std::vector<CandidateSubgraph> partition_to_candidates(const Partition& p, const Graph& g, Method source);

/// One community id per line, line i for internal node i.
Partition ingest_partition_file(std::istream& in, const Graph& g);
Partition ingest_partition_file(std::string_view text, const Graph& g);

/// Dispatches on cfg.method; partition methods go through
/// partition_to_candidates.
std::vector<CandidateSubgraph> decompose(const Graph& g, const DecomposerConfig& cfg);

}  // namespace mdlsum
