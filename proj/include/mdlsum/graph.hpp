#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mdlsum {

using NodeId = std::uint32_t;
using ExternalId = std::uint64_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in CSR form.
///
/// Neighbor lists are sorted ascending, contain no self-loops and no
/// duplicates, and every edge appears in both endpoints' lists. Internal ids
/// are dense 0..n-1; each carries the external label it was loaded with.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over internal ids 0..n-1. Self-loops and duplicate or
  /// reversed pairs are dropped. `external_ids` defaults to the identity.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::vector<ExternalId> external_ids = {});

  std::size_t node_count() const noexcept { return external_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
  bool empty() const noexcept { return external_.empty(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  ExternalId external_id(NodeId v) const { return external_[v]; }
  std::span<const ExternalId> external_ids() const noexcept { return external_; }
  std::optional<NodeId> internal_id(ExternalId label) const;

  /// Calls f(u, v) once per edge with u < v, in ascending (u, v) order.
  template <class F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < node_count(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) f(u, v);
  }

  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<ExternalId> external_;
  std::unordered_map<ExternalId, NodeId> lookup_;
};

struct ParseOptions {
  // Tokens after the first two on a line (weights, timestamps) are ignored
  // when set; otherwise they are a parse error.
  bool allow_extra_columns = true;
};

Graph load_edge_list(std::string_view text, const ParseOptions& options = {});
Graph load_edge_list(std::istream& in, const ParseOptions& options = {});
/// Reads a file, inflating it first if it starts with the gzip magic bytes.
Graph load_edge_list_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Writes "u v" lines using external labels, one per edge, u < v internally.
void write_edge_list(const Graph& g, std::ostream& out);

struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;  // local id -> parent internal id
};

/// Subgraph on `nodes` (in the given order) with every edge of g whose
/// endpoints are both included. Throws DomainError for ids outside g.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Components ordered by their smallest node; each component sorted.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

/// {v} together with its neighbors, sorted.
std::vector<NodeId> egonet(const Graph& g, NodeId v);

}  // namespace mdlsum
