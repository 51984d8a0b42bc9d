#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mdlsum/graph.hpp"

namespace mdlsum {

enum class StructureKind { FullClique = 0, Star = 1, BipartiteCore = 2, Chain = 3 };

inline constexpr std::array<StructureKind, 4> kAllKinds = {
    StructureKind::FullClique, StructureKind::Star, StructureKind::BipartiteCore, StructureKind::Chain};

std::string_view kind_tag(StructureKind k);  // "fc", "st", "bc", "ch"
std::optional<StructureKind> parse_kind_tag(std::string_view tag);

// Unordered node pair packed as (min << 32) | max.
using CellKey = std::uint64_t;

inline CellKey cell_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<CellKey>(u) << 32) | v;
}

/// A typed vocabulary element.
///
/// Roles live in one node list split at `split_`: a star stores the hub then
/// the spokes (split 1), a bipartite core stores side A then side B (split
/// |A|), a clique and a chain use the whole list (a chain in path order).
class Structure {
 public:
  static Structure clique(std::vector<NodeId> nodes);
  static Structure star(NodeId hub, std::span<const NodeId> spokes);
  static Structure bipartite_core(std::span<const NodeId> side_a, std::span<const NodeId> side_b);
  static Structure chain(std::vector<NodeId> order);

  StructureKind kind() const noexcept { return kind_; }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  NodeId hub() const { return nodes_.front(); }
  std::span<const NodeId> spokes() const { return std::span(nodes_).subspan(1); }
  std::span<const NodeId> side_a() const { return std::span(nodes_).first(split_); }
  std::span<const NodeId> side_b() const { return std::span(nodes_).subspan(split_); }

  /// Number of node pairs the structure asserts to be edges.
  std::uint64_t implied_edge_count() const;

  /// Calls f(u, v) for every implied edge, each unordered pair exactly once.
  template <class F>
  void for_each_implied_edge(F&& f) const {
    const std::size_t s = nodes_.size();
    switch (kind_) {
      case StructureKind::FullClique:
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = i + 1; j < s; ++j) f(nodes_[i], nodes_[j]);
        break;
      case StructureKind::Star:
        for (std::size_t i = 1; i < s; ++i) f(nodes_[0], nodes_[i]);
        break;
      case StructureKind::BipartiteCore:
        for (std::size_t i = 0; i < split_; ++i)
          for (std::size_t j = split_; j < s; ++j) f(nodes_[i], nodes_[j]);
        break;
      case StructureKind::Chain:
        for (std::size_t i = 0; i + 1 < s; ++i) f(nodes_[i], nodes_[i + 1]);
        break;
    }
  }

  /// Same structure with every node id passed through `map`.
  Structure relabeled(std::span<const NodeId> map) const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  Structure(StructureKind kind, std::vector<NodeId> nodes, std::size_t split);

  StructureKind kind_ = StructureKind::FullClique;
  std::vector<NodeId> nodes_;
  std::size_t split_ = 0;
};

}  // namespace mdlsum
