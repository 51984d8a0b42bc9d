#include "mdlsum/structure.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "mdlsum/errors.hpp"

namespace mdlsum {

std::string_view kind_tag(StructureKind k) {
  switch (k) {
    case StructureKind::FullClique: return "fc";
    case StructureKind::Star: return "st";
    case StructureKind::BipartiteCore: return "bc";
    case StructureKind::Chain: return "ch";
  }
  return "??";
}

std::optional<StructureKind> parse_kind_tag(std::string_view tag) {
  for (StructureKind k : kAllKinds)
    if (kind_tag(k) == tag) return k;
  return std::nullopt;
}

Structure::Structure(StructureKind kind, std::vector<NodeId> nodes, std::size_t split)
    : kind_(kind), nodes_(std::move(nodes)), split_(split) {
  std::unordered_set<NodeId> seen(nodes_.begin(), nodes_.end());
  if (seen.size() != nodes_.size())
    throw DomainError(std::string(kind_tag(kind)) + " structure repeats a node");
}

Structure Structure::clique(std::vector<NodeId> nodes) {
  if (nodes.size() < 3) throw DomainError("full clique needs at least 3 nodes");
  std::sort(nodes.begin(), nodes.end());
  return Structure(StructureKind::FullClique, std::move(nodes), 0);
}

Structure Structure::star(NodeId hub, std::span<const NodeId> spokes) {
  if (spokes.size() < 2) throw DomainError("star needs at least 2 spokes");
  std::vector<NodeId> nodes;
  nodes.reserve(spokes.size() + 1);
  nodes.push_back(hub);
  nodes.insert(nodes.end(), spokes.begin(), spokes.end());
  std::sort(nodes.begin() + 1, nodes.end());
  return Structure(StructureKind::Star, std::move(nodes), 1);
}

Structure Structure::bipartite_core(std::span<const NodeId> side_a, std::span<const NodeId> side_b) {
  if (side_a.empty() || side_b.size() < 2)
    throw DomainError("bipartite core needs |A| >= 1 and |B| >= 2");
  std::vector<NodeId> nodes(side_a.begin(), side_a.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.insert(nodes.end(), side_b.begin(), side_b.end());
  std::sort(nodes.begin() + static_cast<std::ptrdiff_t>(side_a.size()), nodes.end());
  return Structure(StructureKind::BipartiteCore, std::move(nodes), side_a.size());
}

Structure Structure::chain(std::vector<NodeId> order) {
  if (order.size() < 3) throw DomainError("chain needs at least 3 nodes");
  return Structure(StructureKind::Chain, std::move(order), 0);
}

std::uint64_t Structure::implied_edge_count() const {
  const std::uint64_t s = nodes_.size();
  switch (kind_) {
    case StructureKind::FullClique: return s * (s - 1) / 2;
    case StructureKind::Star: return s - 1;
    case StructureKind::BipartiteCore: return static_cast<std::uint64_t>(split_) * (s - split_);
    case StructureKind::Chain: return s - 1;
  }
  return 0;
}

Structure Structure::relabeled(std::span<const NodeId> map) const {
  std::vector<NodeId> nodes(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) nodes[i] = map[nodes_[i]];
  switch (kind_) {
    case StructureKind::FullClique: return clique(std::move(nodes));
    case StructureKind::Star: return star(nodes[0], std::span(nodes).subspan(1));
    case StructureKind::BipartiteCore:
      return bipartite_core(std::span(nodes).first(split_), std::span(nodes).subspan(split_));
    case StructureKind::Chain: return chain(std::move(nodes));
  }
  return *this;
}

}  // namespace mdlsum
