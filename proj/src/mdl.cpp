#include "mdlsum/mdl.hpp"

#include <cmath>
#include <string>

#include "mdlsum/errors.hpp"

namespace mdlsum {

double universal_int_cost(std::uint64_t z) {
  if (z < 1) throw DomainError("universal code is defined for z >= 1");
  double bits = std::log2(kRissanenConstant);
  double term = std::log2(static_cast<double>(z));
  while (term > 0) {
    bits += term;
    term = std::log2(term);
  }
  return bits;
}

double binomial_cost(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("binomial_cost requires k <= n");
  if (k == 0 || k == n) return 0.0;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  double nats = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1);
  return std::max(0.0, nats / std::log(2.0));
}

double prefix_code_cost(std::uint64_t present, std::uint64_t universe) {
  if (present > universe) throw DomainError("more marked cells than the universe holds");
  if (present == 0) return 0.0;
  const double u = static_cast<double>(universe);
  const double p = static_cast<double>(present);
  const double missing = u - p;
  double bits = std::log2(p + 1) + p * -std::log2(p / u);
  if (missing > 0) bits += missing * -std::log2(missing / u);
  return bits;
}

double error_cost(const ErrorMatrix& e) { return prefix_code_cost(e.error_cells, e.universe); }

double overlap_cost(const OverlapMatrix& o) {
  if (o.entries.empty()) return 0.0;
  double weights = 0;
  for (const auto& [cell, count] : o.entries) {
    if (count < 2) throw InvariantError("overlap entry with cover count " + std::to_string(count));
    weights += universal_int_cost(count);
  }
  return prefix_code_cost(o.entries.size(), o.universe) + weights;
}

double structure_cost(const Structure& s, std::uint64_t n) {
  if (s.size() > n) throw DomainError("structure larger than the graph");
  switch (s.kind()) {
    case StructureKind::FullClique:
      return universal_int_cost(s.size()) + binomial_cost(n, s.size());
    case StructureKind::Star: {
      const std::uint64_t spokes = s.spokes().size();
      return universal_int_cost(spokes) + std::log2(static_cast<double>(n)) + binomial_cost(n - 1, spokes);
    }
    case StructureKind::BipartiteCore: {
      const std::uint64_t a = s.side_a().size();
      const std::uint64_t b = s.side_b().size();
      return universal_int_cost(a) + universal_int_cost(b) + binomial_cost(n, a) + binomial_cost(n - a, b);
    }
    case StructureKind::Chain: {
      const std::uint64_t len = s.size();
      double bits = universal_int_cost(len - 1);
      for (std::uint64_t i = 0; i < len; ++i) bits += std::log2(static_cast<double>(n - i));
      return bits;
    }
  }
  return 0.0;
}

double model_header_cost(std::size_t structure_count) {
  return universal_int_cost(structure_count + 1) +
         binomial_cost(structure_count + kVocabularySize - 1, kVocabularySize - 1);
}

double model_cost(std::span<const Structure> structures, std::uint64_t n) {
  double bits = model_header_cost(structures.size());
  for (const Structure& s : structures) bits += structure_cost(s, n);
  return bits;
}

CoverState::CoverState(const Graph& g) : graph_(&g), universe_(cell_universe(g.node_count())) {}

void CoverState::add(const Structure& s) {
  s.for_each_implied_edge([&](NodeId u, NodeId v) {
    std::uint32_t& count = counts_[cell_key(u, v)];
    ++count;
    if (count == 1) {
      ++covered_cells_;
      if (graph_->has_edge(u, v)) ++covered_edges_;
    } else if (count == 2) {
      ++overlap_cells_;
      overlap_weight_bits_ += universal_int_cost(2);
    } else {
      overlap_weight_bits_ += universal_int_cost(count) - universal_int_cost(count - 1);
    }
  });
  ++structure_count_;
  structure_bits_ += structure_cost(s, graph_->node_count());
}

void CoverState::remove(const Structure& s) {
  s.for_each_implied_edge([&](NodeId u, NodeId v) {
    auto it = counts_.find(cell_key(u, v));
    if (it == counts_.end()) throw InvariantError("removing a structure that was never added");
    std::uint32_t& count = it->second;
    if (count == 1) {
      --covered_cells_;
      if (graph_->has_edge(u, v)) --covered_edges_;
      counts_.erase(it);
      return;
    }
    if (count == 2) {
      --overlap_cells_;
      overlap_weight_bits_ -= universal_int_cost(2);
    } else {
      overlap_weight_bits_ -= universal_int_cost(count) - universal_int_cost(count - 1);
    }
    --count;
  });
  --structure_count_;
  structure_bits_ -= structure_cost(s, graph_->node_count());
  if (structure_count_ == 0) {
    structure_bits_ = 0;
    overlap_weight_bits_ = 0;
  }
}

std::uint32_t CoverState::cover_count(NodeId u, NodeId v) const {
  auto it = counts_.find(cell_key(u, v));
  return it == counts_.end() ? 0 : it->second;
}

double CoverState::model_bits() const { return model_header_cost(structure_count_) + structure_bits_; }

double CoverState::error_bits() const {
  const std::uint64_t implied_missing = covered_cells_ - covered_edges_;
  const std::uint64_t unexplained = graph_->edge_count() - covered_edges_;
  return prefix_code_cost(implied_missing, covered_cells_) +
         prefix_code_cost(unexplained, universe_ - covered_cells_);
}

double CoverState::overlap_bits() const {
  if (overlap_cells_ == 0) return 0.0;
  return prefix_code_cost(overlap_cells_, universe_) + overlap_weight_bits_;
}

CostBreakdown CoverState::cost(bool overlap_aware) const {
  CostBreakdown c;
  c.model_bits = model_bits();
  c.error_bits = error_bits();
  c.overlap_bits = overlap_aware ? overlap_bits() : 0.0;
  c.total_bits = c.model_bits + c.error_bits + c.overlap_bits;
  return c;
}

OverlapMatrix CoverState::overlap_matrix() const {
  OverlapMatrix o;
  o.universe = universe_;
  for (const auto& [cell, count] : counts_)
    if (count >= 2) o.entries.emplace(cell, count);
  return o;
}

CostBreakdown total_cost(const Graph& g, std::span<const Structure> structures, bool overlap_aware) {
  CoverState state(g);
  for (const Structure& s : structures) state.add(s);
  return state.cost(overlap_aware);
}

}  // namespace mdlsum
