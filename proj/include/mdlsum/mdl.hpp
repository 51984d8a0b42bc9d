#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>

#include "mdlsum/graph.hpp"
#include "mdlsum/structure.hpp"

namespace mdlsum {

// All costs are in bits (base-2 logarithms).

inline constexpr double kRissanenConstant = 2.865064;
inline constexpr std::size_t kVocabularySize = 4;
inline constexpr double kBitTolerance = 1e-9;

/// Rissanen's universal code length for a positive integer:
/// log2(c0) + log2 z + log2 log2 z + ..., positive terms only.
double universal_int_cost(std::uint64_t z);

/// log2 C(n, k) via lgamma.
double binomial_cost(std::uint64_t n, std::uint64_t k);

/// Two-part prefix code for `present` marked cells among `universe` cells:
/// log2(present + 1) + present * l1 + (universe - present) * l0, with
/// l1 = -log2(present / universe) and l0 = -log2(missing / universe).
/// Zero when nothing is marked.
double prefix_code_cost(std::uint64_t present, std::uint64_t universe);

/// Cells of an n-node graph: n(n-1)/2 unordered pairs.
inline std::uint64_t cell_universe(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

struct ErrorMatrix {
  std::uint64_t error_cells = 0;
  std::uint64_t universe = 0;
};

double error_cost(const ErrorMatrix& e);

struct OverlapMatrix {
  std::unordered_map<CellKey, std::uint32_t> entries;  // cover count >= 2
  std::uint64_t universe = 0;
};

/// log2(|O|+1) + ||O|| l1 + ||O||' l0 + sum of L_N(count) over entries.
/// Throws InvariantError on a stored count below 2.
double overlap_cost(const OverlapMatrix& o);

double structure_cost(const Structure& s, std::uint64_t n);

/// L_N(|M|+1) + log2 C(|M|+|Omega|-1, |Omega|-1) + sum of structure costs.
double model_cost(std::span<const Structure> structures, std::uint64_t n);

/// Model-description term that depends only on the number of structures.
double model_header_cost(std::size_t structure_count);

struct CostBreakdown {
  double model_bits = 0;
  double error_bits = 0;
  double overlap_bits = 0;
  double total_bits = 0;
};

/// Per-cell cover counts of a model over a fixed graph, updated in
/// O(implied edges) per structure.
///
/// The error matrix is encoded in two areas: cells implied by at least one
/// structure (errors are implied-but-absent pairs) and all remaining cells
/// (errors are edges nobody explains). Pairs implied two or more times form
/// the overlap matrix.
class CoverState {
 public:
  explicit CoverState(const Graph& g);

  void add(const Structure& s);
  void remove(const Structure& s);  // s must have been added before

  CostBreakdown cost(bool overlap_aware) const;

  std::size_t structure_count() const noexcept { return structure_count_; }
  std::uint64_t covered_cells() const noexcept { return covered_cells_; }
  std::uint64_t covered_edges() const noexcept { return covered_edges_; }
  std::uint64_t overlap_cells() const noexcept { return overlap_cells_; }
  std::uint32_t cover_count(NodeId u, NodeId v) const;

  double model_bits() const;
  double error_bits() const;
  double overlap_bits() const;

  /// Snapshot of the pairs covered at least twice.
  OverlapMatrix overlap_matrix() const;

 private:
  const Graph* graph_;
  std::uint64_t universe_;
  std::unordered_map<CellKey, std::uint32_t> counts_;
  std::size_t structure_count_ = 0;
  double structure_bits_ = 0;
  std::uint64_t covered_cells_ = 0;
  std::uint64_t covered_edges_ = 0;
  std::uint64_t overlap_cells_ = 0;
  double overlap_weight_bits_ = 0;
};

CostBreakdown total_cost(const Graph& g, std::span<const Structure> structures, bool overlap_aware);

}  // namespace mdlsum
