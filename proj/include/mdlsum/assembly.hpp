#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mdlsum/graph.hpp"
#include "mdlsum/labeling.hpp"
#include "mdlsum/mdl.hpp"
#include "mdlsum/structure.hpp"

namespace mdlsum {

enum class Heuristic { Top10, GreedyNForget };

std::string_view heuristic_name(Heuristic h);  // "top10", "greedy"
std::optional<Heuristic> parse_heuristic(std::string_view name);

struct Model {
  std::vector<Structure> structures;  // selection order
  Heuristic heuristic = Heuristic::GreedyNForget;
  bool overlap_aware = false;
};

struct Selection {
  Model model;
  CostBreakdown cost;
  std::vector<double> trace;  // greedy: running total after each considered candidate
};

/// null_cost(candidate) - (structure bits + local error bits); may be negative.
double structure_benefit(const Graph& g, const LabeledCandidate& lc);

/// Candidate indices by benefit, highest first; earlier candidates win ties.
std::vector<std::size_t> benefit_order(std::span<const LabeledCandidate> candidates);

/// Up to ten positive-benefit structures, best first.
Selection select_top10(const Graph& g, std::span<const LabeledCandidate> candidates, bool overlap_aware);

/// Tentatively adds each candidate in benefit order; keeps it only if the
/// total description length drops by more than kBitTolerance.
Selection select_greedy_nforget(const Graph& g, std::span<const LabeledCandidate> candidates, bool overlap_aware);

Selection select(const Graph& g, std::span<const LabeledCandidate> candidates, Heuristic h, bool overlap_aware);

CostBreakdown empty_model_cost(const Graph& g);

/// Model file: a "# total_bits=..." header then one structure per line with
/// external ids, e.g. "st 5, 1 2 3".
void write_model(std::ostream& out, const Graph& g, const Model& m, const CostBreakdown& cost);
std::vector<Structure> read_model(std::istream& in, const Graph& g);

/// Fixed-width-free "%.6g" rendering shared by every text output.
std::string format_bits(double value);

}  // namespace mdlsum
