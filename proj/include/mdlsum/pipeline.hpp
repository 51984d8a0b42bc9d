#pragma once

#include <vector>

#include "mdlsum/assembly.hpp"
#include "mdlsum/candidate.hpp"
#include "mdlsum/decomposition.hpp"
#include "mdlsum/labeling.hpp"
#include "mdlsum/metrics.hpp"

namespace mdlsum {

/// Output of steps 1-2 for one decomposer; reusable across heuristics.
struct LabeledRun {
  DecomposerConfig config;
  std::vector<CandidateSubgraph> candidates;
  std::vector<LabeledCandidate> labeled;
  double decompose_s = 0;
  double label_s = 0;
};

struct SummaryResult {
  Selection selection;
  CostBreakdown baseline;
  SummaryReport report;
};

/// Decomposes and labels. Timings are recorded only when `timed` is set so
/// that untimed runs serialize identically.
LabeledRun decompose_and_label(const Graph& g, const DecomposerConfig& cfg, bool timed);

/// Step 3 plus metrics for one (heuristic, overlap) configuration.
SummaryResult assemble_summary(const Graph& g, const LabeledRun& run, Heuristic heuristic, bool overlap_aware,
                               bool timed);

}  // namespace mdlsum
