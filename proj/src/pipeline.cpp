#include "mdlsum/pipeline.hpp"

#include <chrono>

namespace mdlsum {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

LabeledRun decompose_and_label(const Graph& g, const DecomposerConfig& cfg, bool timed) {
  LabeledRun run;
  run.config = cfg;
  Stopwatch decompose_clock;
  run.candidates = decompose(g, cfg);
  if (timed) run.decompose_s = decompose_clock.seconds();
  Stopwatch label_clock;
  run.labeled = label_candidates(g, run.candidates);
  if (timed) run.label_s = label_clock.seconds();
  return run;
}

SummaryResult assemble_summary(const Graph& g, const LabeledRun& run, Heuristic heuristic, bool overlap_aware,
                               bool timed) {
  SummaryResult out;
  Stopwatch clock;
  out.selection = select(g, run.labeled, heuristic, overlap_aware);
  const double assemble_s = clock.seconds();
  out.baseline = empty_model_cost(g);

  std::vector<Structure> pre;
  pre.reserve(run.labeled.size());
  for (const auto& lc : run.labeled) pre.push_back(lc.structure);
  const auto& post = out.selection.model.structures;
  const Coverage cov_pre = coverage(g, pre);
  const Coverage cov_post = coverage(g, post);

  SummaryReport& r = out.report;
  r.method = run.config.method;
  r.heuristic = heuristic;
  r.overlap_aware = overlap_aware;
  r.seed = run.config.seed;
  r.structure_count = post.size();
  r.total_bits = out.selection.cost.total_bits;
  r.model_bits = out.selection.cost.model_bits;
  r.error_bits = out.selection.cost.error_bits;
  r.overlap_bits = out.selection.cost.overlap_bits;
  r.baseline_bits = out.baseline.total_bits;
  r.compression_rate = out.baseline.total_bits > 0 ? compression_rate(out.selection.cost, out.baseline) : 100.0;
  r.node_coverage_pre = cov_pre.nodes;
  r.node_coverage_post = cov_post.nodes;
  r.edge_coverage_pre = cov_pre.edges;
  r.edge_coverage_post = cov_post.edges;
  r.type_histogram_pre = type_histogram(pre);
  r.type_histogram_post = type_histogram(post);
  if (timed) {
    r.runtime_decompose_s = run.decompose_s;
    r.runtime_label_s = run.label_s;
    r.runtime_assemble_s = assemble_s;
  }
  return out;
}

}  // namespace mdlsum
