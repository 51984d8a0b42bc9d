#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdlsum/assembly.hpp"
#include "mdlsum/candidate.hpp"
#include "mdlsum/graph.hpp"
#include "mdlsum/mdl.hpp"
#include "mdlsum/structure.hpp"

namespace mdlsum {

/// final / baseline as a percentage. Throws DomainError on a zero baseline.
double compression_rate(const CostBreakdown& final_cost, const CostBreakdown& baseline);

struct Coverage {
  double nodes = 0;
  double edges = 0;
};

/// Fraction of nodes in some structure and of graph edges implied by some
/// structure (each edge counted once).
Coverage coverage(const Graph& g, std::span<const Structure> structures);

using TypeHistogram = std::array<std::uint64_t, 4>;  // fc, st, bc, ch

TypeHistogram type_histogram(std::span<const Structure> structures);

struct SummaryReport {
  Method method = Method::SlashBurn;
  Heuristic heuristic = Heuristic::GreedyNForget;
  bool overlap_aware = false;
  std::uint64_t seed = 0;
  std::uint64_t structure_count = 0;
  double total_bits = 0;
  double model_bits = 0;
  double error_bits = 0;
  double overlap_bits = 0;
  double baseline_bits = 0;
  double compression_rate = 0;  // percent
  double node_coverage_pre = 0;
  double node_coverage_post = 0;
  double edge_coverage_pre = 0;
  double edge_coverage_post = 0;
  TypeHistogram type_histogram_pre{};
  TypeHistogram type_histogram_post{};
  double runtime_decompose_s = 0;
  double runtime_label_s = 0;
  double runtime_assemble_s = 0;
  std::string error;  // non-empty when the run failed (compare rows)

  double runtime_total_s() const { return runtime_decompose_s + runtime_label_s + runtime_assemble_s; }

  /// Every real field rounded to 6 significant digits, i.e. what survives
  /// serialization.
  SummaryReport rounded() const;

  friend bool operator==(const SummaryReport&, const SummaryReport&) = default;
};

enum class ReportFormat { Json, Csv };

std::string emit_report(const SummaryReport& r, ReportFormat format);
std::string csv_header();
std::string csv_row(const SummaryReport& r);
std::string emit_csv(std::span<const SummaryReport> rows);

SummaryReport parse_report_json(std::string_view text);
std::vector<SummaryReport> parse_report_csv(std::string_view text);

}  // namespace mdlsum
