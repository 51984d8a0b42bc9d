// mdlsum: decompose a graph, label candidate structures and assemble an MDL
// summary. Subcommands: summarize, compare, stats.

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdlsum/assembly.hpp"
#include "mdlsum/decomposition.hpp"
#include "mdlsum/errors.hpp"
#include "mdlsum/graph.hpp"
#include "mdlsum/kcore.hpp"
#include "mdlsum/metrics.hpp"
#include "mdlsum/pipeline.hpp"

namespace {

using namespace mdlsum;

constexpr int kExitOk = 0;
constexpr int kExitRowFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitConvergence = 4;

struct RunConfig {
  std::string input_path;
  std::string method = "slashburn";
  std::string heuristic = "greedy";
  bool overlap_aware = false;
  double resolution = 0.0001;
  std::optional<std::size_t> clusters;
  double hub_fraction = 0.005;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 1000;
  std::string partition_file;
  std::string model_out;
  std::string report_out;
  std::string report_format = "json";
  bool timings = false;
};

struct CompareConfig {
  RunConfig base;
  bool all_methods = false;
  std::vector<std::string> methods;
  std::string output;
  std::string model_dir;
};

void add_decomposer_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("input", cfg.input_path, "Edge list (whitespace separated, '#'/'%' comments, gzip ok)")->required();
  app->add_option("--resolution", cfg.resolution, "Louvain resolution")->capture_default_str();
  app->add_option("--clusters", cfg.clusters, "Spectral/multilevel cluster count (default: ceil(n/100) in [2,500])");
  app->add_option("--hub-fraction", cfg.hub_fraction, "SlashBurn hubs removed per iteration, fraction of nodes")
      ->capture_default_str();
  app->add_option("--seed", cfg.seed, "Seed for Louvain order, k-means and matching")->capture_default_str();
  app->add_option("--max-iterations", cfg.max_iterations, "SlashBurn iterations / Louvain levels cap")
      ->capture_default_str();
  app->add_flag("--timings", cfg.timings, "Record wall-clock runtimes (reports are then not byte-reproducible)");
}

DecomposerConfig decomposer_config(const RunConfig& cfg, Method method) {
  DecomposerConfig d;
  d.method = method;
  d.resolution = cfg.resolution;
  d.cluster_count = cfg.clusters;
  d.slashburn_hub_fraction = cfg.hub_fraction;
  d.seed = cfg.seed;
  d.max_iterations = cfg.max_iterations;
  d.validate();
  return d;
}

Method require_method(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw DomainError("unknown method '" + name + "'");
  return *m;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string one_line_summary(const SummaryReport& r) {
  std::ostringstream out;
  out << "method=" << method_name(r.method) << " heuristic=" << heuristic_name(r.heuristic)
      << " overlap_aware=" << (r.overlap_aware ? 1 : 0) << " total_bits=" << format_bits(r.total_bits)
      << " compression=" << format_bits(r.compression_rate) << "% structures=" << r.structure_count;
  const char* tags[] = {"fc", "st", "bc", "ch"};
  for (std::size_t i = 0; i < 4; ++i) out << ' ' << tags[i] << '=' << r.type_histogram_post[i];
  return out.str();
}

int cmd_summarize(const RunConfig& cfg) {
  const Method method = require_method(cfg.method);
  auto heuristic = parse_heuristic(cfg.heuristic);
  if (!heuristic) throw DomainError("unknown heuristic '" + cfg.heuristic + "'");
  if (cfg.report_format != "json" && cfg.report_format != "csv")
    throw DomainError("report format must be json or csv");
  DecomposerConfig dcfg = decomposer_config(cfg, method);

  Graph g = load_edge_list_file(cfg.input_path);
  LabeledRun run;
  if (!cfg.partition_file.empty()) {
    std::ifstream in(cfg.partition_file);
    if (!in) throw ParseError("cannot open " + cfg.partition_file, 0);
    Partition p = ingest_partition_file(in, g);
    run.config = dcfg;
    run.candidates = partition_to_candidates(p, g, method);
    run.labeled = label_candidates(g, run.candidates);
  } else {
    run = decompose_and_label(g, dcfg, cfg.timings);
  }
  SummaryResult result = assemble_summary(g, run, *heuristic, cfg.overlap_aware, cfg.timings);

  if (!cfg.model_out.empty()) {
    std::ostringstream model;
    write_model(model, g, result.selection.model, result.selection.cost);
    write_file(cfg.model_out, model.str());
  }
  if (!cfg.report_out.empty())
    write_file(cfg.report_out,
               emit_report(result.report, cfg.report_format == "csv" ? ReportFormat::Csv : ReportFormat::Json));
  std::cout << one_line_summary(result.report) << '\n';
  return kExitOk;
}

int cmd_compare(const CompareConfig& cfg) {
  std::vector<Method> methods;
  if (cfg.all_methods || cfg.methods.empty()) {
    methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
  } else {
    for (const auto& name : cfg.methods) methods.push_back(require_method(name));
  }
  std::vector<DecomposerConfig> configs;
  for (Method m : methods) configs.push_back(decomposer_config(cfg.base, m));

  Graph g = load_edge_list_file(cfg.base.input_path);
  const Heuristic heuristics[] = {Heuristic::Top10, Heuristic::GreedyNForget};
  const bool overlaps[] = {false, true};
  constexpr std::size_t kPerMethod = 4;

  std::vector<SummaryReport> rows(methods.size() * kPerMethod);
  std::vector<std::string> models(rows.size());
  const std::int64_t method_count = static_cast<std::int64_t>(methods.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t mi = 0; mi < method_count; ++mi) {
    const std::size_t base = static_cast<std::size_t>(mi) * kPerMethod;
    try {
      LabeledRun run = decompose_and_label(g, configs[mi], cfg.base.timings);
      std::size_t slot = base;
      for (Heuristic h : heuristics) {
        for (bool overlap : overlaps) {
          SummaryResult result = assemble_summary(g, run, h, overlap, cfg.base.timings);
          rows[slot] = result.report;
          std::ostringstream model;
          write_model(model, g, result.selection.model, result.selection.cost);
          models[slot] = model.str();
          ++slot;
        }
      }
    } catch (const std::exception& e) {
      std::size_t slot = base;
      for (Heuristic h : heuristics) {
        for (bool overlap : overlaps) {
          SummaryReport& r = rows[slot++];
          r = SummaryReport{};
          r.method = methods[mi];
          r.heuristic = h;
          r.overlap_aware = overlap;
          r.seed = cfg.base.seed;
          r.error = e.what();
        }
      }
    }
  }

  const std::string csv = emit_csv(rows);
  if (cfg.output.empty()) {
    std::cout << csv;
  } else {
    write_file(cfg.output, csv);
  }
  if (!cfg.model_dir.empty()) {
    std::filesystem::create_directories(cfg.model_dir);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].error.empty()) continue;
      const std::string name = std::string(method_name(rows[i].method)) + "_" +
                               std::string(heuristic_name(rows[i].heuristic)) +
                               (rows[i].overlap_aware ? "_overlap" : "_plain") + ".model";
      write_file((std::filesystem::path(cfg.model_dir) / name).string(), models[i]);
    }
  }
  bool failed = false;
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    failed = true;
    std::cerr << "mdlsum compare: " << method_name(r.method) << " failed: " << r.error << '\n';
  }
  return failed ? kExitRowFailed : kExitOk;
}

int cmd_stats(const std::string& input) {
  Graph g = load_edge_list_file(input);
  std::size_t min_degree = 0, max_degree = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    min_degree = v == 0 ? g.degree(v) : std::min(min_degree, g.degree(v));
    max_degree = std::max(max_degree, g.degree(v));
  }
  std::uint32_t max_core = 0;
  for (auto c : core_numbers(g)) max_core = std::max(max_core, c);
  std::cout << "nodes=" << g.node_count() << " edges=" << g.edge_count() << " max_core=" << max_core
            << " min_degree=" << min_degree << " max_degree=" << max_degree
            << " components=" << connected_components(g).size() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDL graph summarization with interchangeable decomposition methods"};
  app.require_subcommand(1);

  RunConfig summarize;
  auto* sum_cmd = app.add_subcommand("summarize", "Summarize one graph with one method and heuristic");
  add_decomposer_flags(sum_cmd, summarize);
  sum_cmd->add_option("--method", summarize.method, "slashburn | kcbc | louvain | spectral | multilevel")
      ->capture_default_str();
  sum_cmd->add_option("--heuristic", summarize.heuristic, "top10 | greedy")->capture_default_str();
  sum_cmd->add_flag("--overlap-aware", summarize.overlap_aware, "Charge for edges explained more than once");
  sum_cmd->add_option("--partition-file", summarize.partition_file,
                      "Use an external partition (one community id per line) instead of decomposing");
  sum_cmd->add_option("--model-out", summarize.model_out, "Write the model file here");
  sum_cmd->add_option("--report-out", summarize.report_out, "Write the report here");
  sum_cmd->add_option("--report-format", summarize.report_format, "json | csv")->capture_default_str();

  CompareConfig compare;
  auto* cmp_cmd = app.add_subcommand("compare", "Run methods x {top10, greedy} x {plain, overlap} into one CSV");
  add_decomposer_flags(cmp_cmd, compare.base);
  cmp_cmd->add_flag("--all-methods", compare.all_methods, "Run all five methods (default when --methods is absent)");
  cmp_cmd->add_option("--methods", compare.methods, "Comma-separated subset of methods")->delimiter(',');
  cmp_cmd->add_option("--output", compare.output, "CSV path (default: standard output)");
  cmp_cmd->add_option("--model-dir", compare.model_dir, "Directory for one model file per row");

  std::string stats_input;
  auto* stats_cmd = app.add_subcommand("stats", "Print node/edge counts, degree extremes, components, max core");
  stats_cmd->add_option("input", stats_input, "Edge list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sum_cmd) return cmd_summarize(summarize);
    if (*cmp_cmd) return cmd_compare(compare);
    if (*stats_cmd) return cmd_stats(stats_input);
  } catch (const ParseError& e) {
    std::cerr << "mdlsum: parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const FormatError& e) {
    std::cerr << "mdlsum: format error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "mdlsum: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "mdlsum: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "mdlsum: " << e.what() << '\n';
    return kExitRowFailed;
  }
  return kExitOk;
}
