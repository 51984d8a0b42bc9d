#include "mdlsum/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "mdlsum/errors.hpp"

namespace mdlsum {

double compression_rate(const CostBreakdown& final_cost, const CostBreakdown& baseline) {
  if (!(baseline.total_bits > 0)) throw DomainError("compression rate needs a positive baseline");
  return 100.0 * final_cost.total_bits / baseline.total_bits;
}

Coverage coverage(const Graph& g, std::span<const Structure> structures) {
  Coverage c;
  if (g.node_count() == 0) return c;
  std::vector<char> node_seen(g.node_count(), 0);
  std::unordered_set<CellKey> edges_seen;
  std::uint64_t nodes = 0;
  for (const Structure& s : structures) {
    for (NodeId v : s.nodes())
      if (!node_seen[v]) {
        node_seen[v] = 1;
        ++nodes;
      }
    s.for_each_implied_edge([&](NodeId u, NodeId v) {
      if (g.has_edge(u, v)) edges_seen.insert(cell_key(u, v));
    });
  }
  c.nodes = static_cast<double>(nodes) / static_cast<double>(g.node_count());
  if (g.edge_count() > 0) c.edges = static_cast<double>(edges_seen.size()) / static_cast<double>(g.edge_count());
  return c;
}

TypeHistogram type_histogram(std::span<const Structure> structures) {
  TypeHistogram h{};
  for (const Structure& s : structures) ++h[static_cast<std::size_t>(s.kind())];
  return h;
}

namespace {

double round6(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", x);
  return std::strtod(buffer, nullptr);
}

constexpr const char* kKindKeys[4] = {"fc", "st", "bc", "ch"};

nlohmann::ordered_json histogram_json(const TypeHistogram& h) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < 4; ++i) j[kKindKeys[i]] = h[i];
  return j;
}

TypeHistogram histogram_from(const nlohmann::json& j) {
  TypeHistogram h{};
  for (std::size_t i = 0; i < 4; ++i) h[i] = j.at(kKindKeys[i]).get<std::uint64_t>();
  return h;
}

}  // namespace

SummaryReport SummaryReport::rounded() const {
  SummaryReport r = *this;
  for (double* x : {&r.total_bits, &r.model_bits, &r.error_bits, &r.overlap_bits, &r.baseline_bits,
                    &r.compression_rate, &r.node_coverage_pre, &r.node_coverage_post, &r.edge_coverage_pre,
                    &r.edge_coverage_post, &r.runtime_decompose_s, &r.runtime_label_s, &r.runtime_assemble_s})
    *x = round6(*x);
  return r;
}

std::string emit_report(const SummaryReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) return emit_csv(std::span(&report, 1));
  const SummaryReport r = report.rounded();
  nlohmann::ordered_json j;
  j["method"] = method_name(r.method);
  j["heuristic"] = heuristic_name(r.heuristic);
  j["overlap_aware"] = r.overlap_aware;
  j["seed"] = r.seed;
  j["structure_count"] = r.structure_count;
  j["total_bits"] = r.total_bits;
  j["model_bits"] = r.model_bits;
  j["error_bits"] = r.error_bits;
  j["overlap_bits"] = r.overlap_bits;
  j["baseline_bits"] = r.baseline_bits;
  j["compression_rate"] = r.compression_rate;
  j["node_coverage_pre"] = r.node_coverage_pre;
  j["node_coverage_post"] = r.node_coverage_post;
  j["edge_coverage_pre"] = r.edge_coverage_pre;
  j["edge_coverage_post"] = r.edge_coverage_post;
  j["type_histogram_pre"] = histogram_json(r.type_histogram_pre);
  j["type_histogram_post"] = histogram_json(r.type_histogram_post);
  j["runtime_decompose_s"] = r.runtime_decompose_s;
  j["runtime_label_s"] = r.runtime_label_s;
  j["runtime_assemble_s"] = r.runtime_assemble_s;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump(2) + "\n";
}

SummaryReport parse_report_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    SummaryReport r;
    auto method = parse_method(j.at("method").get<std::string>());
    auto heuristic = parse_heuristic(j.at("heuristic").get<std::string>());
    if (!method || !heuristic) throw FormatError("unknown method or heuristic");
    r.method = *method;
    r.heuristic = *heuristic;
    r.overlap_aware = j.at("overlap_aware").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.structure_count = j.at("structure_count").get<std::uint64_t>();
    r.total_bits = j.at("total_bits").get<double>();
    r.model_bits = j.at("model_bits").get<double>();
    r.error_bits = j.at("error_bits").get<double>();
    r.overlap_bits = j.at("overlap_bits").get<double>();
    r.baseline_bits = j.at("baseline_bits").get<double>();
    r.compression_rate = j.at("compression_rate").get<double>();
    r.node_coverage_pre = j.at("node_coverage_pre").get<double>();
    r.node_coverage_post = j.at("node_coverage_post").get<double>();
    r.edge_coverage_pre = j.at("edge_coverage_pre").get<double>();
    r.edge_coverage_post = j.at("edge_coverage_post").get<double>();
    r.type_histogram_pre = histogram_from(j.at("type_histogram_pre"));
    r.type_histogram_post = histogram_from(j.at("type_histogram_post"));
    r.runtime_decompose_s = j.at("runtime_decompose_s").get<double>();
    r.runtime_label_s = j.at("runtime_label_s").get<double>();
    r.runtime_assemble_s = j.at("runtime_assemble_s").get<double>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report json: ") + e.what());
  }
}

std::string csv_header() {
  return "method,heuristic,overlap_aware,seed,structures,total_bits,model_bits,error_bits,overlap_bits,"
         "baseline_bits,compression_rate,node_coverage_pre,node_coverage_post,edge_coverage_pre,"
         "edge_coverage_post,pre_fc,pre_st,pre_bc,pre_ch,post_fc,post_st,post_bc,post_ch,"
         "runtime_decompose_s,runtime_label_s,runtime_assemble_s,error";
}

std::string csv_row(const SummaryReport& report) {
  const SummaryReport r = report.rounded();
  std::ostringstream out;
  auto real = [](double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", x);
    return std::string(buffer);
  };
  out << method_name(r.method) << ',' << heuristic_name(r.heuristic) << ',' << (r.overlap_aware ? 1 : 0) << ','
      << r.seed << ',' << r.structure_count << ',' << real(r.total_bits) << ',' << real(r.model_bits) << ','
      << real(r.error_bits) << ',' << real(r.overlap_bits) << ',' << real(r.baseline_bits) << ','
      << real(r.compression_rate) << ',' << real(r.node_coverage_pre) << ',' << real(r.node_coverage_post) << ','
      << real(r.edge_coverage_pre) << ',' << real(r.edge_coverage_post);
  for (auto count : r.type_histogram_pre) out << ',' << count;
  for (auto count : r.type_histogram_post) out << ',' << count;
  out << ',' << real(r.runtime_decompose_s) << ',' << real(r.runtime_label_s) << ',' << real(r.runtime_assemble_s)
      << ',';
  // Errors are free text: quoted when they hold a delimiter, quotes doubled.
  if (r.error.find_first_of(",\"\r\n") == std::string::npos) {
    out << r.error;
  } else {
    out << '"';
    for (char c : r.error) out << (c == '"' ? "\"\"" : std::string(1, c));
    out << '"';
  }
  return out.str();
}

std::string emit_csv(std::span<const SummaryReport> rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

namespace {

// Splits CSV text into records of cells; quoted cells may hold delimiters.
std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') {
        cell += c;
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else {
        quoted = false;
      }
      continue;
    }
    if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n') {
      if (any || !cell.empty()) {
        cells.push_back(std::move(cell));
        records.push_back(std::move(cells));
      }
      cells.clear();
      cell.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
      any = true;
    }
  }
  if (quoted) throw FormatError("unterminated quoted csv cell");
  if (any || !cell.empty()) {
    cells.push_back(std::move(cell));
    records.push_back(std::move(cells));
  }
  return records;
}

}  // namespace

std::vector<SummaryReport> parse_report_csv(std::string_view text) {
  std::vector<SummaryReport> out;
  auto records = csv_records(text);
  if (records.empty() || records.front().size() != 27) throw FormatError("unexpected csv header");
  std::string header;
  for (std::size_t i = 0; i < records.front().size(); ++i) header += (i ? "," : "") + records.front()[i];
  if (header != csv_header()) throw FormatError("unexpected csv header");
  for (std::size_t row = 1; row < records.size(); ++row) {
    const std::vector<std::string>& cells = records[row];
    if (cells.size() != 27) throw FormatError("csv row has " + std::to_string(cells.size()) + " cells");
    SummaryReport r;
    auto method = parse_method(cells[0]);
    auto heuristic = parse_heuristic(cells[1]);
    if (!method || !heuristic) throw FormatError("unknown method or heuristic in csv");
    r.method = *method;
    r.heuristic = *heuristic;
    r.overlap_aware = cells[2] == "1";
    r.seed = std::stoull(cells[3]);
    r.structure_count = std::stoull(cells[4]);
    double* reals[] = {&r.total_bits,        &r.model_bits,         &r.error_bits,        &r.overlap_bits,
                       &r.baseline_bits,     &r.compression_rate,   &r.node_coverage_pre, &r.node_coverage_post,
                       &r.edge_coverage_pre, &r.edge_coverage_post};
    for (std::size_t i = 0; i < 10; ++i) *reals[i] = std::stod(cells[5 + i]);
    for (std::size_t i = 0; i < 4; ++i) r.type_histogram_pre[i] = std::stoull(cells[15 + i]);
    for (std::size_t i = 0; i < 4; ++i) r.type_histogram_post[i] = std::stoull(cells[19 + i]);
    r.runtime_decompose_s = std::stod(cells[23]);
    r.runtime_label_s = std::stod(cells[24]);
    r.runtime_assemble_s = std::stod(cells[25]);
    r.error = cells[26];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mdlsum
