#include "mdlsum/assembly.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "mdlsum/errors.hpp"

namespace mdlsum {

std::string_view heuristic_name(Heuristic h) { return h == Heuristic::Top10 ? "top10" : "greedy"; }

std::optional<Heuristic> parse_heuristic(std::string_view name) {
  if (name == "top10") return Heuristic::Top10;
  if (name == "greedy" || name == "greedy-nforget") return Heuristic::GreedyNForget;
  return std::nullopt;
}

double structure_benefit(const Graph& g, const LabeledCandidate& lc) {
  Subgraph sub = induced_subgraph(g, lc.structure.nodes());
  return null_cost(sub.graph, g.node_count()) - (lc.structure_bits + lc.local_error_bits);
}

std::vector<std::size_t> benefit_order(std::span<const LabeledCandidate> candidates) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].benefit_bits > candidates[b].benefit_bits;
  });
  return order;
}

Selection select_top10(const Graph& g, std::span<const LabeledCandidate> candidates, bool overlap_aware) {
  Selection out;
  out.model.heuristic = Heuristic::Top10;
  out.model.overlap_aware = overlap_aware;
  for (std::size_t i : benefit_order(candidates)) {
    if (out.model.structures.size() == 10 || candidates[i].benefit_bits <= 0) break;
    out.model.structures.push_back(candidates[i].structure);
  }
  out.cost = total_cost(g, out.model.structures, overlap_aware);
  return out;
}

Selection select_greedy_nforget(const Graph& g, std::span<const LabeledCandidate> candidates, bool overlap_aware) {
  Selection out;
  out.model.heuristic = Heuristic::GreedyNForget;
  out.model.overlap_aware = overlap_aware;
  CoverState state(g);
  double current = state.cost(overlap_aware).total_bits;
  for (std::size_t i : benefit_order(candidates)) {
    const Structure& s = candidates[i].structure;
    state.add(s);
    const double tentative = state.cost(overlap_aware).total_bits;
    if (tentative < current - kBitTolerance) {
      current = tentative;
      out.model.structures.push_back(s);
    } else {
      state.remove(s);
    }
    out.trace.push_back(current);
  }
  // Recomputed from scratch so reported numbers carry no incremental drift.
  out.cost = total_cost(g, out.model.structures, overlap_aware);
  return out;
}

Selection select(const Graph& g, std::span<const LabeledCandidate> candidates, Heuristic h, bool overlap_aware) {
  return h == Heuristic::Top10 ? select_top10(g, candidates, overlap_aware)
                               : select_greedy_nforget(g, candidates, overlap_aware);
}

CostBreakdown empty_model_cost(const Graph& g) { return total_cost(g, {}, false); }

std::string format_bits(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

void write_model(std::ostream& out, const Graph& g, const Model& m, const CostBreakdown& cost) {
  out << "# total_bits=" << format_bits(cost.total_bits) << " model_bits=" << format_bits(cost.model_bits)
      << " error_bits=" << format_bits(cost.error_bits) << " overlap_bits=" << format_bits(cost.overlap_bits) << '\n';
  auto ids = [&](std::span<const NodeId> nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) out << (i ? " " : "") << g.external_id(nodes[i]);
  };
  for (const Structure& s : m.structures) {
    out << kind_tag(s.kind()) << ' ';
    switch (s.kind()) {
      case StructureKind::Star:
        out << g.external_id(s.hub()) << ", ";
        ids(s.spokes());
        break;
      case StructureKind::BipartiteCore:
        ids(s.side_a());
        out << ", ";
        ids(s.side_b());
        break;
      default:
        ids(s.nodes());
        break;
    }
    out << '\n';
  }
}

namespace {

std::vector<NodeId> parse_ids(std::string_view text, const Graph& g, std::size_t line) {
  std::vector<NodeId> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    ExternalId label = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), label);
    if (ec != std::errc() || ptr != token.data() + token.size()) throw ParseError("bad node id '" + token + "'", line);
    auto id = g.internal_id(label);
    if (!id) throw ParseError("unknown node " + token, line);
    out.push_back(*id);
  }
  return out;
}

}  // namespace

std::vector<Structure> read_model(std::istream& in, const Graph& g) {
  std::vector<Structure> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t space = line.find(' ');
    auto kind = parse_kind_tag(std::string_view(line).substr(0, space));
    if (!kind || space == std::string::npos) throw ParseError("unknown structure line", line_no);
    std::string_view body = std::string_view(line).substr(space + 1);
    const std::size_t comma = body.find(',');
    try {
      switch (*kind) {
        case StructureKind::FullClique: out.push_back(Structure::clique(parse_ids(body, g, line_no))); break;
        case StructureKind::Chain: out.push_back(Structure::chain(parse_ids(body, g, line_no))); break;
        case StructureKind::Star:
        case StructureKind::BipartiteCore: {
          if (comma == std::string_view::npos) throw ParseError("missing ',' between roles", line_no);
          auto first = parse_ids(body.substr(0, comma), g, line_no);
          auto second = parse_ids(body.substr(comma + 1), g, line_no);
          if (*kind == StructureKind::Star) {
            if (first.size() != 1) throw ParseError("star needs exactly one hub", line_no);
            out.push_back(Structure::star(first[0], second));
          } else {
            out.push_back(Structure::bipartite_core(first, second));
          }
          break;
        }
      }
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

}  // namespace mdlsum
