#include "mdlsum/decomposition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <string>
#include <unordered_map>

#include "mdlsum/errors.hpp"
#include "mdlsum/kcore.hpp"

namespace mdlsum {

void DecomposerConfig::validate() const {
  if (!(resolution > 0)) throw DomainError("resolution must be positive");
  if (!(slashburn_hub_fraction > 0 && slashburn_hub_fraction <= 1))
    throw DomainError("hub fraction must lie in (0, 1]");
  if (max_iterations == 0) throw DomainError("max iterations must be positive");
  if ((method == Method::Spectral || method == Method::Multilevel) && cluster_count && *cluster_count < 2)
    throw DomainError("cluster count must be at least 2");
  if (!(eigen_tolerance > 0) || eigen_max_sweeps == 0 || kmeans_restarts == 0)
    throw DomainError("eigensolver settings must be positive");
  if (!(balance_tolerance >= 0)) throw DomainError("balance tolerance must be non-negative");
}

std::size_t default_cluster_count(std::size_t node_count) {
  std::size_t k = (node_count + 99) / 100;
  return std::clamp<std::size_t>(k, 2, 500);
}

std::size_t resolved_cluster_count(const DecomposerConfig& cfg, std::size_t node_count) {
  return cfg.cluster_count ? *cfg.cluster_count : default_cluster_count(node_count);
}

std::vector<std::vector<NodeId>> Partition::communities() const {
  std::vector<std::vector<NodeId>> out(community_count);
  for (NodeId v = 0; v < assignment.size(); ++v) out[assignment[v]].push_back(v);
  return out;
}

Partition densify(std::vector<std::uint32_t> labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  for (auto& label : labels) {
    auto [it, inserted] = dense.emplace(label, static_cast<std::uint32_t>(dense.size()));
    label = it->second;
  }
  Partition p;
  p.community_count = dense.size();
  p.assignment = std::move(labels);
  return p;
}

std::vector<CandidateSubgraph> slashburn_decompose(const Graph& g, const DecomposerConfig& cfg) {
  std::vector<CandidateSubgraph> out;
  const std::size_t n = g.node_count();
  if (n == 0) return out;

  std::vector<char> alive(n, 1);
  std::vector<NodeId> current(n);
  for (NodeId v = 0; v < n; ++v) current[v] = v;
  std::vector<std::uint32_t> degree(n, 0);
  std::vector<std::uint32_t> component_of(n, 0);

  auto emit = [&](std::vector<NodeId> nodes, std::size_t iteration) {
    if (nodes.size() < kMinCandidateSize) return;
    std::sort(nodes.begin(), nodes.end());
    out.push_back({std::move(nodes), Method::SlashBurn, iteration});
  };

  std::size_t iteration = 0;
  for (; iteration < cfg.max_iterations && current.size() >= kMinCandidateSize; ++iteration) {
    for (NodeId v : current) {
      std::uint32_t d = 0;
      for (NodeId w : g.neighbors(v)) d += alive[w];
      degree[v] = d;
    }
    const std::size_t hub_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(cfg.slashburn_hub_fraction * static_cast<double>(current.size()))));
    std::vector<NodeId> ranked = current;
    auto by_degree = [&](NodeId a, NodeId b) { return degree[a] != degree[b] ? degree[a] > degree[b] : a < b; };
    const std::size_t take = std::min(hub_count, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(), by_degree);
    ranked.resize(take);

    // Egonets are taken before any hub of this round is removed.
    for (NodeId hub : ranked) {
      std::vector<NodeId> ego{hub};
      for (NodeId w : g.neighbors(hub))
        if (alive[w]) ego.push_back(w);
      emit(std::move(ego), iteration);
    }
    for (NodeId hub : ranked) alive[hub] = 0;

    // Components of what is left; the largest (earliest on ties) is kept.
    std::vector<std::vector<NodeId>> components;
    std::vector<NodeId> stack;
    std::sort(current.begin(), current.end());
    for (NodeId s : current) {
      if (!alive[s] || component_of[s] == iteration + 1) continue;
      std::vector<NodeId> comp;
      component_of[s] = static_cast<std::uint32_t>(iteration + 1);
      stack.push_back(s);
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (NodeId w : g.neighbors(v)) {
          if (alive[w] && component_of[w] != iteration + 1) {
            component_of[w] = static_cast<std::uint32_t>(iteration + 1);
            stack.push_back(w);
          }
        }
      }
      components.push_back(std::move(comp));
    }
    if (components.empty()) {
      current.clear();
      break;
    }
    std::size_t giant = 0;
    for (std::size_t c = 1; c < components.size(); ++c)
      if (components[c].size() > components[giant].size()) giant = c;
    for (std::size_t c = 0; c < components.size(); ++c) {
      if (c == giant) continue;
      for (NodeId v : components[c]) alive[v] = 0;
      emit(std::move(components[c]), iteration);
    }
    current = std::move(components[giant]);
  }
  // Out of iterations with a sizeable remainder: it is a candidate too.
  if (iteration == cfg.max_iterations && current.size() >= kMinCandidateSize) emit(std::move(current), iteration);
  return out;
}

std::vector<CandidateSubgraph> kcbc_decompose(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> adjacency(n);
  for (NodeId v = 0; v < n; ++v) {
    auto row = g.neighbors(v);
    adjacency[v].assign(row.begin(), row.end());
  }

  std::vector<CandidateSubgraph> out;
  std::vector<char> in_set(n, 0);
  std::vector<char> visited(n, 0);
  for (std::size_t iteration = 0;; ++iteration) {
    std::vector<std::uint32_t> core = core_numbers(adjacency);
    std::uint32_t k_max = 0;
    for (std::uint32_t c : core) k_max = std::max(k_max, c);
    if (k_max <= 1) break;

    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v) {
      in_set[v] = core[v] == k_max;
      if (in_set[v]) members.push_back(v);
    }

    std::fill(visited.begin(), visited.end(), 0);
    std::vector<NodeId> stack;
    for (NodeId s : members) {
      if (visited[s]) continue;
      std::vector<NodeId> comp;
      visited[s] = 1;
      stack.push_back(s);
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (NodeId w : adjacency[v]) {
          if (in_set[w] && !visited[w]) {
            visited[w] = 1;
            stack.push_back(w);
          }
        }
      }
      if (comp.size() >= kMinCandidateSize) {
        std::sort(comp.begin(), comp.end());
        out.push_back({std::move(comp), Method::Kcbc, iteration});
      }
    }

    for (NodeId v : members) {
      auto& row = adjacency[v];
      row.erase(std::remove_if(row.begin(), row.end(), [&](NodeId w) { return in_set[w] != 0; }), row.end());
    }
  }
  return out;
}

std::size_t edge_cut(const Graph& g, const Partition& p) {
  std::size_t cut = 0;
  g.for_each_edge([&](NodeId u, NodeId v) { cut += p.assignment[u] != p.assignment[v]; });
  return cut;
}

std::vector<CandidateSubgraph> partition_to_candidates(const Partition& p, const Graph& g, Method source) {
  if (p.assignment.size() != g.node_count()) throw DomainError("partition does not cover the graph");
  std::vector<CandidateSubgraph> out;
  for (auto& nodes : p.communities())
    if (nodes.size() >= kMinCandidateSize) out.push_back({std::move(nodes), source, 0});
  return out;
}

Partition ingest_partition_file(std::string_view text, const Graph& g) {
  std::vector<std::uint32_t> labels;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (line.empty() || ec != std::errc() || ptr != line.data() + line.size())
      throw ParseError("malformed community id '" + std::string(line) + "'", line_no);
    labels.push_back(value);
  }
  if (labels.size() != g.node_count())
    throw FormatError("partition file has " + std::to_string(labels.size()) + " lines, graph has " +
                      std::to_string(g.node_count()) + " nodes");
  return densify(std::move(labels));
}

Partition ingest_partition_file(std::istream& in, const Graph& g) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return ingest_partition_file(std::string_view(text), g);
}

std::vector<CandidateSubgraph> decompose(const Graph& g, const DecomposerConfig& cfg) {
  cfg.validate();
  if (g.empty()) return {};
  switch (cfg.method) {
    case Method::SlashBurn: return slashburn_decompose(g, cfg);
    case Method::Kcbc: return kcbc_decompose(g);
    case Method::Louvain: return partition_to_candidates(louvain_cluster(g, cfg), g, cfg.method);
    case Method::Spectral: return partition_to_candidates(spectral_cluster(g, cfg), g, cfg.method);
    case Method::Multilevel: return partition_to_candidates(multilevel_partition(g, cfg), g, cfg.method);
  }
  return {};
}

}  // namespace mdlsum
