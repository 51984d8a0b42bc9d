#include "mdlsum/graph.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

#include "mdlsum/errors.hpp"

namespace mdlsum {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::vector<ExternalId> external_ids) {
  if (external_ids.empty()) {
    external_ids.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) external_ids[i] = i;
  }
  if (external_ids.size() != node_count)
    throw DomainError("external id map size does not match node count");

  Graph g;
  g.external_ = std::move(external_ids);
  g.lookup_.reserve(node_count);
  for (NodeId v = 0; v < node_count; ++v) {
    if (!g.lookup_.emplace(g.external_[v], v).second)
      throw DomainError("duplicate external id " + std::to_string(g.external_[v]));
  }

  std::vector<std::size_t> degree(node_count + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw DomainError("edge endpoint outside node range");
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }
  std::vector<std::size_t> offsets(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) offsets[v + 1] = offsets[v] + degree[v];
  std::vector<NodeId> adjacency(offsets[node_count]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adjacency[cursor[u]++] = v;
    adjacency[cursor[v]++] = u;
  }

  // Sort and dedup each row, compacting in place.
  g.offsets_.assign(node_count + 1, 0);
  std::size_t write = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) adjacency[write++] = *it;
    g.offsets_[v + 1] = write;
  }
  adjacency.resize(write);
  adjacency.shrink_to_fit();
  g.adjacency_ = std::move(adjacency);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::optional<NodeId> Graph::internal_id(ExternalId label) const {
  auto it = lookup_.find(label);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for_each_edge([&](NodeId u, NodeId v) { out.emplace_back(u, v); });
  return out;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

ExternalId parse_token(std::string_view token, std::size_t line) {
  ExternalId value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("malformed node id '" + std::string(token) + "'", line);
  return value;
}

}  // namespace

Graph load_edge_list(std::string_view text, const ParseOptions& options) {
  std::vector<ExternalId> external;
  std::unordered_map<ExternalId, NodeId> dense;
  std::vector<Edge> edges;

  auto intern = [&](ExternalId label) {
    auto [it, inserted] = dense.emplace(label, static_cast<NodeId>(external.size()));
    if (inserted) external.push_back(label);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#' || line[i] == '%') continue;

    std::string_view tokens[2];
    int found = 0;
    while (i < line.size()) {
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      if (found < 2) {
        tokens[found] = line.substr(i, j - i);
      } else if (!options.allow_extra_columns) {
        throw ParseError("expected exactly two tokens", line_no);
      }
      ++found;
      i = j;
      while (i < line.size() && is_space(line[i])) ++i;
    }
    if (found < 2) throw ParseError("expected two node ids", line_no);

    ExternalId a = parse_token(tokens[0], line_no);
    ExternalId b = parse_token(tokens[1], line_no);
    NodeId u = intern(a);
    NodeId v = intern(b);
    if (u != v) edges.emplace_back(u, v);
  }
  std::size_t n = external.size();
  return Graph::from_edges(n, edges, std::move(external));
}

Graph load_edge_list(std::istream& in, const ParseOptions& options) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_edge_list(std::string_view(text), options);
}

namespace {

std::string inflate_gzip(const std::string& compressed) {
  z_stream stream{};
  // 15 + 32: zlib window with automatic gzip header detection.
  if (inflateInit2(&stream, 15 + 32) != Z_OK) throw ParseError("cannot initialise gzip decoder", 0);
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  stream.avail_in = static_cast<uInt>(compressed.size());

  std::string out;
  char buffer[1 << 16];
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    stream.next_out = reinterpret_cast<Bytef*>(buffer);
    stream.avail_out = sizeof(buffer);
    status = inflate(&stream, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&stream);
      throw ParseError("corrupt gzip stream", 0);
    }
    out.append(buffer, sizeof(buffer) - stream.avail_out);
    if (status == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) {
      inflateEnd(&stream);
      throw ParseError("truncated gzip stream", 0);
    }
  }
  inflateEnd(&stream);
  return out;
}

}  // namespace

Graph load_edge_list_file(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
      static_cast<unsigned char>(bytes[1]) == 0x8b)
    bytes = inflate_gzip(bytes);
  return load_edge_list(std::string_view(bytes), options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  g.for_each_edge([&](NodeId u, NodeId v) { out << g.external_id(u) << ' ' << g.external_id(v) << '\n'; });
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::unordered_map<NodeId, NodeId> local;
  local.reserve(nodes.size());
  std::vector<ExternalId> external;
  external.reserve(nodes.size());
  Subgraph sub;
  sub.to_parent.reserve(nodes.size());
  for (NodeId v : nodes) {
    if (v >= g.node_count()) throw DomainError("node " + std::to_string(v) + " outside graph");
    if (!local.emplace(v, static_cast<NodeId>(sub.to_parent.size())).second)
      throw DomainError("node " + std::to_string(v) + " listed twice");
    sub.to_parent.push_back(v);
    external.push_back(g.external_id(v));
  }
  std::vector<Edge> edges;
  for (NodeId i = 0; i < sub.to_parent.size(); ++i) {
    for (NodeId w : g.neighbors(sub.to_parent[i])) {
      auto it = local.find(w);
      if (it != local.end() && i < it->second) edges.emplace_back(i, it->second);
    }
  }
  sub.graph = Graph::from_edges(sub.to_parent.size(), edges, std::move(external));
  return sub;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeId>> components;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

std::vector<NodeId> egonet(const Graph& g, NodeId v) {
  if (v >= g.node_count()) throw DomainError("node " + std::to_string(v) + " outside graph");
  auto row = g.neighbors(v);
  std::vector<NodeId> out(row.begin(), row.end());
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

}  // namespace mdlsum
