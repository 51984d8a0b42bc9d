#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mdlsum/graph.hpp"

namespace mdlsum {

enum class Method { SlashBurn, Kcbc, Louvain, Spectral, Multilevel };

inline constexpr Method kAllMethods[] = {Method::SlashBurn, Method::Kcbc, Method::Louvain,
                                         Method::Spectral, Method::Multilevel};

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

// Clusters smaller than this are dropped before labeling.
inline constexpr std::size_t kMinCandidateSize = 3;

struct CandidateSubgraph {
  std::vector<NodeId> nodes;  // sorted internal ids of the host graph
  Method source_method = Method::SlashBurn;
  std::size_t source_iteration = 0;
};

}  // namespace mdlsum
