#pragma once

#include <cstdint>
#include <vector>

#include "mdlsum/graph.hpp"

namespace mdlsum {

/// Core number of every node by bucketed min-degree peeling, O(n + m).
/// This is the serial reference the parallel kernel is tested against.
std::vector<std::uint32_t> core_numbers(const Graph& g);

/// Same result computed by synchronous h-index iteration: every node's
/// estimate starts at its degree and is replaced by the h-index of its
/// neighbors' estimates until no estimate changes. Each sweep is an OpenMP
/// parallel loop.
std::vector<std::uint32_t> core_numbers_parallel(const Graph& g);

/// Core numbers over a mutable adjacency structure (used by KCBC while it
/// deletes edges). Rows need not be sorted.
std::vector<std::uint32_t> core_numbers(const std::vector<std::vector<NodeId>>& adjacency);

}  // namespace mdlsum
