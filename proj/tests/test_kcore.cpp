#include "doctest.h"
#include "mdlsum/kcore.hpp"
#include "support.hpp"

using namespace mdlsum;

TEST_SUITE("kcore") {
  TEST_CASE("clique and star") {
    for (auto c : core_numbers(testing::clique_graph(5))) CHECK(c == 4);
    for (auto c : core_numbers(testing::star_graph(10))) CHECK(c == 1);
    CHECK(core_numbers(Graph{}).empty());
  }

  TEST_CASE("matches the peeling oracle on 100 random graphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.below(50);
      const double p = 0.05 + 0.4 * rng.uniform();
      Graph g = testing::random_graph(n, p, rng);
      const auto expected = testing::brute_core_numbers(g);
      CHECK(core_numbers(g) == expected);
      CHECK(core_numbers_parallel(g) == expected);
    }
  }

  TEST_CASE("adjacency-list overload agrees") {
    Rng rng(8);
    Graph g = testing::random_graph(45, 0.2, rng);
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
      auto nb = g.neighbors(v);
      adj[v].assign(nb.rbegin(), nb.rend());  // unsorted rows are allowed
    }
    CHECK(core_numbers(adj) == testing::brute_core_numbers(g));
  }

  TEST_CASE("adding an edge never lowers a core number") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
      Graph g = testing::random_graph(30, 0.15, rng);
      auto edges = g.edges();
      const auto before = core_numbers(g);
      NodeId u = static_cast<NodeId>(rng.below(30)), v = static_cast<NodeId>(rng.below(30));
      if (u == v) continue;
      edges.emplace_back(u, v);
      const auto after = core_numbers(Graph::from_edges(30, edges));
      for (std::size_t i = 0; i < 30; ++i) CHECK(after[i] >= before[i]);
    }
  }

  TEST_CASE("parallel kernel on a larger graph") {
    Rng rng(1);
    Graph g = testing::random_graph(1500, 0.01, rng);
    CHECK(core_numbers_parallel(g) == core_numbers(g));
  }
}
