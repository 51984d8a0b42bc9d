#include <set>

#include "doctest.h"
#include "mdlsum/assembly.hpp"
#include "mdlsum/errors.hpp"
#include "mdlsum/labeling.hpp"
#include "mdlsum/mdl.hpp"
#include "support.hpp"

using namespace mdlsum;
using doctest::Approx;
using testing::range;

namespace {

CandidateSubgraph whole(const Graph& g) { return {range(0, static_cast<NodeId>(g.node_count())), Method::Kcbc, 0}; }

// Disagreeing pairs counted directly from the implied-edge list.
std::uint64_t brute_errors(const Structure& s, const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> implied;
  s.for_each_implied_edge([&](NodeId u, NodeId v) { implied.insert({std::min(u, v), std::max(u, v)}); });
  std::uint64_t errs = 0;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v = u + 1; v < g.node_count(); ++v) errs += g.has_edge(u, v) != (implied.count({u, v}) == 1);
  return errs;
}

}  // namespace

TEST_SUITE("labeling") {
  TEST_CASE("vocabulary graphs label as themselves with zero error") {
    auto expect = [](const Graph& g, StructureKind kind) {
      LabeledCandidate lc = label_subgraph(g, whole(g));
      CHECK(lc.structure.kind() == kind);
      CHECK(local_error_count(lc.structure, g) == 0);
      CHECK(lc.local_error_bits == Approx(universal_int_cost(1)));
    };
    for (std::size_t n = 3; n <= 12; ++n) {
      CAPTURE(n);
      expect(testing::clique_graph(n), StructureKind::FullClique);
      expect(testing::star_graph(n - 1), StructureKind::Star);
      if (n >= 4) expect(testing::path_graph(n), StructureKind::Chain);
      for (std::size_t a = 2; a <= n / 2; ++a) {
        if (n - a < 2) continue;
        CAPTURE(a);
        expect(testing::biclique_graph(a, n - a), StructureKind::BipartiteCore);
      }
    }
  }

  TEST_CASE("worked examples") {
    LabeledCandidate k5 = label_subgraph(testing::clique_graph(5), whole(testing::clique_graph(5)));
    CHECK(k5.structure.kind() == StructureKind::FullClique);
    CHECK(k5.local_error_bits == Approx(1.5185673664));

    Graph star = testing::star_graph(7);
    LabeledCandidate st = label_subgraph(star, whole(star));
    REQUIRE(st.structure.kind() == StructureKind::Star);
    CHECK(st.structure.hub() == 0);

    Graph path = testing::path_graph(6);
    LabeledCandidate ch = label_subgraph(path, whole(path));
    REQUIRE(ch.structure.kind() == StructureKind::Chain);
    auto order = ch.structure.nodes();
    CHECK(((order.front() == 0 && order.back() == 5) || (order.front() == 5 && order.back() == 0)));
  }

  TEST_CASE("result is the tie-ordered argmin of the four costs") {
    Rng rng(9);
    for (int trial = 0; trial < 60; ++trial) {
      Graph g = testing::random_graph(4 + rng.below(9), 0.2 + 0.6 * rng.uniform(), rng);
      auto inst = vocabulary_instances(g);
      TypeCosts costs = type_costs(g, inst, g.node_count());
      std::size_t best = 0;
      for (std::size_t i = 1; i < 4; ++i)
        if (costs.total(i) < costs.total(best) - 1e-9) best = i;
      LabeledCandidate lc = label_subgraph(g, whole(g));
      CHECK(lc.structure == inst[best]);
      CHECK(lc.structure_bits + lc.local_error_bits <= costs.total(0) + 1e-9);
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(local_error_count(inst[i], g) == brute_errors(inst[i], g));
        CHECK(costs.local_error_bits[i] >= 0);
      }
    }
  }

  TEST_CASE("star roles") {
    CHECK(choose_star_role(testing::star_graph(9)).hub == 0);
    CHECK(choose_star_role(testing::clique_graph(3)).hub == 0);
    StarRoles p = choose_star_role(testing::path_graph(3));
    CHECK(p.hub == 1);
    CHECK(p.spokes == std::vector<NodeId>{0, 2});
  }

  TEST_CASE("bipartition") {
    auto [a, b] = choose_bipartition(testing::biclique_graph(3, 4));
    CHECK(a == range(0, 3));
    CHECK(b == range(3, 7));

    auto [c0, c1] = choose_bipartition(testing::cycle_graph(6));
    std::vector<NodeId> evens{0, 2, 4}, odds{1, 3, 5};
    CHECK(((c0 == evens && c1 == odds) || (c0 == odds && c1 == evens)));
    // Alternating sides imply K_{3,3}: nine pairs, six of them present.
    CHECK(local_error_count(Structure::bipartite_core(c0, c1), testing::cycle_graph(6)) == 3);

    // K4: any split's error is intra-side present pairs plus absent cross pairs
    // (always 0 for a clique); greedy result must not be the worst split.
    Graph k4 = testing::clique_graph(4);
    auto [s0, s1] = choose_bipartition(k4);
    const std::uint64_t got = local_error_count(Structure::bipartite_core(s0, s1), k4);
    const std::uint64_t intra = s0.size() * (s0.size() - 1) / 2 + s1.size() * (s1.size() - 1) / 2;
    CHECK(got == intra);
    std::uint64_t worst = 0;
    for (std::uint32_t mask = 1; mask < 15; ++mask) {
      const auto ones = static_cast<std::uint64_t>(std::popcount(mask));
      if (ones == 4 || ones == 0) continue;
      worst = std::max(worst, ones * (ones - 1) / 2 + (4 - ones) * (3 - ones) / 2);
    }
    CHECK(got <= worst);
  }

  TEST_CASE("chain order") {
    auto order = choose_chain_order(testing::path_graph(7));
    CHECK((order == range(0, 7) || order == std::vector<NodeId>{6, 5, 4, 3, 2, 1, 0}));

    Graph c6 = testing::cycle_graph(6);
    auto ring = choose_chain_order(c6);
    CHECK(std::set<NodeId>(ring.begin(), ring.end()).size() == 6);
    CHECK(local_error_count(Structure::chain(ring), c6) == 1);

    Graph star = testing::star_graph(4);
    auto s = choose_chain_order(star);
    CHECK(s.size() == 5);
    CHECK(local_error_count(Structure::chain(s), star) == brute_errors(Structure::chain(s), star));
  }

  TEST_CASE("local error cost") {
    Graph k4 = testing::clique_graph(4);
    CHECK(local_error_cost(Structure::clique(range(0, 4)), k4) == Approx(1.5185673664));
    Graph k4_minus = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(local_error_cost(Structure::clique(range(0, 4)), k4_minus) == Approx(5.1035298671));
    CHECK(local_error_cost(Structure::star(0, range(1, 6)), testing::star_graph(5)) == Approx(1.5185673664));
  }

  TEST_CASE("benefit") {
    Graph g = testing::three_clique_graph();
    LabeledCandidate c1 = label_subgraph(g, {range(0, 20), Method::Kcbc, 0});
    CHECK(c1.structure.kind() == StructureKind::FullClique);
    CHECK(c1.benefit_bits > 0);
    CHECK(structure_benefit(g, c1) == Approx(c1.benefit_bits));

    // Three nodes, one edge, explained as a chain.
    Graph sparse = Graph::from_edges(40, std::vector<Edge>{{0, 1}});
    Structure ch = Structure::chain({0, 1, 2});
    LabeledCandidate lc{ch};
    Subgraph sub = induced_subgraph(sparse, ch.nodes());
    lc.structure_bits = structure_cost(ch, 40);
    lc.local_error_bits = local_error_cost(Structure::chain({0, 1, 2}), sub.graph);
    CHECK(structure_benefit(sparse, lc) < 0);

    Graph empty = Graph::from_edges(10, std::vector<Edge>{});
    LabeledCandidate none = label_subgraph(empty, {range(0, 4), Method::Kcbc, 0});
    CHECK(none.benefit_bits <= 0);
  }

  TEST_CASE("parallel labeling equals serial") {
    Rng rng(4);
    Graph g = testing::random_graph(300, 0.05, rng);
    std::vector<CandidateSubgraph> cands;
    for (int i = 0; i < 120; ++i) {
      std::vector<NodeId> pool = range(0, 300);
      rng.shuffle(std::span<NodeId>(pool));
      pool.resize(3 + rng.below(30));
      std::sort(pool.begin(), pool.end());
      cands.push_back({pool, Method::SlashBurn, 0});
    }
    auto par = label_candidates(g, cands);
    auto ser = label_candidates_serial(g, cands);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].structure == ser[i].structure);
      CHECK(par[i].benefit_bits == ser[i].benefit_bits);
      CHECK(par[i].candidate_index == i);
    }
    cands.push_back({{0, 1}, Method::SlashBurn, 0});
    CHECK_THROWS_AS(label_candidates(g, cands), DomainError);
  }
}
