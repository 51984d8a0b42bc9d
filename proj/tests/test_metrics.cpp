#include "doctest.h"
#include "mdlsum/errors.hpp"
#include "mdlsum/metrics.hpp"
#include "mdlsum/pipeline.hpp"
#include "support.hpp"

using namespace mdlsum;
using doctest::Approx;
using testing::range;

TEST_SUITE("metrics") {
  TEST_CASE("compression rate") {
    CostBreakdown base{10, 90, 0, 100};
    CHECK(compression_rate(base, base) == 100.0);
    CHECK(compression_rate({0, 0, 0, 78}, base) == Approx(78.0));
    CHECK(compression_rate({0, 0, 0, 104}, base) == Approx(104.0));
    CHECK_THROWS_AS(compression_rate(base, CostBreakdown{}), DomainError);
    Graph g = testing::barbell_graph(5);
    CHECK(compression_rate(total_cost(g, {}, true), empty_model_cost(g)) == 100.0);
  }

  TEST_CASE("coverage") {
    Graph k6 = testing::clique_graph(6);
    std::vector<Structure> all{Structure::clique(range(0, 6))};
    Coverage full = coverage(k6, all);
    CHECK(full.nodes == 1.0);
    CHECK(full.edges == 1.0);
    Coverage none = coverage(k6, {});
    CHECK(none.nodes == 0.0);
    CHECK(none.edges == 0.0);

    std::vector<Edge> e;
    testing::add_clique(e, range(0, 10));
    e.insert(e.end(), {{10, 11}, {12, 13}, {14, 15}, {16, 17}, {18, 19}});
    Graph g = Graph::from_edges(20, e);
    std::vector<Structure> one{Structure::clique(range(0, 10))};
    Coverage c = coverage(g, one);
    CHECK(c.nodes == Approx(0.5));
    CHECK(c.edges == Approx(45.0 / 50.0));

    // A star whose spokes are not all neighbors only covers real edges.
    std::vector<Structure> st{Structure::star(10, std::vector<NodeId>{11, 12})};
    CHECK(coverage(g, st).edges == Approx(1.0 / 50.0));
  }

  TEST_CASE("coverage never drops when structures are added") {
    Rng rng(19);
    Graph g = testing::random_graph(40, 0.15, rng);
    std::vector<Structure> model;
    Coverage prev = coverage(g, model);
    for (int i = 0; i < 20; ++i) {
      std::vector<NodeId> pool = range(0, 40);
      rng.shuffle(std::span<NodeId>(pool));
      pool.resize(3 + rng.below(6));
      model.push_back(i % 2 ? Structure::chain(pool) : Structure::clique(pool));
      Coverage cur = coverage(g, model);
      CHECK(cur.nodes >= prev.nodes);
      CHECK(cur.edges >= prev.edges);
      prev = cur;
    }
  }

  TEST_CASE("histogram order is fc st bc ch") {
    std::vector<Structure> m{Structure::chain({0, 1, 2}), Structure::clique({3, 4, 5}), Structure::chain({6, 7, 8})};
    CHECK(type_histogram(m) == TypeHistogram{1, 0, 0, 2});
  }

  TEST_CASE("reports round-trip through json and csv") {
    Rng rng(2);
    Graph g = testing::random_graph(120, 0.06, rng);
    std::vector<SummaryReport> rows;
    for (Method m : {Method::SlashBurn, Method::Kcbc}) {
      DecomposerConfig cfg;
      cfg.method = m;
      LabeledRun run = decompose_and_label(g, cfg, true);
      SummaryResult r = assemble_summary(g, run, Heuristic::GreedyNForget, true, true);
      rows.push_back(r.report);
      const SummaryReport expected = r.report.rounded();
      CHECK(parse_report_json(emit_report(r.report, ReportFormat::Json)) == expected);
      auto csv = parse_report_csv(emit_report(r.report, ReportFormat::Csv));
      REQUIRE(csv.size() == 1);
      CHECK(csv[0] == expected);
    }
    rows[1].error = "boom, with a comma and \"quotes\"";
    const std::string csv = emit_csv(rows);
    CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    auto back = parse_report_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[1].error == rows[1].error);
    CHECK(back[0] == rows[0].rounded());
  }

  TEST_CASE("json keys") {
    SummaryReport r;
    r.type_histogram_post = {4, 3, 2, 1};
    const std::string json = emit_report(r, ReportFormat::Json);
    CHECK(json.find("\"type_histogram_post\"") != std::string::npos);
    CHECK(json.find("\"compression_rate\"") != std::string::npos);
    CHECK(parse_report_json(json).type_histogram_post == TypeHistogram{4, 3, 2, 1});
    CHECK_THROWS_AS(parse_report_json("{\"method\": 3}"), FormatError);
  }

  TEST_CASE("pipeline report invariants") {
    Rng rng(23);
    Graph g = testing::random_graph(200, 0.05, rng);
    for (Method m : kAllMethods) {
      DecomposerConfig cfg;
      cfg.method = m;
      cfg.cluster_count = 5;
      LabeledRun run = decompose_and_label(g, cfg, true);
      for (Heuristic h : {Heuristic::Top10, Heuristic::GreedyNForget}) {
        SummaryReport r = assemble_summary(g, run, h, true, true).report;
        CHECK(r.node_coverage_post <= r.node_coverage_pre);
        CHECK(r.edge_coverage_post <= r.edge_coverage_pre);
        for (std::size_t k = 0; k < 4; ++k) CHECK(r.type_histogram_post[k] <= r.type_histogram_pre[k]);
        CHECK(r.runtime_total_s() == Approx(r.runtime_decompose_s + r.runtime_label_s + r.runtime_assemble_s));
        CHECK(r.runtime_decompose_s >= 0);
        CHECK(r.total_bits == Approx(r.model_bits + r.error_bits + r.overlap_bits));
        if (h == Heuristic::GreedyNForget) CHECK(r.compression_rate <= 100.0 + 1e-9);
      }
      SummaryReport quiet = assemble_summary(g, decompose_and_label(g, cfg, false), Heuristic::Top10, false, false).report;
      CHECK(quiet.runtime_total_s() == 0.0);
    }
  }
}
