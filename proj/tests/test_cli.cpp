#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mdlsum/assembly.hpp"
#include "mdlsum/graph.hpp"
#include "mdlsum/metrics.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace mdlsum;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MDLSUM_CLI + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe)) r.out.append(buffer, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "mdlsum_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_graph(const std::string& name, const Graph& g) {
  const fs::path p = scratch() / name;
  std::ofstream out(p);
  write_edge_list(g, out);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t structure_lines(const std::string& model) {
  std::size_t count = 0;
  std::istringstream in(model);
  std::string line;
  while (std::getline(in, line)) count += !line.empty() && line[0] != '#';
  return count;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("stats") {
    const std::string tri = write_graph("tri.txt", testing::clique_graph(3));
    Run r = cli("stats \"" + tri + "\"");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("nodes=3 edges=3 max_core=2", 0) == 0);

    const fs::path empty = scratch() / "empty.txt";
    std::ofstream(empty).close();
    Run e = cli("stats \"" + empty.string() + "\"");
    CHECK(e.status == 0);
    CHECK(e.out.rfind("nodes=0 edges=0", 0) == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(cli("summarize /nonexistent/graph.txt").status == 2);
    const fs::path bad = scratch() / "bad.txt";
    std::ofstream(bad) << "1 2\n2 zebra\n";
    CHECK(cli("stats \"" + bad.string() + "\"").status == 2);
    const std::string tri = write_graph("tri.txt", testing::clique_graph(3));
    CHECK(cli("summarize \"" + tri + "\" --method nope").status == 3);
    CHECK(cli("summarize \"" + tri + "\" --resolution -1").status == 3);
    CHECK(cli("summarize \"" + tri + "\" --no-such-flag").status == 3);
    CHECK(cli("summarize \"" + tri + "\" --method multilevel --clusters 9").status == 3);
    CHECK(cli("summarize \"" + tri + "\" --method spectral --clusters 2").status == 0);
  }

  TEST_CASE("help lists flags with defaults") {
    Run r = cli("summarize --help");
    CHECK(r.status == 0);
    for (const char* flag : {"--method", "--heuristic", "--overlap-aware", "--resolution", "--clusters",
                             "--hub-fraction", "--seed", "--model-out", "--report-out", "--report-format"})
      CHECK(r.out.find(flag) != std::string::npos);
    CHECK(r.out.find("0.0001") != std::string::npos);
    CHECK(r.out.find("0.005") != std::string::npos);
  }

  TEST_CASE("louvain on a barbell writes two structures") {
    const std::string g = write_graph("barbell.txt", testing::barbell_graph(10));
    const fs::path model = scratch() / "barbell.model";
    const fs::path report = scratch() / "barbell.json";
    Run r = cli("summarize \"" + g + "\" --method louvain --resolution 1 --model-out \"" + model.string() +
                "\" --report-out \"" + report.string() + "\"");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("structures=2") != std::string::npos);
    CHECK(structure_lines(slurp(model)) == 2);
    SummaryReport rep = parse_report_json(slurp(report));
    CHECK(rep.structure_count == 2);
    CHECK(rep.method == Method::Louvain);
  }

  TEST_CASE("kcbc with overlap on the three-clique graph") {
    // The whole graph is one 19-core, so KCBC yields a single candidate.
    const std::string g = write_graph("three.txt", testing::three_clique_graph());
    const fs::path model = scratch() / "three.model";
    Run r = cli("summarize \"" + g + "\" --method kcbc --heuristic greedy --overlap-aware --model-out \"" +
                model.string() + "\"");
    REQUIRE(r.status == 0);
    CHECK(structure_lines(slurp(model)) <= 1);
  }

  TEST_CASE("compare subsets, csv report and determinism") {
    Rng rng(5);
    const std::string g = write_graph("random.txt", testing::random_graph(150, 0.05, rng));
    Run a = cli("compare \"" + g + "\" --methods kcbc,slashburn --seed 7");
    REQUIRE(a.status == 0);
    auto rows = parse_report_csv(a.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].method == Method::Kcbc);
    CHECK(rows[4].method == Method::SlashBurn);
    CHECK(rows[1].heuristic == Heuristic::Top10);
    CHECK(rows[1].overlap_aware);
    CHECK(rows[2].heuristic == Heuristic::GreedyNForget);
    for (const auto& row : rows) CHECK(row.error.empty());
    CHECK(cli("compare \"" + g + "\" --methods kcbc,slashburn --seed 7").out == a.out);

    Run all = cli("compare \"" + g + "\" --all-methods --clusters 3");
    CHECK(all.status == 0);
    CHECK(parse_report_csv(all.out).size() == 20);

    const fs::path csv = scratch() / "report.csv";
    CHECK(cli("summarize \"" + g + "\" --report-format csv --report-out \"" + csv.string() + "\"").status == 0);
    CHECK(parse_report_csv(slurp(csv)).size() == 1);
  }

  TEST_CASE("a failing method marks its rows and exits 1") {
    // Eight nodes cannot be split into 50 parts; the other method still runs.
    const std::string g = write_graph("small.txt", testing::cycle_graph(8));
    Run r = cli("compare \"" + g + "\" --methods multilevel,kcbc --clusters 50");
    CHECK(r.status == 1);
    auto rows = parse_report_csv(r.out);
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) CHECK_FALSE(rows[i].error.empty());
    for (std::size_t i = 4; i < 8; ++i) CHECK(rows[i].error.empty());
  }
}
