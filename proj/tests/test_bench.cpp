#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "mislab/bench.hpp"
#include "mislab/errors.hpp"
#include "mislab/graph_io.hpp"
#include "mislab/report.hpp"

using namespace mislab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

BenchRecord record(const std::string& solver, std::size_t size, std::size_t graph = 0,
                   bool ls = false, std::size_t n = 100, double d = 10) {
  BenchRecord r;
  r.family = "er";
  r.n = n;
  r.d = d;
  GraphParams p;
  p.n = n;
  p.d = d;
  r.cell = p.cell_id();
  r.graph_index = graph;
  r.solver = solver;
  r.solver_id = solver;
  r.size = size;
  r.ls_applied = ls;
  return r;
}

DatasetManifest small_manifest() {
  return DatasetManifest::from_json(json::parse(R"({
    "cells": [{"family": "er", "n": 60, "d": 6, "count": 3, "seed": 1},
              {"family": "ba", "n": 60, "m": 3, "count": 2, "seed": 2}],
    "configs": [{"solver": "deg-greedy", "k": 5, "seed": 3, "local_search": true, "serialize_reps": 20},
                {"solver": "anneal", "k": 1, "seed": 4, "params": {"sweeps": 50, "restarts": 1}}]
  })"));
}

}  // namespace

TEST_CASE("theoretical ratio") {
  CHECK(theoretical_ratio(1000, std::numbers::e, 368) == doctest::Approx(368.0 / (1000.0 / std::numbers::e)));
  CHECK(theoretical_ratio(1000, std::numbers::e, 368) == doctest::Approx(1.0003).epsilon(1e-4));
  const double exact = 1000 * std::log(10.0) / 10.0;
  CHECK(theoretical_ratio(1000, 10, exact) == doctest::Approx(1.0));
  CHECK_THROWS_AS(theoretical_ratio(1000, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(theoretical_ratio(0, 3.0, 10), ParameterError);
}

TEST_CASE("manifest parsing and validation") {
  const auto m = small_manifest();
  REQUIRE(m.cells.size() == 2);
  CHECK(m.cells[0].id() == "er_n60_d6");
  CHECK(m.cells[1].id() == "ba_n60_m3");
  CHECK(m.configs[0].k == 5);
  CHECK(m.configs[1].k == 1);
  CHECK(DatasetManifest::from_json(m.to_json()).to_json() == m.to_json());

  const auto defaults = DatasetManifest::from_json(json::parse(
      R"({"cells": [{"family": "er", "n": 50, "d": 4}], "configs": [{"solver": "ran-greedy"}]})"));
  CHECK(defaults.cells[0].count == 8);
  CHECK(defaults.configs[0].k == 20);

  CHECK_THROWS_AS(DatasetManifest::from_json(json::parse(
                      R"({"cells": [{"family": "er", "n": 10, "d": 10}], "configs": []})")),
                  ParameterError);
  CHECK_THROWS_AS(DatasetManifest::from_json(json::parse(
                      R"({"cells": [], "configs": [{"solver": "deg-greedy", "k": 0}]})")),
                  ParameterError);
  CHECK_THROWS_AS(DatasetManifest::from_json(json::parse(
                      R"({"cells": [], "configs": [{"solver": "nope"}]})")),
                  ParameterError);
  CHECK_THROWS_AS(DatasetManifest::from_json(json::parse(R"({"cells": []})")), ParseError);
}

TEST_CASE("graph i of a cell uses child seed i") {
  const auto m = small_manifest();
  const auto p = m.cells[0].graph_params(2);
  CHECK(p.seed == child_seed(1, 2));
  const auto graphs = materialize_graphs(m);
  CHECK(graphs[0][2] == generate_er(60, 6, child_seed(1, 2)));
  CHECK(graphs[1][1] == generate_ba(60, 3, child_seed(2, 1)));
}

TEST_CASE("single job produces one record") {
  const auto m = DatasetManifest::from_json(json::parse(R"({
    "cells": [{"family": "er", "n": 40, "d": 4, "count": 1, "seed": 5}],
    "configs": [{"solver": "deg-greedy", "k": 3, "seed": 6}]})"));
  const auto records = run_benchmark(m);
  REQUIRE(records.size() == 1);
  const auto& r = records[0];
  CHECK(r.status == "ok");
  CHECK(r.seed == child_seed(child_seed(6, 0), 0));
  const Graph g = generate_er(40, 4, child_seed(5, 0));
  CHECK(r.size == best_of_k(g, SolverSpec::named("deg-greedy"), 3, r.seed).solution.size());
  CHECK_FALSE(r.thirds);
  CHECK_FALSE(r.ls_applied);
}

TEST_CASE("benchmark is deterministic across worker counts") {
  const auto m = small_manifest();
  const auto one = records_to_jsonl(run_benchmark(m, {1, ""}));
  const auto four = records_to_jsonl(run_benchmark(m, {4, ""}));
  CHECK(one == four);
  const auto records = records_from_jsonl(one);
  CHECK(records.size() == 5 * 3);  // deg-greedy base + ls, anneal base
  for (const auto& r : records) {
    if (r.ls_applied) {
      REQUIRE(r.ls_improvement);
      CHECK(r.thirds);
    }
  }
  CHECK(records_to_jsonl(records) == one);
}

TEST_CASE("records replay from solver and seed") {
  const auto m = small_manifest();
  const auto graphs = materialize_graphs(m);
  for (const auto& r : run_benchmark(m)) {
    if (r.ls_applied || r.solver_id != "deg-greedy") continue;
    const std::size_t cell = r.family == "er" ? 0 : 1;
    const auto again = best_of_k(graphs[cell][r.graph_index], SolverSpec::named("deg-greedy"), 5, r.seed);
    CHECK(again.solution.size() == r.size);
  }
}

TEST_CASE("graph cache round trip") {
  TempDir dir("mislab_test_cache");
  const auto m = small_manifest();
  const auto fresh = materialize_graphs(m, {1, dir.path.string()});
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) files += entry.path().extension() == ".el";
  CHECK(files == 5);
  const auto cached = materialize_graphs(m, {1, dir.path.string()});
  CHECK(cached == fresh);
  CHECK(records_to_jsonl(run_benchmark(m, {2, dir.path.string()})) == records_to_jsonl(run_benchmark(m)));
}

TEST_CASE("solver failures are recorded and the run continues") {
  TempDir dir("mislab_test_external");
  write_text_file((dir.path / "er_n30_d3_0.sol").string(), "0\n");
  const json j = {
      {"cells", {{{"family", "er"}, {"n", 30}, {"d", 3}, {"count", 2}, {"seed", 9}}}},
      {"configs",
       {{{"solver", "external"}, {"k", 1}, {"label", "ext"},
         {"params", {{"pattern", (dir.path / "{cell}_{graph}.sol").string()}}}}}}};
  const auto records = run_benchmark(DatasetManifest::from_json(j));
  REQUIRE(records.size() == 2);
  CHECK(records[0].status == "ok");
  CHECK(records[0].size == 1);
  CHECK(records[0].solver == "ext");
  CHECK(records[1].status == "failed");
  CHECK_FALSE(records[1].error.empty());
}

TEST_CASE("ingest solution files") {
  const Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const auto ok = ingest_solution_file(p3, "0\n2\n");
  CHECK(ok.record.size == 2);
  CHECK(ok.solution.size() == 2);
  try {
    ingest_solution_file(p3, "0\n1\n");
    FAIL("expected rejection");
  } catch (const InvalidSolution& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_solution_file(p3, "0\nzz\n"), ParseError);
  CHECK_THROWS_AS(ingest_solution_file(p3, "7\n"), InvalidSolution);
  const auto t = thirds_breakdown(best_serialization(p3, ok.solution, 10, 1));
  CHECK(t.overall == 100.0);
}

TEST_CASE("timing sidecar") {
  auto records = std::vector<BenchRecord>{record("a", 3, 0), record("a", 4, 1, true)};
  records[0].wall_time = 1.5;
  records[1].wall_time = 2.5;
  const auto timing = timings_to_jsonl(records);
  const auto jsonl = records_to_jsonl(records);
  CHECK(jsonl.find("wall_time") == std::string::npos);
  auto loaded = records_from_jsonl(jsonl);
  CHECK(loaded[0].wall_time == 0.0);
  apply_timings(loaded, timing);
  CHECK(loaded[0].wall_time == 1.5);
  CHECK(loaded[1].wall_time == 2.5);
  CHECK_THROWS_AS(records_from_jsonl("{\"cell\": 1}\n"), ParseError);
}

TEST_CASE("aggregation") {
  auto one = aggregate_table({record("deg-greedy", 29)});
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].mean_size == 29.0);
  CHECK(one.rows[0].std_size == 0.0);
  CHECK(one.rows[0].count == 1);
  REQUIRE(one.rows[0].mean_ratio);
  CHECK(*one.rows[0].mean_ratio == doctest::Approx(29.0 / (100 * std::log(10.0) / 10)));

  std::vector<BenchRecord> eight;
  const std::size_t sizes[] = {29, 30, 28, 29, 31, 29, 30, 28};
  for (std::size_t i = 0; i < 8; ++i) eight.push_back(record("deg-greedy", sizes[i], i));
  auto t = aggregate_table(eight);
  CHECK(t.rows[0].mean_size == doctest::Approx(234.0 / 8));
  double sq = 0;
  for (auto s : sizes) sq += (s - 29.25) * (s - 29.25);
  CHECK(t.rows[0].std_size == doctest::Approx(std::sqrt(sq / 7)));

  // Record order does not matter.
  std::reverse(eight.begin(), eight.end());
  CHECK(aggregate_table(eight) == t);

  // Failed records are counted, not averaged.
  eight.push_back(record("deg-greedy", 0, 8));
  eight.back().status = "failed";
  t = aggregate_table(eight);
  CHECK(t.rows[0].count == 9);
  CHECK(t.rows[0].failed == 1);
  CHECK(t.rows[0].mean_size == doctest::Approx(234.0 / 8));
}

TEST_CASE("highlighting within one percent of the best") {
  std::vector<BenchRecord> rs;
  for (std::size_t i = 0; i < 5; ++i) {
    rs.push_back(record("a", 30, i));
    rs.push_back(record("b", i == 0 ? 31 : 30, i));  // mean 30.2
    rs.push_back(record("c", 29, i));
  }
  const auto t = aggregate_table(rs);
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) CHECK(row.highlighted == (row.solver != "c"));
}

TEST_CASE("ls delta report") {
  std::vector<BenchRecord> base, ls;
  for (std::size_t i = 0; i < 4; ++i) {
    base.push_back(record("deg-greedy", 150 + i, i));
    ls.push_back(record("deg-greedy", 152 + i, i, true));
  }
  const auto t = ls_delta_report(base, ls);
  REQUIRE(t.rows.size() == 1);
  CHECK(*t.rows[0].ls_delta == doctest::Approx(2.0));
  CHECK(format_final_delta(t.rows[0].mean_size, *t.rows[0].ls_delta) == "153.50 (2.00)");
  CHECK(format_final_delta(456.125, 4.24) == "456.12 (4.24)");

  const auto same = ls_delta_report(base, base);
  CHECK(*same.rows[0].ls_delta == 0.0);

  ls.pop_back();
  try {
    ls_delta_report(base, ls);
    FAIL("expected orphans");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("base:er_n100_d10|3|deg-greedy") != std::string::npos);
  }
}

TEST_CASE("report formats") {
  std::vector<BenchRecord> rs;
  for (double d : {10.0, 30.0}) {
    for (std::size_t n : {100, 300}) {
      auto r = record("deg-greedy", n / 3, 0, false, n, d);
      r.thirds = ThirdsSummary{100, 90, 80, 90};
      rs.push_back(r);
      rs.push_back(record("pcqo", n / 3 - 1, 0, false, n, d));
    }
  }
  const auto t = aggregate_table(rs);
  CHECK(ReportTable::from_json(json::parse(t.to_json().dump())) == t);

  const auto heat = ratio_heatmap_csv(t, "deg-greedy");
  CHECK(heat.substr(0, heat.find('\n')) == "n,d=10,d=30");
  CHECK(std::count(heat.begin(), heat.end(), '\n') == 3);

  const auto thirds = thirds_csv(t, "deg-greedy");
  CHECK(thirds.find("100.00") != std::string::npos);

  const auto md = table_markdown(t);
  CHECK(md.find("Classical: deg-greedy") != std::string::npos);
  CHECK(md.find("Classical: deg-greedy") < md.find("Sampling/gradient: pcqo"));
  CHECK(md.find("**33.00**") != std::string::npos);

  const auto csv = table_csv(t);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8);

  CHECK(parse_report_format("md") == ReportFormat::Markdown);
  CHECK_THROWS_AS(parse_report_format("xml"), ParameterError);
}

TEST_CASE("emit reports writes every artifact") {
  TempDir dir("mislab_test_reports");
  std::vector<BenchRecord> rs = {record("deg-greedy", 30), record("ran-greedy", 25)};
  rs[0].thirds = ThirdsSummary{100, 100, 100, 100};
  const auto paths = emit_reports(aggregate_table(rs), ReportFormat::Json, dir.path.string());
  CHECK(fs::exists(dir.path / "table.json"));
  CHECK(fs::exists(dir.path / "heatmap_deg-greedy.csv"));
  CHECK(fs::exists(dir.path / "heatmap_ran-greedy.csv"));
  CHECK(fs::exists(dir.path / "thirds_deg-greedy.csv"));
  CHECK_FALSE(fs::exists(dir.path / "thirds_ran-greedy.csv"));
  CHECK(paths.size() == 4);
  const auto back = ReportTable::from_json(json::parse(read_text_file((dir.path / "table.json").string())));
  CHECK(back == aggregate_table(rs));

  write_text_file((dir.path / "blocker").string(), "x");
  CHECK_THROWS(emit_reports(aggregate_table(rs), ReportFormat::Csv, (dir.path / "blocker" / "sub").string()));
}
