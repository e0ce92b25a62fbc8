#include <catch_amalgamated.hpp>

#include <sstream>

#include "mixedmi/bench.hpp"

using namespace mixedmi;

namespace {

BenchConfig smoke_config() {
  BenchConfig config;
  config.scenarios = {ScenarioId::DiscUnifCont};
  config.estimators = {EstimatorKind::Proposed};
  config.n_grid = {100};
  config.replications = 3;
  config.base_seed = 9;
  return config;
}

}  // namespace

TEST_CASE("single-cell aggregation contract") {
  BenchReport report = run_bench(smoke_config());
  REQUIRE(report.cells.size() == 1);
  const BenchCell& cell = report.cells[0];
  REQUIRE(cell.raw.size() == 3);
  CHECK(cell.error.empty());
  CHECK(cell.mean == Catch::Approx(mean(cell.raw)).margin(1e-14));
  CHECK(cell.min <= cell.q05);
  CHECK(cell.q05 <= cell.q25);
  CHECK(cell.q25 <= cell.q50);
  CHECK(cell.q50 <= cell.q75);
  CHECK(cell.q75 <= cell.q95);
  CHECK(cell.q95 <= cell.max);
  CHECK(cell.truth == truth(ScenarioId::DiscUnifCont).value);
}

TEST_CASE("reruns are byte-identical") {
  std::ostringstream a, b;
  export_report_json(run_bench(smoke_config()), a);
  export_report_json(run_bench(smoke_config()), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("estimators within a cell share replication datasets") {
  BenchConfig config = smoke_config();
  config.estimators = {EstimatorKind::Proposed, EstimatorKind::RAVK2};
  BenchReport report = run_bench(config);
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[0].seeds == report.cells[1].seeds);
}

TEST_CASE("csv export row counts") {
  std::ostringstream out;
  export_report_csv(run_bench(smoke_config()), out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  // header + replications raw rows + 1 summary row
  CHECK(lines == 1 + 3 + 1);

  BenchConfig empty = smoke_config();
  empty.scenarios.clear();
  std::ostringstream header_only;
  export_report_csv(run_bench(empty), header_only);
  CHECK(header_only.str().find('\n') == header_only.str().size() - 1);
}

TEST_CASE("json round trip is byte stable") {
  std::ostringstream out;
  export_report_json(run_bench(smoke_config()), out);
  const auto parsed = nlohmann::ordered_json::parse(out.str());
  CHECK(parsed.dump(2) + "\n" == out.str());
  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["cells"][0]["estimator"] == "proposed");
}

TEST_CASE("estimator failures are recorded, not thrown") {
  BenchConfig config = smoke_config();
  config.n_grid = {100};
  config.k = 200;  // k >= n: every replication fails
  BenchReport report = run_bench(config);
  REQUIRE(report.cells.size() == 1);
  CHECK(!report.cells[0].error.empty());
  CHECK(report.cells[0].raw.empty());
}

TEST_CASE("invalid configs are rejected") {
  BenchConfig config = smoke_config();
  config.replications = 0;
  CHECK_THROWS_AS(run_bench(config), std::invalid_argument);
  config = smoke_config();
  config.n_grid.clear();
  CHECK_THROWS_AS(run_bench(config), std::invalid_argument);
}
