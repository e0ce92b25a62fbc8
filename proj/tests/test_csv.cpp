#include <catch_amalgamated.hpp>

#include <sstream>

#include "mixedmi/csv.hpp"
#include "mixedmi/simulate.hpp"
#include "test_util.hpp"

using namespace mixedmi;

TEST_CASE("csv round trip preserves every cell") {
  mixedmi::Rng rng(3);
  Dataset ds = testutil::random_mixed(rng, 25);
  std::ostringstream out;
  write_csv(ds, out);
  std::istringstream in(out.str());
  Dataset back = read_csv(in);
  REQUIRE(back.n_rows() == ds.n_rows());
  REQUIRE(back.n_cols() == ds.n_cols());
  for (std::size_t j = 0; j < ds.n_cols(); ++j) {
    CHECK(back.column(j).kind == ds.column(j).kind);
    CHECK(back.column(j).name == ds.column(j).name);
  }
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      CHECK(back.cell(i, j) == ds.cell(i, j));
    }
  }
}

TEST_CASE("explicit kinds override the types comment") {
  std::istringstream in("# types: cont,cont\na,b\n1,2\n3,4\n");
  Dataset ds = read_csv(in, std::vector<ColumnKind>{
                                ColumnKind::DiscreteNumeric,
                                ColumnKind::Categorical});
  CHECK(ds.column(0).kind == ColumnKind::DiscreteNumeric);
  CHECK(ds.column(1).kind == ColumnKind::Categorical);
  CHECK(ds.cell(0, 1).sym == "2");
}

TEST_CASE("csv errors") {
  SECTION("missing kinds") {
    std::istringstream in("a,b\n1,2\n");
    CHECK_THROWS_AS(read_csv(in), ValidationError);
  }
  SECTION("kind count mismatch") {
    std::istringstream in("# types: cont\na,b\n1,2\n");
    CHECK_THROWS_AS(read_csv(in), ValidationError);
  }
  SECTION("ragged row") {
    std::istringstream in("# types: cont,cont\na,b\n1,2\n3\n");
    CHECK_THROWS_AS(read_csv(in), ValidationError);
  }
  SECTION("bad numeral") {
    std::istringstream in("# types: cont\na\nnot_a_number\n");
    CHECK_THROWS_WITH(read_csv(in),
                      Catch::Matchers::ContainsSubstring("row 0"));
  }
}

TEST_CASE("scientific notation parses") {
  std::istringstream in("# types: cont\na\n1.5e-3\n-2E4\n");
  Dataset ds = read_csv(in);
  CHECK(ds.cell(0, 0).num == 1.5e-3);
  CHECK(ds.cell(1, 0).num == -2e4);
}

TEST_CASE("simulated datasets round trip through the csv contract") {
  for (ScenarioId id : all_scenarios()) {
    auto [ds, roles] = generate({id, 50, 77});
    std::ostringstream out;
    write_csv(ds, out);
    std::istringstream in(out.str());
    Dataset back = read_csv(in);
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      for (std::size_t j = 0; j < ds.n_cols(); ++j) {
        CHECK(back.cell(i, j) == ds.cell(i, j));
      }
    }
  }
}
