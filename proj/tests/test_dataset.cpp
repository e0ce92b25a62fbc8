#include <catch_amalgamated.hpp>

#include <cmath>

#include "mixedmi/dataset.hpp"
#include "mixedmi/simulate.hpp"
#include "test_util.hpp"

using namespace mixedmi;

TEST_CASE("minimal well-formed dataset") {
  Dataset ds = build_dataset({{"x", ColumnKind::Continuous}},
                             {{MixedValue::number(0.5)},
                              {MixedValue::number(1.5)}});
  CHECK(ds.n_rows() == 2);
  CHECK(ds.n_cols() == 1);
  CHECK(ds.cell(0, 0).num == 0.5);
  CHECK(ds.cell(1, 0).num == 1.5);
}

TEST_CASE("NaN cells are rejected with the row index") {
  CHECK_THROWS_WITH(
      build_dataset({{"x", ColumnKind::Continuous}},
                    {{MixedValue::number(1.0)},
                     {MixedValue::number(std::nan(""))}}),
      Catch::Matchers::ContainsSubstring("row 1"));
}

TEST_CASE("ragged rows and kind mismatches are rejected") {
  CHECK_THROWS_AS(build_dataset({{"x", ColumnKind::Continuous},
                                 {"y", ColumnKind::Continuous}},
                                {{MixedValue::number(1.0)}}),
                  ValidationError);
  CHECK_THROWS_AS(build_dataset({{"x", ColumnKind::Categorical}},
                                {{MixedValue::number(1.0)}}),
                  ValidationError);
  CHECK_THROWS_AS(build_dataset({{"x", ColumnKind::Continuous}},
                                {{MixedValue::symbol("a")}}),
                  ValidationError);
}

TEST_CASE("mixed dataset round-trips every cell") {
  std::vector<std::vector<MixedValue>> rows;
  for (int i = 0; i < 5; ++i) {
    rows.push_back({MixedValue::number(0.1 * i),
                    MixedValue::number(static_cast<double>(i % 2)),
                    MixedValue::symbol(i % 2 ? "yes" : "no")});
  }
  Dataset ds = build_dataset({{"c", ColumnKind::Continuous},
                              {"d", ColumnKind::DiscreteNumeric},
                              {"k", ColumnKind::Categorical}},
                             rows);
  CHECK(ds.n_rows() == 5);
  CHECK(ds.n_cols() == 3);
  // Alphabet recorded in order of first appearance.
  CHECK(ds.column(2).data->alphabet == std::vector<std::string>{"no", "yes"});
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(ds.cell(i, j) == rows[i][j]);
    }
  }
}

TEST_CASE("projection basics") {
  mixedmi::Rng rng(11);
  Dataset ds = testutil::random_mixed(rng, 20);

  SECTION("identity projection") {
    Dataset all = project(ds, {0, 1, 2});
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(all.cell(i, j) == ds.cell(i, j));
      }
    }
  }
  SECTION("single column") {
    Dataset one = project(ds, {0});
    CHECK(one.n_cols() == 1);
    CHECK(one.n_rows() == ds.n_rows());
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      CHECK(one.cell(i, 0) == ds.cell(i, 0));
    }
  }
  SECTION("projection of a projection matches direct projection") {
    Dataset two = project(ds, {0, 2});
    Dataset via = project(project(ds, {0, 1, 2}), {0, 2});
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      CHECK(via.cell(i, 0) == two.cell(i, 0));
      CHECK(via.cell(i, 1) == two.cell(i, 1));
    }
  }
  SECTION("bad projections") {
    CHECK_THROWS_AS(project(ds, {}), std::invalid_argument);
    CHECK_THROWS_AS(project(ds, {7}), std::out_of_range);
  }
}

TEST_CASE("role validation") {
  mixedmi::Rng rng(12);
  Dataset ds = testutil::random_mixed(rng, 10);
  CHECK_NOTHROW(validate_roles(ds, {{0}, {1}, {2}}));
  CHECK_NOTHROW(validate_roles(ds, {{0}, {1}, {}}));  // MI case
  CHECK_THROWS_AS(validate_roles(ds, {{}, {1}, {2}}), ValidationError);
  CHECK_THROWS_AS(validate_roles(ds, {{0}, {}, {2}}), ValidationError);
  CHECK_THROWS_AS(validate_roles(ds, {{0}, {0}, {2}}), ValidationError);
  CHECK_THROWS_AS(validate_roles(ds, {{0}, {1}, {5}}), ValidationError);
}
