#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "mixedmi/csv.hpp"
#include "mixedmi/simulate.hpp"

using namespace mixedmi;

TEST_CASE("same seed gives identical datasets") {
  for (ScenarioId id : all_scenarios()) {
    auto [a, ra] = generate({id, 200, 42});
    auto [b, rb] = generate({id, 200, 42});
    std::ostringstream sa, sb;
    write_csv(a, sa);
    write_csv(b, sb);
    CHECK(sa.str() == sb.str());

    auto [c, rc] = generate({id, 200, 43});
    std::ostringstream sc;
    write_csv(c, sc);
    CHECK(sa.str() != sc.str());
  }
}

TEST_CASE("egg chain structure") {
  auto [ds, roles] = generate({ScenarioId::EggChain, 100000, 7});
  CHECK(roles.x_cols == std::vector<std::size_t>{0});
  CHECK(ds.column(0).kind == ColumnKind::Continuous);
  CHECK(ds.column(1).kind == ColumnKind::DiscreteNumeric);
  double x_sum = 0.0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    x_sum += ds.numeric_at(i, 0);
    // Survivors never exceed eggs laid.
    CHECK(ds.numeric_at(i, 1) <= ds.numeric_at(i, 2));
  }
  CHECK(x_sum / 100000.0 == Catch::Approx(10.0).epsilon(0.02));
}

TEST_CASE("discrete uniform / continuous uniform scenario support") {
  auto [ds, roles] = generate({ScenarioId::DiscUnifCont, 20000, 11});
  double thirds[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double x = ds.numeric_at(i, 0);
    const double y = ds.numeric_at(i, 1);
    const double z = ds.numeric_at(i, 2);
    CHECK((x == 0.0 || x == 1.0 || x == 2.0));
    // Y lies in the length-2/3 window starting at X/3, wrapped on [0, 1).
    CHECK((y >= 0.0 && y < 1.0));
    CHECK(std::fmod(3.0 * y - x + 3.0, 3.0) < 2.0);
    CHECK((z == 0.0 || z == 1.0));
    thirds[static_cast<std::size_t>(3.0 * y)] += 1.0;
  }
  // The windows tile the circle, so the Y marginal is uniform on [0, 1).
  for (double c : thirds) {
    CHECK(c / static_cast<double>(ds.n_rows()) ==
          Catch::Approx(1.0 / 3.0).margin(0.02));
  }
}

TEST_CASE("four point masses have the right frequencies") {
  auto [ds, roles] = generate({ScenarioId::FourPointDiscrete, 100000, 13});
  std::size_t n11 = 0, nmm = 0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double x = ds.numeric_at(i, 0);
    const double y = ds.numeric_at(i, 1);
    CHECK((x == 1.0 || x == -1.0));
    CHECK((y == 1.0 || y == -1.0));
    n11 += x == 1.0 && y == 1.0;
    nmm += x == -1.0 && y == -1.0;
  }
  CHECK(static_cast<double>(n11) / 100000.0 == Catch::Approx(0.4).margin(0.01));
  CHECK(static_cast<double>(nmm) / 100000.0 == Catch::Approx(0.4).margin(0.01));
}

TEST_CASE("gaussian/discrete mixture is balanced") {
  auto [ds, roles] = generate({ScenarioId::GaussDiscreteMixture, 10000, 17});
  std::size_t discrete_rows = 0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const double x = ds.numeric_at(i, 0);
    const double y = ds.numeric_at(i, 1);
    discrete_rows += std::abs(x) == 1.0 && std::abs(y) == 1.0;
  }
  // Fraction of discrete-component rows within 3 SE of 1/2.
  const double frac = static_cast<double>(discrete_rows) / 10000.0;
  const double se = std::sqrt(0.25 / 10000.0);
  CHECK(std::abs(frac - 0.5) <= 3.0 * se);
}

TEST_CASE("closed-form truths") {
  CHECK(truth(ScenarioId::EggChain).value == 0.0);
  CHECK(truth(ScenarioId::DiscUnifCont).value ==
        Catch::Approx(0.4054651081).margin(1e-9));
  CHECK(truth(ScenarioId::FourPointDiscrete).value ==
        Catch::Approx(0.1927447731).margin(1e-9));
  CHECK(truth(ScenarioId::GaussDiscreteMixture).value ==
        Catch::Approx(0.7439391699).margin(1e-6));
}

TEST_CASE("four point truth agrees with the exhaustive plug-in computation") {
  // I(X;Y|Z) = I(X;Y) since Z is independent; sum over the 4-point support.
  const double pxy[2][2] = {{0.4, 0.1}, {0.1, 0.4}};  // rows: x=1,-1
  double px[2] = {0.5, 0.5}, py[2] = {0.5, 0.5};
  double plug_in = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      plug_in += pxy[a][b] * std::log(pxy[a][b] / (px[a] * py[b]));
    }
  }
  CHECK(truth(ScenarioId::FourPointDiscrete).value ==
        Catch::Approx(plug_in).margin(1e-12));
}

TEST_CASE("generation validates n") {
  CHECK_THROWS_AS(generate({ScenarioId::EggChain, 0, 1}), std::invalid_argument);
}
