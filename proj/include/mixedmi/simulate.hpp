#ifndef MIXEDMI_SIMULATE_HPP
#define MIXEDMI_SIMULATE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mixedmi/dataset.hpp"

namespace mixedmi {

enum class ScenarioId {
  EggChain,             // X ~ Exp(mean 10), Z ~ Poisson(X), Y ~ Binomial(Z, 1/2)
  DiscUnifCont,         // X ~ DUnif{0,1,2}, Y ~ (X + U(0,2)) mod 3, Z ~ Bernoulli(1/2)
  FourPointDiscrete,    // (X,Y) four-point mass, Z ~ Poisson(2)
  GaussDiscreteMixture  // half Gaussian(corr .8), half four-point; Z ~ Bin(3,.2)
};

inline const char* to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::EggChain: return "egg_chain";
    case ScenarioId::DiscUnifCont: return "disc_unif_cont";
    case ScenarioId::FourPointDiscrete: return "four_point_discrete";
    case ScenarioId::GaussDiscreteMixture: return "gauss_discrete_mixture";
  }
  return "?";
}

inline ScenarioId scenario_from_string(const std::string& s) {
  if (s == "egg_chain") return ScenarioId::EggChain;
  if (s == "disc_unif_cont") return ScenarioId::DiscUnifCont;
  if (s == "four_point_discrete") return ScenarioId::FourPointDiscrete;
  if (s == "gauss_discrete_mixture") return ScenarioId::GaussDiscreteMixture;
  throw std::invalid_argument("unknown scenario: '" + s + "'");
}

inline const std::vector<ScenarioId>& all_scenarios() {
  static const std::vector<ScenarioId> ids = {
      ScenarioId::EggChain, ScenarioId::DiscUnifCont,
      ScenarioId::FourPointDiscrete, ScenarioId::GaussDiscreteMixture};
  return ids;
}

struct ScenarioSpec {
  ScenarioId id = ScenarioId::EggChain;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct ScenarioTruth {
  double value = 0.0;
  std::string formula;
};

/// Seedable sampler. All draws go through explicit transforms of mt19937_64
/// output, so a seed pins the dataset bytes on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1], safe inside logs.
  double uniform_pos() { return 1.0 - uniform(); }

  double exponential(double mean) { return -mean * std::log(uniform_pos()); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform_pos();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

  /// Knuth's product method; fine for the moderate rates used here.
  long poisson(double lambda) {
    const double limit = std::exp(-lambda);
    long count = -1;
    double prod = 1.0;
    do {
      prod *= uniform_pos();
      ++count;
    } while (prod > limit);
    return count;
  }

  long binomial(long trials, double p) {
    long successes = 0;
    for (long t = 0; t < trials; ++t) {
      if (uniform() < p) ++successes;
    }
    return successes;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

namespace detail {

/// Four-point mass on {-1,1}^2: 0.4 at (1,1) and (-1,-1), 0.1 elsewhere.
inline std::pair<double, double> four_point(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.4) return {1.0, 1.0};
  if (u < 0.8) return {-1.0, -1.0};
  if (u < 0.9) return {1.0, -1.0};
  return {-1.0, 1.0};
}

}  // namespace detail

/// Draws one scenario sample; columns are ordered X, Y, Z and roles point at
/// them one column each.
inline std::pair<Dataset, RoleAssignment> generate(const ScenarioSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: n must be >= 1");
  Rng rng(spec.seed);
  std::vector<double> x(spec.n), y(spec.n), z(spec.n);
  std::vector<std::pair<std::string, ColumnKind>> cols;

  switch (spec.id) {
    case ScenarioId::EggChain:
      for (std::size_t i = 0; i < spec.n; ++i) {
        x[i] = rng.exponential(10.0);
        z[i] = static_cast<double>(rng.poisson(x[i]));
        y[i] = static_cast<double>(
            rng.binomial(static_cast<long>(z[i]), 0.5));
      }
      cols = {{"x", ColumnKind::Continuous},
              {"y", ColumnKind::DiscreteNumeric},
              {"z", ColumnKind::DiscreteNumeric}};
      break;
    case ScenarioId::DiscUnifCont:
      // Y | X is uniform on a window of length 2/3 starting at X/3, wrapped
      // on [0, 1); the windows tile the circle so the Y marginal is uniform
      // and I(X;Y|Z) is exactly log 3 - log 2.
      for (std::size_t i = 0; i < spec.n; ++i) {
        x[i] = std::floor(rng.uniform() * 3.0);
        y[i] = std::fmod(x[i] + 2.0 * rng.uniform(), 3.0) / 3.0;
        z[i] = static_cast<double>(rng.binomial(1, 0.5));
      }
      cols = {{"x", ColumnKind::DiscreteNumeric},
              {"y", ColumnKind::Continuous},
              {"z", ColumnKind::DiscreteNumeric}};
      break;
    case ScenarioId::FourPointDiscrete:
      for (std::size_t i = 0; i < spec.n; ++i) {
        std::tie(x[i], y[i]) = detail::four_point(rng);
        z[i] = static_cast<double>(rng.poisson(2.0));
      }
      cols = {{"x", ColumnKind::DiscreteNumeric},
              {"y", ColumnKind::DiscreteNumeric},
              {"z", ColumnKind::DiscreteNumeric}};
      break;
    case ScenarioId::GaussDiscreteMixture:
      for (std::size_t i = 0; i < spec.n; ++i) {
        if (rng.uniform() < 0.5) {
          const double g1 = rng.gaussian();
          const double g2 = rng.gaussian();
          x[i] = g1;
          y[i] = 0.8 * g1 + 0.6 * g2;  // unit variances, correlation 0.8
        } else {
          std::tie(x[i], y[i]) = detail::four_point(rng);
        }
        z[i] = static_cast<double>(rng.binomial(3, 0.2));
      }
      cols = {{"x", ColumnKind::Continuous},
              {"y", ColumnKind::Continuous},
              {"z", ColumnKind::DiscreteNumeric}};
      break;
  }

  Dataset ds = make_numeric_dataset(cols, {x, y, z});
  RoleAssignment roles{{0}, {1}, {2}};
  return {std::move(ds), std::move(roles)};
}

/// Closed-form I(X;Y|Z) for each scenario, in nats.
inline ScenarioTruth truth(ScenarioId id) {
  switch (id) {
    case ScenarioId::EggChain:
      return {0.0, "0 (X and Y independent given Z)"};
    case ScenarioId::DiscUnifCont:
      return {std::log(3.0) - std::log(2.0), "log 3 - log 2"};
    case ScenarioId::FourPointDiscrete:
      return {2.0 * 0.4 * std::log(0.4 / 0.25) +
                  2.0 * 0.1 * std::log(0.1 / 0.25),
              "2*0.4*log(0.4/0.25) + 2*0.1*log(0.1/0.25)"};
    case ScenarioId::GaussDiscreteMixture:
      return {0.4 * std::log(2.0 * 0.4 / 0.25) +
                  0.1 * std::log(2.0 * 0.1 / 0.25) +
                  0.125 * std::log(4.0 / (1.0 - 0.64)),
              "0.4*log(3.2) + 0.1*log(0.8) + 0.125*log(4/0.36)"};
  }
  throw std::invalid_argument("truth: unknown scenario");
}

}  // namespace mixedmi

#endif  // MIXEDMI_SIMULATE_HPP
