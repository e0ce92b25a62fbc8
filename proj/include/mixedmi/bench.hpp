#ifndef MIXEDMI_BENCH_HPP
#define MIXEDMI_BENCH_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixedmi/csv.hpp"
#include "mixedmi/estimators.hpp"
#include "mixedmi/numerics.hpp"
#include "mixedmi/simulate.hpp"

namespace mixedmi {

struct BenchConfig {
  std::vector<ScenarioId> scenarios = all_scenarios();
  std::vector<EstimatorKind> estimators = {
      EstimatorKind::Proposed, EstimatorKind::FP, EstimatorKind::RAVK1,
      EstimatorKind::RAVK2};
  std::vector<std::size_t> n_grid = {100, 200, 300, 400, 500,
                                     600, 700, 800, 900, 1000};
  std::size_t replications = 100;
  std::size_t k = 7;
  std::uint64_t base_seed = 20200901;
  bool clamp = false;  // figures display the raw mean
  bool accelerated = true;
};

/// Summary for one (scenario, estimator, n) cell. Raw replication estimates
/// and their seeds are retained so reports are fully reproducible.
struct BenchCell {
  ScenarioId scenario;
  EstimatorKind estimator;
  std::size_t n = 0;
  std::vector<double> raw;
  std::vector<std::uint64_t> seeds;
  double truth = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
  std::string error;  // nonempty if the cell failed
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchCell> cells;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Linear-interpolation quantile on a sorted copy.
inline double quantile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

/// Replication seed; independent of the estimator so every estimator in a
/// cell sees the same simulated datasets (paired comparison).
inline std::uint64_t replication_seed(std::uint64_t base_seed,
                                      ScenarioId scenario, std::size_t n,
                                      std::size_t replication) {
  std::uint64_t s = detail::splitmix64(base_seed);
  s = detail::splitmix64(s ^ static_cast<std::uint64_t>(scenario));
  s = detail::splitmix64(s ^ static_cast<std::uint64_t>(n));
  s = detail::splitmix64(s ^ static_cast<std::uint64_t>(replication));
  return s;
}

inline BenchReport run_bench(const BenchConfig& config) {
  if (config.replications < 1 || config.n_grid.empty()) {
    throw std::invalid_argument("run_bench: need replications >= 1 and a grid");
  }
  BenchReport report;
  report.config = config;
  for (ScenarioId scenario : config.scenarios) {
    for (std::size_t n : config.n_grid) {
      // Datasets are shared across estimators within the cell.
      std::vector<std::uint64_t> seeds(config.replications);
      for (std::size_t r = 0; r < config.replications; ++r) {
        seeds[r] = replication_seed(config.base_seed, scenario, n, r);
      }
      for (EstimatorKind kind : config.estimators) {
        BenchCell cell;
        cell.scenario = scenario;
        cell.estimator = kind;
        cell.n = n;
        cell.seeds = seeds;
        cell.truth = truth(scenario).value;
        try {
          EstimateParams params;
          params.k = config.k;
          params.clamp = config.clamp;
          params.accelerated = config.accelerated;
          for (std::size_t r = 0; r < config.replications; ++r) {
            auto [ds, roles] = generate({scenario, n, seeds[r]});
            cell.raw.push_back(estimate(ds, roles, params, kind).estimate);
          }
          cell.mean = mean(cell.raw);
          std::vector<double> sorted = cell.raw;
          std::sort(sorted.begin(), sorted.end());
          cell.min = sorted.front();
          cell.max = sorted.back();
          cell.q05 = detail::quantile(sorted, 0.05);
          cell.q25 = detail::quantile(sorted, 0.25);
          cell.q50 = detail::quantile(sorted, 0.50);
          cell.q75 = detail::quantile(sorted, 0.75);
          cell.q95 = detail::quantile(sorted, 0.95);
        } catch (const std::exception& e) {
          cell.error = e.what();
          cell.raw.clear();
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

/// CSV export: one row per replication, then one summary row per cell.
inline void export_report_csv(const BenchReport& report, std::ostream& out) {
  out << "record,scenario,estimator,n,replication,seed,estimate,"
         "mean,min,max,q05,q25,q50,q75,q95,truth,error\n";
  auto f = [](double v) { return format_double(v); };
  for (const BenchCell& c : report.cells) {
    for (std::size_t r = 0; r < c.raw.size(); ++r) {
      out << "raw," << to_string(c.scenario) << "," << to_string(c.estimator)
          << "," << c.n << "," << r << "," << c.seeds[r] << ","
          << f(c.raw[r]) << ",,,,,,,,,,\n";
    }
  }
  for (const BenchCell& c : report.cells) {
    out << "summary," << to_string(c.scenario) << "," << to_string(c.estimator)
        << "," << c.n << ",,,," << f(c.mean) << "," << f(c.min) << ","
        << f(c.max) << "," << f(c.q05) << "," << f(c.q25) << "," << f(c.q50)
        << "," << f(c.q75) << "," << f(c.q95) << "," << f(c.truth) << ","
        << c.error << "\n";
  }
}

/// JSON export mirroring BenchReport; stable field order so identical
/// reports serialize to identical bytes.
inline nlohmann::ordered_json report_to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = {
      {"k", report.config.k},
      {"replications", report.config.replications},
      {"base_seed", report.config.base_seed},
      {"clamp", report.config.clamp},
      {"n_grid", report.config.n_grid},
  };
  j["cells"] = nlohmann::ordered_json::array();
  for (const BenchCell& c : report.cells) {
    nlohmann::ordered_json cell = {
        {"scenario", to_string(c.scenario)},
        {"estimator", to_string(c.estimator)},
        {"n", c.n},
        {"truth", c.truth},
        {"mean", c.mean},
        {"min", c.min},
        {"max", c.max},
        {"quantiles",
         {{"q05", c.q05}, {"q25", c.q25}, {"q50", c.q50}, {"q75", c.q75},
          {"q95", c.q95}}},
        {"seeds", c.seeds},
        {"raw", c.raw},
    };
    if (!c.error.empty()) cell["error"] = c.error;
    j["cells"].push_back(std::move(cell));
  }
  return j;
}

inline void export_report_json(const BenchReport& report, std::ostream& out) {
  out << report_to_json(report).dump(2) << "\n";
}

}  // namespace mixedmi

#endif  // MIXEDMI_BENCH_HPP
