// Command-line front end: estimate from CSV, simulate scenarios, run the
// benchmark grid, and run the self-check suite.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixedmi/bench.hpp"
#include "mixedmi/csv.hpp"
#include "mixedmi/estimators.hpp"
#include "mixedmi/selftest.hpp"
#include "mixedmi/simulate.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::vector<std::size_t> resolve_columns(const mixedmi::Dataset& ds,
                                         const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const std::string& name : names) {
    bool found = false;
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      if (ds.column(j).name == name) {
        out.push_back(j);
        found = true;
        break;
      }
    }
    if (!found) {
      throw mixedmi::ValidationError("no such column: '" + name + "'");
    }
  }
  return out;
}

mixedmi::Dataset load_csv(const std::string& path,
                          const std::string& types_flag) {
  std::optional<std::vector<mixedmi::ColumnKind>> kinds;
  if (!types_flag.empty()) {
    kinds = mixedmi::parse_kind_list(types_flag);
  } else {
    // Sidecar schema: a single kind list line in <file>.schema.
    std::ifstream sidecar(path + ".schema");
    std::string line;
    if (sidecar && std::getline(sidecar, line)) {
      kinds = mixedmi::parse_kind_list(line);
    }
  }
  std::ifstream in(path);
  if (!in) {
    throw mixedmi::ValidationError("cannot open input file: " + path);
  }
  return mixedmi::read_csv(in, kinds);
}

int cmd_estimate(const std::string& input, const std::string& types,
                 const std::vector<std::string>& x,
                 const std::vector<std::string>& y,
                 const std::vector<std::string>& z, std::size_t k,
                 const std::string& estimator, bool clamp, bool bits) {
  mixedmi::Dataset ds = load_csv(input, types);
  mixedmi::RoleAssignment roles{resolve_columns(ds, x), resolve_columns(ds, y),
                                resolve_columns(ds, z)};
  mixedmi::EstimateParams params;
  params.k = k;
  params.clamp = clamp;
  const mixedmi::EstimatorKind kind =
      mixedmi::estimator_kind_from_string(estimator);

  nlohmann::ordered_json out;
  out["schema_version"] = 1;
  if (kind == mixedmi::EstimatorKind::KL_Entropy) {
    std::vector<std::size_t> cols = roles.x_cols;
    cols.insert(cols.end(), roles.y_cols.begin(), roles.y_cols.end());
    cols.insert(cols.end(), roles.z_cols.begin(), roles.z_cols.end());
    double h = mixedmi::kl_entropy(mixedmi::project(ds, cols), params);
    if (bits) h /= std::log(2.0);
    out["estimate"] = h;
    out["clamped"] = false;
  } else {
    mixedmi::EstimateResult res = mixedmi::estimate(ds, roles, params, kind);
    out["estimate"] = bits ? res.estimate / std::log(2.0) : res.estimate;
    out["clamped"] = res.clamped;
  }
  out["units"] = bits ? "bits" : "nats";
  out["estimator"] = estimator;
  out["k"] = k;
  out["n"] = ds.n_rows();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const std::string& scenario, std::size_t n,
                 std::uint64_t seed, const std::string& output) {
  auto [ds, roles] = mixedmi::generate(
      {mixedmi::scenario_from_string(scenario), n, seed});
  (void)roles;  // scenario columns are always x,y,z in order
  if (output.empty() || output == "-") {
    mixedmi::write_csv(ds, std::cout);
  } else {
    std::ofstream out(output);
    if (!out) throw mixedmi::ValidationError("cannot open output: " + output);
    mixedmi::write_csv(ds, out);
  }
  return 0;
}

int cmd_bench(const std::vector<std::string>& scenarios,
              const std::vector<std::string>& estimators,
              const std::vector<std::size_t>& n_grid, std::size_t reps,
              std::size_t k, std::uint64_t seed, bool clamp,
              const std::string& format, const std::string& output) {
  mixedmi::BenchConfig config;
  if (!scenarios.empty()) {
    config.scenarios.clear();
    for (const auto& s : scenarios) {
      config.scenarios.push_back(mixedmi::scenario_from_string(s));
    }
  }
  if (!estimators.empty()) {
    config.estimators.clear();
    for (const auto& e : estimators) {
      config.estimators.push_back(mixedmi::estimator_kind_from_string(e));
    }
  }
  if (!n_grid.empty()) config.n_grid = n_grid;
  config.replications = reps;
  config.k = k;
  config.base_seed = seed;
  config.clamp = clamp;

  const mixedmi::BenchReport report = mixedmi::run_bench(config);
  std::ostringstream buf;
  if (format == "csv") {
    mixedmi::export_report_csv(report, buf);
  } else if (format == "json") {
    mixedmi::export_report_json(report, buf);
  } else {
    throw CLI::ValidationError("--format must be csv or json");
  }
  if (output.empty() || output == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream out(output);
    if (!out) throw mixedmi::ValidationError("cannot open output: " + output);
    out << buf.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual and conditional mutual information estimation for "
               "mixed continuous, discrete and categorical data"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate MI/CMI from a CSV file");
  std::string input, types, estimator = "proposed";
  std::vector<std::string> xcols, ycols, zcols;
  std::size_t k = 7;
  bool no_clamp = false, bits = false;
  est->add_option("input", input, "CSV input path")->required();
  est->add_option("--types", types,
                  "Column kinds, e.g. cont,disc,cat (overrides sidecar/header)");
  est->add_option("--x", xcols, "X column names")->required()->delimiter(',');
  est->add_option("--y", ycols, "Y column names")->required()->delimiter(',');
  est->add_option("--z", zcols, "Z column names (omit for MI)")->delimiter(',');
  est->add_option("--k", k, "number of nearest neighbors");
  est->add_option("--estimator", estimator,
                  "proposed|fp|ravk1|ravk2|ksg|kl");
  est->add_flag("--no-clamp", no_clamp, "report the raw mean, may be negative");
  est->add_flag("--bits", bits, "report in bits instead of nats");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a scenario dataset CSV");
  std::string scenario, output;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  sim->add_option("scenario", scenario,
                  "egg_chain|disc_unif_cont|four_point_discrete|"
                  "gauss_discrete_mixture")
      ->required();
  sim->add_option("--n", n, "sample size");
  sim->add_option("--seed", seed, "random seed");
  sim->add_option("--output,-o", output, "output path (default stdout)");

  // bench
  auto* bench = app.add_subcommand(
      "bench", "Run the estimator comparison grid and write a report");
  std::vector<std::string> bench_scenarios, bench_estimators;
  std::vector<std::size_t> n_grid;
  std::size_t reps = 100, bench_k = 7;
  std::uint64_t bench_seed = 20200901;
  bool bench_clamp = false;
  std::string format = "csv", bench_output;
  bench->add_option("--scenarios", bench_scenarios, "scenario subset")
      ->delimiter(',');
  bench->add_option("--estimators", bench_estimators, "estimator subset")
      ->delimiter(',');
  bench->add_option("--n-grid", n_grid, "sample sizes")->delimiter(',');
  bench->add_option("--reps", reps, "replications per cell");
  bench->add_option("--k", bench_k, "number of nearest neighbors");
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_flag("--clamp", bench_clamp, "clamp estimates at zero");
  bench->add_option("--format", format, "csv|json");
  bench->add_option("--output,-o", bench_output, "output path (default stdout)");

  // selftest
  auto* self = app.add_subcommand("selftest", "Run the fast invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (est->parsed()) {
      return cmd_estimate(input, types, xcols, ycols, zcols, k, estimator,
                          !no_clamp, bits);
    }
    if (sim->parsed()) return cmd_simulate(scenario, n, seed, output);
    if (bench->parsed()) {
      return cmd_bench(bench_scenarios, bench_estimators, n_grid, reps,
                       bench_k, bench_seed, bench_clamp, format, bench_output);
    }
    if (self->parsed()) {
      return mixedmi::run_selftest(std::cout) ? 0 : kExitNumeric;
    }
  } catch (const mixedmi::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
