#ifndef MIXEDMI_SELFTEST_HPP
#define MIXEDMI_SELFTEST_HPP

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "mixedmi/estimators.hpp"
#include "mixedmi/knn.hpp"
#include "mixedmi/numerics.hpp"
#include "mixedmi/simulate.hpp"

namespace mixedmi {

struct SelftestOptions {
  // Overridable so the test suite can verify selftest detects a broken psi.
  std::function<double(double)> digamma_fn = [](double x) { return digamma(x); };
  std::uint64_t seed = 7;
};

namespace detail {

/// Random mixed dataset: one continuous, one discrete-numeric (small
/// support, so ties happen), one categorical column.
inline Dataset random_mixed_dataset(Rng& rng, std::size_t n) {
  static const std::vector<std::string> symbols = {"a", "b", "c"};
  std::vector<std::vector<MixedValue>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({MixedValue::number(rng.uniform()),
                    MixedValue::number(std::floor(rng.uniform() * 3.0)),
                    MixedValue::symbol(
                        symbols[static_cast<std::size_t>(rng.uniform() * 3.0)])});
  }
  return build_dataset({{"x", ColumnKind::Continuous},
                        {"y", ColumnKind::DiscreteNumeric},
                        {"c", ColumnKind::Categorical}},
                       rows);
}

}  // namespace detail

/// Fast invariant suite behind `selftest`; prints one line per check and
/// returns true iff all pass. Designed to finish well under a minute.
inline bool run_selftest(std::ostream& out, const SelftestOptions& opts = {}) {
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    all_ok = all_ok && ok;
  };

  // Digamma: known value, recurrence, log proximity.
  const double euler = 0.57721566490153286;
  check("digamma(1) = -euler_gamma",
        std::abs(opts.digamma_fn(1.0) + euler) < 1e-10);
  {
    bool ok = true;
    for (double x = 1.0; x <= 100.0; x += 1.0) {
      ok = ok && std::abs(opts.digamma_fn(x + 1.0) - opts.digamma_fn(x) -
                          1.0 / x) < 1e-10;
      ok = ok && std::abs(std::log(x) - opts.digamma_fn(x)) <= 1.0 / x + 1e-12;
    }
    check("digamma recurrence and |log - psi| <= 1/x", ok);
  }

  // Metric axioms and count monotonicity on random mixed data.
  {
    Rng rng(opts.seed);
    Dataset ds = detail::random_mixed_dataset(rng, 60);
    bool ok = true;
    for (std::size_t t = 0; t < 200; ++t) {
      const auto i = static_cast<std::size_t>(rng.uniform() * 60);
      const auto j = static_cast<std::size_t>(rng.uniform() * 60);
      const auto l = static_cast<std::size_t>(rng.uniform() * 60);
      const double dij = mixed_distance(ds, i, j);
      ok = ok && dij >= 0.0 && dij == mixed_distance(ds, j, i);
      ok = ok && mixed_distance(ds, i, i) == 0.0;
      ok = ok && mixed_distance(ds, i, l) <= dij + mixed_distance(ds, j, l);
      const double r = rng.uniform();
      ok = ok && count_within(ds, i, r, CountMode::Strict) <=
                     count_within(ds, i, r, CountMode::Inclusive);
    }
    check("metric axioms and strict <= inclusive counts", ok);
  }

  // Brute force vs accelerated index: identical profiles.
  {
    Rng rng(opts.seed + 1);
    bool ok = true;
    for (std::size_t t = 0; t < 5 && ok; ++t) {
      Dataset ds = detail::random_mixed_dataset(rng, 80);
      RoleAssignment roles{{0}, {1}, {2}};
      ok = batch_profiles(ds, roles, 3, false) ==
           batch_profiles(ds, roles, 3, true);
    }
    check("brute-force vs kd-tree profile equality", ok);
  }

  // Profile chain invariant on simulated mixed data.
  {
    auto [ds, roles] = generate({ScenarioId::DiscUnifCont, 150, opts.seed});
    bool ok = true;
    for (const NeighborProfile& p : batch_profiles(ds, roles, 7)) {
      ok = ok && 7 <= p.tilde_k && p.tilde_k <= std::min(p.n_xz, p.n_yz) &&
           std::max(p.n_xz, p.n_yz) <= p.n_z && p.n_z <= ds.n_rows() - 1;
    }
    check("profile chain k <= k~ <= n_xz,n_yz <= n_z <= n-1", ok);
  }

  // Monte-Carlo identity E[log P_{k,i}] = psi(k) - psi(n) on U[0,1]^2.
  {
    const std::size_t n = 200, k = 3, draws = 60;
    Rng rng(opts.seed + 2);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t d = 0; d < draws; ++d) {
      std::vector<double> xs(n), ys(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = rng.uniform();
        ys[i] = rng.uniform();
      }
      Dataset ds = make_numeric_dataset(
          {{"x", ColumnKind::Continuous}, {"y", ColumnKind::Continuous}},
          {xs, ys});
      for (std::size_t i = 0; i < n; ++i) {
        const double rho = knn_radius(ds, i, k);
        const double lx = std::min(xs[i] + rho, 1.0) - std::max(xs[i] - rho, 0.0);
        const double ly = std::min(ys[i] + rho, 1.0) - std::max(ys[i] - rho, 0.0);
        acc += std::log(lx * ly);
        ++cnt;
      }
    }
    const double expected = opts.digamma_fn(static_cast<double>(k)) -
                            opts.digamma_fn(static_cast<double>(n));
    check("Monte-Carlo E[log P_k] = psi(k) - psi(n)",
          std::abs(acc / static_cast<double>(cnt) - expected) < 0.05);
  }

  // Discrete plug-in equality of the proposed local values.
  {
    Rng rng(opts.seed + 3);
    bool ok = true;
    for (std::size_t t = 0; t < 5 && ok; ++t) {
      const std::size_t n = 40;
      std::vector<std::vector<MixedValue>> rows;
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(
            {MixedValue::symbol(rng.uniform() < 0.5 ? "a" : "b"),
             MixedValue::symbol(rng.uniform() < 0.5 ? "u" : "v"),
             MixedValue::symbol(rng.uniform() < 0.5 ? "p" : "q")});
      }
      Dataset ds = build_dataset({{"x", ColumnKind::Categorical},
                                  {"y", ColumnKind::Categorical},
                                  {"z", ColumnKind::Categorical}},
                                 rows);
      RoleAssignment roles{{0}, {1}, {2}};
      EstimateParams params;
      params.k = 2;
      EstimateResult res = estimate_cmi_proposed(ds, roles, params);
      for (std::size_t i = 0; i < n && ok; ++i) {
        std::size_t joint = 0, xz = 0, yz = 0, z = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const bool ex = rows[j][0] == rows[i][0];
          const bool ey = rows[j][1] == rows[i][1];
          const bool ez = rows[j][2] == rows[i][2];
          joint += ex && ey && ez;
          xz += ex && ez;
          yz += ey && ez;
          z += ez;
        }
        if (joint < params.k) continue;  // radius nonzero, oracle out of scope
        const double expected =
            joint == params.k
                ? opts.digamma_fn(static_cast<double>(joint)) -
                      opts.digamma_fn(static_cast<double>(xz)) -
                      opts.digamma_fn(static_cast<double>(yz)) +
                      opts.digamma_fn(static_cast<double>(z))
                : std::log(static_cast<double>(joint)) -
                      std::log(static_cast<double>(xz)) -
                      std::log(static_cast<double>(yz)) +
                      std::log(static_cast<double>(z));
        ok = std::abs(res.xi[i] - expected) <= 1e-12;
      }
    }
    check("discrete plug-in contingency equality", ok);
  }

  return all_ok;
}

}  // namespace mixedmi

#endif  // MIXEDMI_SELFTEST_HPP
