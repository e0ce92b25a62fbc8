#ifndef MIXEDMI_ESTIMATORS_HPP
#define MIXEDMI_ESTIMATORS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedmi/dataset.hpp"
#include "mixedmi/knn.hpp"
#include "mixedmi/numerics.hpp"

namespace mixedmi {

enum class EstimatorKind { Proposed, FP, RAVK1, RAVK2, KSG_MI, KL_Entropy };

inline const char* to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Proposed: return "proposed";
    case EstimatorKind::FP: return "fp";
    case EstimatorKind::RAVK1: return "ravk1";
    case EstimatorKind::RAVK2: return "ravk2";
    case EstimatorKind::KSG_MI: return "ksg";
    case EstimatorKind::KL_Entropy: return "kl";
  }
  return "?";
}

inline EstimatorKind estimator_kind_from_string(const std::string& s) {
  if (s == "proposed") return EstimatorKind::Proposed;
  if (s == "fp") return EstimatorKind::FP;
  if (s == "ravk1") return EstimatorKind::RAVK1;
  if (s == "ravk2") return EstimatorKind::RAVK2;
  if (s == "ksg") return EstimatorKind::KSG_MI;
  if (s == "kl") return EstimatorKind::KL_Entropy;
  throw std::invalid_argument("unknown estimator: '" + s + "'");
}

struct EstimateParams {
  std::size_t k = 7;
  bool clamp = true;           // report max{mean, 0}
  double p_norm = std::numeric_limits<double>::infinity();  // KL entropy only
  bool accelerated = true;     // kd-tree backend; brute force when false
};

struct EstimateResult {
  double estimate = 0.0;
  std::vector<double> xi;
  bool clamped = false;
  EstimatorKind kind = EstimatorKind::Proposed;
  EstimateParams params;
  std::size_t n = 0;
};

/// Local value of the proposed estimator: digamma terms when the kNN radius
/// is untied (tilde_k == k), plug-in log terms when ties inflate tilde_k.
inline double local_xi_proposed(const NeighborProfile& p, std::size_t k) {
  if (p.tilde_k < k || p.n_xz < p.tilde_k || p.n_yz < p.tilde_k ||
      p.n_z < std::max(p.n_xz, p.n_yz)) {
    throw std::logic_error("local_xi_proposed: profile chain invariant violated");
  }
  // The x and y terms are added before subtracting so that swapping the x
  // and y roles gives bitwise-identical local values.
  if (p.tilde_k == k) {
    return digamma(static_cast<double>(k)) -
           (digamma(static_cast<double>(p.n_xz)) +
            digamma(static_cast<double>(p.n_yz))) +
           digamma(static_cast<double>(p.n_z));
  }
  return std::log(static_cast<double>(p.tilde_k)) -
         (std::log(static_cast<double>(p.n_xz)) +
          std::log(static_cast<double>(p.n_yz))) +
         std::log(static_cast<double>(p.n_z));
}

namespace detail {

inline void check_estimation_pre(const Dataset& ds, const EstimateParams& params) {
  if (params.k < 1 || params.k + 1 > ds.n_rows()) {
    throw std::invalid_argument("estimate: need 1 <= k <= n-1 (k=" +
                                std::to_string(params.k) + ", n=" +
                                std::to_string(ds.n_rows()) + ")");
  }
}

inline EstimateResult finish(std::vector<double> xi, EstimatorKind kind,
                             const EstimateParams& params, std::size_t n) {
  EstimateResult res;
  for (double v : xi) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("estimate: non-finite local value");
    }
  }
  // Reduce in sorted order: deterministic and exactly invariant to the row
  // order of the input.
  std::vector<double> sorted = xi;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  const double m = sum / static_cast<double>(n);
  res.clamped = params.clamp && m < 0.0;
  res.estimate = params.clamp ? std::max(m, 0.0) : m;
  res.xi = std::move(xi);
  res.kind = kind;
  res.params = params;
  res.n = n;
  return res;
}

inline double psi_count(std::size_t c) { return digamma(static_cast<double>(c)); }

}  // namespace detail

/// Proposed mixed-data CMI estimator. With empty z roles this is the MI
/// case: n_{Z,i} is fixed to n by the engine.
inline EstimateResult estimate_cmi_proposed(const Dataset& ds,
                                            const RoleAssignment& roles,
                                            const EstimateParams& params) {
  detail::check_estimation_pre(ds, params);
  NeighborEngine engine(ds, roles, params.accelerated);
  std::vector<double> xi(ds.n_rows());
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    xi[i] = local_xi_proposed(engine.profile(i, params.k), params.k);
  }
  return detail::finish(std::move(xi), EstimatorKind::Proposed, params,
                        ds.n_rows());
}

inline EstimateResult estimate_mi_proposed(const Dataset& ds,
                                           const RoleAssignment& roles,
                                           const EstimateParams& params) {
  if (!roles.z_cols.empty()) {
    throw std::invalid_argument("estimate_mi_proposed: z roles must be empty");
  }
  return estimate_cmi_proposed(ds, roles, params);
}

/// FP CMI with strict subspace counts and the max{n*,1} guard on
/// every digamma argument; degenerate on heavily tied data by design.
inline EstimateResult estimate_fp(const Dataset& ds,
                                  const RoleAssignment& roles,
                                  const EstimateParams& params) {
  detail::check_estimation_pre(ds, params);
  NeighborEngine engine(ds, roles, params.accelerated);
  const std::size_t n = ds.n_rows();
  const double psi_k = detail::psi_count(params.k);
  const double psi_n = detail::psi_count(n);
  auto guarded = [](std::size_t c) {
    return detail::psi_count(std::max<std::size_t>(c, 1) + 1);
  };
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = engine.knn_radius(i, params.k);
    const double z_term =
        engine.z_empty()
            ? psi_n
            : guarded(engine.count_z(i, rho, CountMode::Strict));
    xi[i] = psi_k -
            (guarded(engine.count_xz(i, rho, CountMode::Strict)) +
             guarded(engine.count_yz(i, rho, CountMode::Strict))) +
            z_term;
  }
  return detail::finish(std::move(xi), EstimatorKind::FP, params, n);
}

/// RAVK CMI: psi(tilde_k) with log(n_W + 1) marginal terms. Variant 1 keeps
/// tilde_k = k unless the kNN radius is zero (then it counts exact
/// duplicates); variant 2 counts every point within the radius.
inline EstimateResult estimate_ravk(const Dataset& ds,
                                    const RoleAssignment& roles,
                                    const EstimateParams& params, int variant) {
  if (variant != 1 && variant != 2) {
    throw std::invalid_argument("estimate_ravk: variant must be 1 or 2");
  }
  detail::check_estimation_pre(ds, params);
  NeighborEngine engine(ds, roles, params.accelerated);
  const std::size_t n = ds.n_rows();
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = engine.knn_radius(i, params.k);
    std::size_t tilde_k;
    if (variant == 2) {
      tilde_k = engine.count_joint(i, rho, CountMode::Inclusive);
    } else {
      tilde_k = rho == 0.0 ? engine.count_joint(i, 0.0, CountMode::Inclusive)
                           : params.k;
    }
    const double z_term =
        engine.z_empty()
            ? std::log(static_cast<double>(n))
            : std::log(static_cast<double>(
                  engine.count_z(i, rho, CountMode::Inclusive) + 1));
    xi[i] = detail::psi_count(tilde_k) -
            (std::log(static_cast<double>(
                 engine.count_xz(i, rho, CountMode::Inclusive) + 1)) +
             std::log(static_cast<double>(
                 engine.count_yz(i, rho, CountMode::Inclusive) + 1))) +
            z_term;
  }
  return detail::finish(std::move(xi),
                        variant == 1 ? EstimatorKind::RAVK1
                                     : EstimatorKind::RAVK2,
                        params, n);
}

/// KSG MI (continuous design). Requires empty z
/// roles; on tied data the FP-style max{n*,1} guard applies.
inline EstimateResult estimate_ksg_mi(const Dataset& ds,
                                      const RoleAssignment& roles,
                                      const EstimateParams& params) {
  if (!roles.z_cols.empty()) {
    throw std::invalid_argument("estimate_ksg_mi: z roles must be empty");
  }
  detail::check_estimation_pre(ds, params);
  NeighborEngine engine(ds, roles, params.accelerated);
  const std::size_t n = ds.n_rows();
  const double base = detail::psi_count(params.k) + detail::psi_count(n);
  auto guarded = [](std::size_t c) {
    return detail::psi_count(std::max<std::size_t>(c, 1) + 1);
  };
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = engine.knn_radius(i, params.k);
    xi[i] = base - (guarded(engine.count_xz(i, rho, CountMode::Strict)) +
                    guarded(engine.count_yz(i, rho, CountMode::Strict)));
  }
  return detail::finish(std::move(xi), EstimatorKind::KSG_MI, params, n);
}

/// KL kNN differential entropy of all columns, in nats, using
/// l_p kNN radii. Numeric columns only; duplicate rows are an error because
/// a zero radius puts log(0) in the sum.
inline double kl_entropy(const Dataset& ds, const EstimateParams& params) {
  detail::check_estimation_pre(ds, params);
  for (std::size_t j = 0; j < ds.n_cols(); ++j) {
    if (!is_numeric(ds.column(j).kind)) {
      throw std::invalid_argument("kl_entropy: numeric columns only");
    }
  }
  const std::size_t n = ds.n_rows();
  const std::size_t d = ds.n_cols();
  const double p = params.p_norm;
  auto lp_dist = [&](std::size_t i, std::size_t j) {
    if (std::isinf(p)) {
      double dist = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        dist = std::max(dist, std::abs(ds.numeric_at(i, c) - ds.numeric_at(j, c)));
      }
      return dist;
    }
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      acc += std::pow(std::abs(ds.numeric_at(i, c) - ds.numeric_at(j, c)), p);
    }
    return std::pow(acc, 1.0 / p);
  };

  double log_rho_sum = 0.0;
  std::vector<double> dists(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t t = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dists[t++] = lp_dist(i, j);
    }
    std::nth_element(dists.begin(), dists.begin() + (params.k - 1), dists.end());
    const double rho = dists[params.k - 1];
    if (rho == 0.0) {
      throw std::invalid_argument(
          "kl_entropy: duplicate rows give a zero kNN radius (row " +
          std::to_string(i) + ")");
    }
    log_rho_sum += std::log(rho);
  }
  return -digamma(static_cast<double>(params.k)) +
         digamma(static_cast<double>(n)) +
         lp_ball_log_volume_constant(d, p) +
         static_cast<double>(d) / static_cast<double>(n) * log_rho_sum;
}

/// Single entry point used by the CLI and benchmark harness.
inline EstimateResult estimate(const Dataset& ds, const RoleAssignment& roles,
                               const EstimateParams& params,
                               EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Proposed: return estimate_cmi_proposed(ds, roles, params);
    case EstimatorKind::FP: return estimate_fp(ds, roles, params);
    case EstimatorKind::RAVK1: return estimate_ravk(ds, roles, params, 1);
    case EstimatorKind::RAVK2: return estimate_ravk(ds, roles, params, 2);
    case EstimatorKind::KSG_MI: return estimate_ksg_mi(ds, roles, params);
    case EstimatorKind::KL_Entropy: break;
  }
  throw std::invalid_argument(
      "estimate: KL entropy has no role structure; call kl_entropy directly");
}

}  // namespace mixedmi

#endif  // MIXEDMI_ESTIMATORS_HPP
