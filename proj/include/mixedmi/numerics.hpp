#ifndef MIXEDMI_NUMERICS_HPP
#define MIXEDMI_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mixedmi {

/// Digamma function psi(x) = d/dx log Gamma(x) for x > 0.
///
/// Uses the recurrence psi(x+1) = psi(x) + 1/x to push the argument above 6,
/// then the asymptotic expansion. Absolute error below 1e-12 for x >= 1.
inline double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("digamma: argument must be positive");
  }
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n})
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv;
  result -= inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                            inv2 * (1.0 / 252.0 -
                                    inv2 * (1.0 / 240.0 -
                                            inv2 * (1.0 / 132.0)))));
  return result;
}

/// log of the volume constant c_{d,p} = 2^d Gamma(1+1/p)^d / Gamma(1+d/p)
/// of the unit l_p ball in d dimensions. p may be infinity (gives d*log 2).
inline double lp_ball_log_volume_constant(std::size_t d, double p) {
  if (d == 0) {
    throw std::invalid_argument("lp_ball_log_volume_constant: d must be >= 1");
  }
  const double dd = static_cast<double>(d);
  if (std::isinf(p)) {
    return dd * std::log(2.0);
  }
  if (!(p > 0.0)) {
    throw std::invalid_argument("lp_ball_log_volume_constant: p must be > 0");
  }
  return dd * std::log(2.0) + dd * std::lgamma(1.0 + 1.0 / p) -
         std::lgamma(1.0 + dd / p);
}

/// Arithmetic mean with compensated (Kahan) summation, so the result is
/// insensitive to input order well below 1e-12 relative error.
inline double mean(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("mean: empty input");
  }
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(values.size());
}

}  // namespace mixedmi

#endif  // MIXEDMI_NUMERICS_HPP
