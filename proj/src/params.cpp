#include "fraclab/params.hpp"

#include <cmath>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

std::string to_string(Regime r) { return r == Regime::kCritical ? "critical" : "subcritical"; }

double SystemParams::critical_exponent() const {
  return 2.0 * dimension / (dimension - 2.0 * s);
}

double SystemParams::energy_power() const {
  return regime == Regime::kCritical ? critical_exponent() : total_power();
}

double SystemParams::convexity_factor() const {
  const double p = energy_power();
  return alpha * alpha + beta * beta + alpha * beta - p;
}

namespace {

SystemParams build(int dimension, double s, double alpha, double beta, std::optional<int> gamma,
                   double min_exponent, bool strict) {
  using detail::require;
  require(dimension >= 1 && dimension <= 3, "dimension must be 1, 2 or 3");
  require(s > 0.0 && s <= 1.0, "s must lie in (0, 1]");
  require(dimension > 2.0 * s, "N > 2s is required");
  const std::string bound = strict ? "> 1" : ">= 1";
  require(std::isfinite(alpha) && (strict ? alpha > min_exponent : alpha >= min_exponent),
          "alpha must be " + bound);
  require(std::isfinite(beta) && (strict ? beta > min_exponent : beta >= min_exponent),
          "beta must be " + bound);

  SystemParams p{dimension, s, alpha, beta, Regime::kSubcritical};
  const double crit = p.critical_exponent();
  const double total = alpha + beta;
  const bool at_critical = std::abs(total - crit) <= kCriticalTolerance;

  int g = gamma.value_or(at_critical ? 0 : 1);
  require(g == 0 || g == 1, "gamma must be 0 or 1");
  p.regime = static_cast<Regime>(g);

  if (p.regime == Regime::kCritical) {
    std::ostringstream msg;
    msg << "gamma = 0 requires alpha + beta = 2*_s = " << crit << ", got " << total;
    require(at_critical, msg.str());
  } else {
    std::ostringstream msg;
    msg << "gamma = 1 requires 2 < alpha + beta <= 2*_s = " << crit << ", got " << total;
    require(total > 2.0 && (total < crit || at_critical), msg.str());
  }
  return p;
}

}  // namespace

SystemParams make_params(int dimension, double s, double alpha, double beta,
                         std::optional<int> gamma) {
  return build(dimension, s, alpha, beta, gamma, 1.0, true);
}

SystemParams make_quotient_params(int dimension, double s, double alpha, double beta,
                                  std::optional<int> gamma) {
  return build(dimension, s, alpha, beta, gamma, 1.0, false);
}

}  // namespace fraclab
