#pragma once

#include <optional>
#include <string>

namespace fraclab {

/// Which of the two formulations of the system is in force.
///
/// kCritical (gamma = 0) works in H-dot^s with the critical power 2*_s;
/// kSubcritical (gamma = 1) works in H^s with total power alpha + beta.
enum class Regime : int { kCritical = 0, kSubcritical = 1 };

inline int gamma_of(Regime r) { return static_cast<int>(r); }
std::string to_string(Regime r);

struct SystemParams {
  int dimension = 1;
  double s = 0.25;
  double alpha = 2.0;
  double beta = 2.0;
  Regime regime = Regime::kSubcritical;

  int gamma() const { return gamma_of(regime); }
  /// 2*_s = 2N / (N - 2s).
  double critical_exponent() const;
  /// Total power alpha + beta.
  double total_power() const { return alpha + beta; }
  /// The power p that appears in the functionals: 2*_s for gamma = 0,
  /// alpha + beta for gamma = 1.
  double energy_power() const;
  /// alpha^2 + beta^2 + alpha beta - p.
  double convexity_factor() const;
};

inline constexpr double kCriticalTolerance = 1e-12;

/// Validated parameters for the coupled system: N in {1,2,3}, 0 < s <= 1,
/// N > 2s, alpha, beta > 1. gamma = 0 requires alpha + beta = 2*_s (to 1e-12);
/// gamma = 1 requires 2 < alpha + beta <= 2*_s. When gamma is not given it is
/// derived from alpha + beta. Throws ConfigError naming the violated condition.
SystemParams make_params(int dimension, double s, double alpha, double beta,
                         std::optional<int> gamma = std::nullopt);

/// Same checks as make_params except that alpha, beta >= 1 is admitted. Used by
/// the quotient machinery, where the coupled quotient and the ratio identity
/// remain meaningful at the endpoint.
SystemParams make_quotient_params(int dimension, double s, double alpha, double beta,
                                  std::optional<int> gamma = std::nullopt);

}  // namespace fraclab
