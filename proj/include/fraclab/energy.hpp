#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fraclab/field.hpp"
#include "fraclab/forcing.hpp"
#include "fraclab/params.hpp"
#include "fraclab/report.hpp"

namespace fraclab {

/// I uses |u|^alpha |v|^beta in the coupling term, J uses u_+^alpha v_+^beta.
enum class EnergyVariant { kI, kJ };

struct EnergyBreakdown {
  double quadratic = 0.0;  // (1/2) ||(u, v)||^2 in the regime norm
  double coupling = 0.0;   // (1/p) integral of the coupling term
  double forcing = 0.0;    // <f, u> + <g, v>
  double total = 0.0;      // quadratic - coupling - forcing

  FlatRecord to_record() const;
};

using FieldPair = std::pair<Field, Field>;

/// Squared product-space norm ||u||^2 + ||v||^2 in the regime norm.
double pair_norm_squared(const Field& u, const Field& v, const SystemParams& params);
double pair_norm(const Field& u, const Field& v, const SystemParams& params);

EnergyBreakdown energy(const Field& u, const Field& v, const Functional& f, const Functional& g,
                       const SystemParams& params, EnergyVariant variant = EnergyVariant::kJ);

/// L2 (density) representation of the first variation:
///   G_u = A u - (alpha/p) u_+^{alpha-1} v_+^beta - f,
///   G_v = A v - (beta/p)  v_+^{beta-1} u_+^alpha - g,
/// with A = (-Delta)^s + gamma. For variant I the coupling derivatives are
/// |u|^{alpha-2} u |v|^beta and |v|^{beta-2} v |u|^alpha. The directional
/// derivative of the energy along (phi, psi) is <G_u, phi> + <G_v, psi>.
FieldPair gradient(const Field& u, const Field& v, const Functional& f, const Functional& g,
                   const SystemParams& params, EnergyVariant variant = EnergyVariant::kJ);

/// Second variation of J at (u, v) in the direction (phi, psi):
///   ||(phi,psi)||^2 - alpha(alpha-1)/p int u_+^{alpha-2} v_+^beta phi^2
///                   - beta(beta-1)/p  int u_+^alpha v_+^{beta-2} psi^2
///                   - 2 alpha beta/p  int u_+^{alpha-1} v_+^{beta-1} phi psi.
/// Negative powers of a vanishing positive part contribute 0.
double hessian_quadform(const Field& u, const Field& v, const Field& phi, const Field& psi,
                        const SystemParams& params);

struct SignScanRow {
  double t = 0.0;
  double energy = 0.0;
};

struct SignScanReport {
  std::vector<SignScanRow> rows;  // sorted by t
  /// J < 0 at the smallest positive t and J > 0 at the negative t closest to 0.
  bool dichotomy_holds = false;
  /// Both forcings vanish: J is even in t to leading order and the dichotomy
  /// does not apply. Reported, not asserted.
  bool degenerate = false;
  /// When the dichotomy fails: the t at which the expected sign was violated.
  std::optional<double> offending_t;

  std::vector<FlatRecord> to_rows() const;
};

/// Evaluates J(t u, t v) along the ray for every t in t_values.
SignScanReport small_t_sign_scan(const Field& u, const Field& v, const Functional& f,
                                 const Functional& g, const SystemParams& params,
                                 const std::vector<double>& t_values);

}  // namespace fraclab
