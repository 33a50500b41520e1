#pragma once

#include <optional>
#include <vector>

#include "fraclab/field.hpp"
#include "fraclab/params.hpp"
#include "fraclab/report.hpp"

namespace fraclab {

struct MinimizeOpts {
  /// Meaning depends on the caller: relative value change for quotient
  /// minimization, equation residual for the ground state, gradient L2 norm
  /// for the system solver.
  double tol = 1e-8;
  int max_iter = 5000;
};

enum class QuotientMode { kScalar, kVector };

// Scalar quotient, p = params.energy_power():
//   gamma = 0:  ||u||_{H-dot^s}^2 / ||P0 u||_p^2
//   gamma = 1:  ||u||_{H^s}^2     / ||u||_p^2
// where P0 removes the grid mean. On the torus the critical quotient vanishes
// on constants, so the critical regime lives on mean-zero fields. The
// subcritical numerator is the full H^s norm, which is what keeps the
// subcritical infimum positive.
double sobolev_quotient(const Field& u, const SystemParams& params);

/// (||u||^2 + ||v||^2) / (integral |u|^alpha |v|^beta)^{2/p}, same norm and mean
/// conventions as sobolev_quotient.
double vector_quotient(const Field& u, const Field& v, const SystemParams& params);

struct QuotientResult {
  Field u;
  std::optional<Field> v;  // vector mode only
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Quotient value after every accepted step (entry 0 is the start).
  std::vector<double> trace;
};

/// Minimizes the scalar or vector quotient by preconditioned gradient descent
/// under the unit-L2 normalization: direction -A^{-1} grad Q, Armijo
/// backtracking, renormalization after each step. Stops when the relative
/// decrease of Q drops below opts.tol. The default start is a Gaussian of width
/// L/16 at the box center (used for both components in vector mode).
/// Throws NumericalError on non-convergence or collapse.
QuotientResult minimize_quotient(const GridPtr<double>& grid, const SystemParams& params,
                                 QuotientMode mode, const MinimizeOpts& opts = {},
                                 const std::optional<Field>& start = std::nullopt);

/// (alpha/beta)^{beta/(alpha+beta)} + (alpha/beta)^{-alpha/(alpha+beta)}.
double ratio_formula(double alpha, double beta);

/// ratio_formula(alpha, beta) - 1, positive whenever alpha, beta > 0.
double verify_strictness(double alpha, double beta);

/// K (S_vector / S_scalar)^{p/2} with K = alpha^2 + beta^2 + alpha beta - p.
double coercivity_lhs(const SystemParams& params, double s_scalar, double s_vector);

/// gamma = 0: (p/K)^{1/(p-2)} S^{N/(4s)}; gamma = 1: (p/K)^{1/(p-2)} S^{p/(2(p-2))}.
double convexity_radius(const SystemParams& params, double s_scalar);

/// A = 1/2 - (1/K) (S_scalar / S_vector)^{p/2}.
double boundary_coefficient(const SystemParams& params, double s_scalar, double s_vector);

/// d = A r / 2, so that A r^2 - r (||f|| + ||g||) > 0 whenever
/// max(||f||, ||g||) < d. Throws NumericalError when A <= 0.
double smallness_threshold(const SystemParams& params, double radius, double s_scalar,
                           double s_vector);

/// C in (integral |u|^alpha |v|^beta)^{1/p} <= C ||(u, v)||, namely S_vector^{-1/2}.
double coupling_bound_constant(double s_vector);

/// Factor 1 - (S^{-p/2} / p) ||(u,v)||^{p-2} [alpha(alpha-1) + beta(beta-1) + alpha beta]
/// bounding the second variation from below by factor * ||(phi,psi)||^2.
double hessian_lower_bound_factor(const SystemParams& params, double s_scalar, double pair_norm);

struct GridMeta {
  int dimension = 0;
  int points_per_axis = 0;
  double box_length = 0.0;
};

struct ConstantsReport {
  double s_scalar = 0.0;
  double s_vector = 0.0;
  double ratio_measured = 0.0;
  double ratio_formula = 0.0;
  double radius = 0.0;
  double threshold = 0.0;
  double coercivity_lhs = 0.0;
  Regime regime = Regime::kSubcritical;

  SystemParams params;
  GridMeta grid;
  double strictness = 0.0;
  double coercivity_lhs_formula = 0.0;
  int scalar_iterations = 0;
  int vector_iterations = 0;

  double ratio_error() const;
  FlatRecord to_record() const;
};

/// Measures S_scalar and S_vector on the grid, then evaluates every closed-form
/// quantity from the measured values.
ConstantsReport measure_constants(const GridPtr<double>& grid, const SystemParams& params,
                                  const MinimizeOpts& opts = {});

/// Same report with S_vector = ratio_formula * S_scalar for a known S_scalar
/// (ratio_measured then equals ratio_formula).
ConstantsReport formula_constants(const SystemParams& params, double s_scalar, const GridMeta& grid);

/// The admissible pairs with alpha + beta = p: `count` alphas evenly spaced in
/// the open interval (1, p - 1), beta = p - alpha.
std::vector<std::pair<double, double>> sweep_pairs(double total_power, int count = 50);

}  // namespace fraclab
