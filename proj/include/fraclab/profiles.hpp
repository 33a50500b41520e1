#pragma once

#include <array>
#include <utility>

#include "fraclab/constants.hpp"
#include "fraclab/field.hpp"
#include "fraclab/params.hpp"
#include "fraclab/report.hpp"

namespace fraclab {

struct BubbleParams {
  double lambda = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  /// Multiplicative amplitude of the profile. Left free: the exact amplitude
  /// making the bubble solve (-Delta)^s w = w^{2*_s - 1} is not a closed-form
  /// input here.
  double normalization = 1.0;
};

/// normalization * (lambda / (lambda^2 + |x - x0|^2))^{(N-2s)/2}, sampled on
/// the grid. Critical regime only; x0 must lie in the box.
Field talenti_bubble(const GridPtr<double>& grid, const SystemParams& params,
                     const BubbleParams& bubble);

struct GroundState {
  Field profile;
  /// L2 norm of (-Delta)^s w + w - w^{alpha+beta-1}.
  double residual = 0.0;
  /// Subcritical quotient of the profile.
  double quotient = 0.0;
  int quotient_iterations = 0;
  int polish_iterations = 0;

  FlatRecord to_record() const;
};

/// Positive ground state of (-Delta)^s w + w = w^{p-1}, p = alpha + beta, in
/// the subcritical regime, centered at the box center.
///
/// The quotient ||w||_{H^s}^2 / ||w||_p^2 is minimized first, the minimizer u
/// is rescaled by mu = (Q ||u||_p^{2-p})^{1/(p-2)} so the equation holds, and a
/// stabilized fixed-point iteration
///   w <- M^{(p-1)/(p-2)} A^{-1} w^{p-1},  M = <A w, w> / <w^{p-1}, w>,
/// drives the residual below opts.tol (default 1e-6). Throws NumericalError if
/// it does not get there within opts.max_iter iterations.
GroundState subcritical_ground_state(const GridPtr<double>& grid, const SystemParams& params,
                                     const MinimizeOpts& opts = {1e-6, 5000});

double ground_state_residual(const Field& w, const SystemParams& params);

/// (B w, C w) with B / C = sqrt(alpha / beta) and C = 1.
std::pair<Field, Field> paired_minimizer(const Field& w, double alpha, double beta);

/// Fit window as fractions of the half box length L/2.
struct FitWindow {
  double inner = 0.25;
  double outer = 0.45;
};

/// Negated least-squares slope of log u against log |x - center| over the grid
/// points whose distance from the box center lies in the window.
double decay_exponent_fit(const Field& u, const FitWindow& window = {});

}  // namespace fraclab
