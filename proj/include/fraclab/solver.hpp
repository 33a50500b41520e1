#pragma once

#include <optional>
#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/energy.hpp"
#include "fraclab/forcing.hpp"
#include "fraclab/report.hpp"

namespace fraclab {

/// The ball on which the energy is minimized, with the constants it came from.
struct BallConstants {
  double s_scalar = 0.0;
  double s_vector = 0.0;
  double radius = 0.0;     // r, convexity radius
  double threshold = 0.0;  // d, smallness threshold
};

/// S_scalar measured on the grid by minimize_quotient, S_vector from the ratio
/// identity, then r and d from their closed forms.
BallConstants ball_constants(const GridPtr<double>& grid, const SystemParams& params,
                             const MinimizeOpts& quotient_opts = {});

struct SolveOptions {
  /// tol bounds the gradient L2 norm; defaults 1e-8 and 10000 iterations.
  MinimizeOpts iteration{1e-8, 10000};
  /// Computed by ball_constants when absent.
  std::optional<BallConstants> ball;
  /// Start point; (0, 0) when absent.
  std::optional<FieldPair> start;
  /// Iterates leaving the ball of radius projection_fraction * r are projected back.
  double projection_fraction = 0.99;
};

struct TraceRow {
  int iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double ball_fraction = 0.0;
};

struct SolveReport {
  Field u_bar;
  Field v_bar;
  double energy = 0.0;
  double grad_norm = 0.0;
  double ball_fraction = 0.0;  // ||(u, v)|| / r
  double min_u = 0.0;
  double min_v = 0.0;
  double distinctness = 0.0;  // ||u - v||_2 / ||u + v||_2
  int iterations = 0;
  bool converged = false;

  BallConstants ball{};
  double forcing_norm = 0.0;        // max(||f||, ||g||) in the regime dual norm
  bool smallness_exceeded = false;  // forcing_norm > d (warned, not rejected)
  bool projection_active = false;   // the last accepted step was projected
  std::vector<TraceRow> trace{};

  FlatRecord to_record() const;
  std::vector<FlatRecord> trace_rows() const;
};

/// Minimizes J over the ball of radius projection_fraction * r by gradient
/// descent preconditioned with A^{-1} = ((-Delta)^s + gamma)^{-1}, Armijo
/// backtracking (halving, constant 1e-4) and radial projection onto the ball.
/// Stops when the gradient L2 norm is at most opts.iteration.tol. In the
/// critical regime the zero Fourier mode is projected out of iterates and
/// gradients. Non-convergence is reported through `converged`, not thrown.
SolveReport solve_system(const Functional& f, const Functional& g, const SystemParams& params,
                         const GridPtr<double>& grid, const SolveOptions& opts = {});

/// L2 norm of the strong-form residual pair of the system
///   A u - (alpha/p) |u|^{alpha-2} u |v|^beta - f,
///   A v - (beta/p)  |v|^{beta-2} v |u|^alpha - g.
double residual(const Field& u, const Field& v, const Functional& f, const Functional& g,
                const SystemParams& params);

struct PositivityDiagnostics {
  double min_u = 0.0;
  double min_v = 0.0;
  double nonpositive_fraction_u = 0.0;
  double nonpositive_fraction_v = 0.0;
  /// The solution is identically zero (zero forcing); positivity is not expected.
  bool trivial = false;
  bool positive = false;  // min_u > 0 and min_v > 0
};

PositivityDiagnostics positivity_check(const SolveReport& report);

struct ResponsePoint {
  double t = 0.0;
  double norm = 0.0;        // ||(u_t, v_t)||
  double norm_over_t = 0.0;
  bool converged = false;
};

struct LinearResponseCurve {
  std::vector<ResponsePoint> points;  // increasing t
  /// ||A^{-1}(f, g)||, the t -> 0 limit of norm / t.
  double linear_norm = 0.0;
  bool monotone = false;

  std::vector<FlatRecord> to_rows() const;
};

/// Solves with forcing (t f, t g) for every t > 0 in t_scale.
LinearResponseCurve neumann_series_sanity(const std::vector<double>& t_scale, const Functional& f,
                                          const Functional& g, const SystemParams& params,
                                          const GridPtr<double>& grid, const SolveOptions& opts = {});

struct MarginResult {
  /// Largest tested multiple of d (forcing max-norm c d) with a converged
  /// interior minimizer, and the smallest tested multiple where that failed.
  double last_interior = 0.0;
  double first_failure = 0.0;
  bool failure_found = false;
  int solves = 0;
};

/// Scales (f, g), normalized to max dual norm d, by c = 1, 2, 4, ... up to
/// max_multiple until the interior certificate (converged, no active
/// projection, ball fraction < projection_fraction) fails, then bisects the
/// bracket `bisections` times. An empirical margin only; no sharpness claim.
MarginResult empirical_margin(const Functional& f, const Functional& g, const SystemParams& params,
                              const GridPtr<double>& grid, const SolveOptions& opts,
                              double max_multiple = 64.0, int bisections = 12);

enum class Component { kU, kV };

struct PinnedResult {
  Field free_component;     // best response of the unpinned component
  double pinned_residual;   // L2 residual of the pinned component's equation
};

/// Pins one component to 0, solves the other component's equation (which is
/// then linear: A w = forcing), and reports the residual left in the pinned
/// equation. The residual equals the L2 norm of the pinned forcing, so a
/// semi-trivial critical point exists only when that forcing vanishes.
PinnedResult pinned_component_residual(const Functional& f, const Functional& g,
                                       const SystemParams& params, Component pinned);

}  // namespace fraclab
