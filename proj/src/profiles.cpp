#include "fraclab/profiles.hpp"

#include <cmath>

#include "fraclab/spectral.hpp"

namespace fraclab {

Field talenti_bubble(const GridPtr<double>& grid, const SystemParams& params,
                     const BubbleParams& bubble) {
  detail::require(params.regime == Regime::kCritical,
                  "talenti_bubble is defined for the critical regime (gamma = 0) only");
  detail::require(bubble.lambda > 0.0, "bubble lambda must be positive");
  detail::require(bubble.normalization > 0.0, "bubble normalization must be positive");
  detail::require(grid->contains(bubble.center), "bubble center lies outside the box");
  const double exponent = (params.dimension - 2.0 * params.s) / 2.0;
  const double lambda = bubble.lambda;
  return Field::sample(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < grid->dimension(); ++d) r2 += (x[d] - bubble.center[d]) * (x[d] - bubble.center[d]);
    return bubble.normalization * std::pow(lambda / (lambda * lambda + r2), exponent);
  });
}

FlatRecord GroundState::to_record() const {
  FlatRecord r;
  r.set("residual", residual)
      .set("quotient", quotient)
      .set("quotient_iterations", quotient_iterations)
      .set("polish_iterations", polish_iterations)
      .set("min_value", profile.values().minCoeff())
      .set("max_value", profile.values().maxCoeff());
  return r;
}

double ground_state_residual(const Field& w, const SystemParams& params) {
  const double p = params.total_power();
  const Field nonlinear = w.with_values(w.values().array().abs().pow(p - 2.0) * w.values().array());
  return l2_norm(apply_regime_operator(w, params.s, 1) - nonlinear);
}

GroundState subcritical_ground_state(const GridPtr<double>& grid, const SystemParams& params,
                                     const MinimizeOpts& opts) {
  detail::require(params.regime == Regime::kSubcritical,
                  "the ground state is defined for the subcritical regime (gamma = 1) only");
  detail::require(opts.tol > 0.0 && opts.max_iter > 0, "ground state: invalid options");
  const double p = params.total_power();
  detail::require(p < params.critical_exponent() - kCriticalTolerance,
                  "the ground state requires alpha + beta < 2*_s");

  // Scalar quotient with the H^s norm; (alpha, beta) only enter through p.
  MinimizeOpts qopts{1e-10, opts.max_iter};
  const auto q = minimize_quotient(grid, params, QuotientMode::kScalar, qopts);

  const Field& u = q.u;
  const double mu = std::pow(q.value * std::pow(lp_norm(u, p), 2.0 - p), 1.0 / (p - 2.0));
  Field w = std::abs(mu) * u;
  if (w.values().sum() < 0.0) w = -w;

  GroundState gs{w, ground_state_residual(w, params), 0.0, q.iterations, 0};
  const double exponent = (p - 1.0) / (p - 2.0);
  while (gs.residual > opts.tol) {
    if (gs.polish_iterations >= opts.max_iter)
      throw NumericalError("ground state: residual " + format_number(gs.residual) +
                           " above tolerance after " + std::to_string(opts.max_iter) + " iterations");
    const Field& cur = gs.profile;
    const Field nonlinear =
        cur.with_values(cur.values().array().abs().pow(p - 2.0) * cur.values().array());
    const double m = inner(apply_regime_operator(cur, params.s, 1), cur) / inner(nonlinear, cur);
    gs.profile = std::pow(m, exponent) * apply_regime_inverse(nonlinear, params.s, 1);
    gs.residual = ground_state_residual(gs.profile, params);
    ++gs.polish_iterations;
  }
  gs.quotient = sobolev_quotient(gs.profile, params);
  return gs;
}

std::pair<Field, Field> paired_minimizer(const Field& w, double alpha, double beta) {
  detail::require(alpha > 0.0 && beta > 0.0, "paired_minimizer: exponents must be positive");
  detail::require(w.values().cwiseAbs().maxCoeff() > 0.0, "paired_minimizer: zero input field");
  const double b = std::sqrt(alpha / beta);
  return {b * w, w};
}

double decay_exponent_fit(const Field& u, const FitWindow& window) {
  detail::require(window.inner > 0.0 && window.outer > window.inner && window.outer <= 1.0,
                  "decay fit: invalid window");
  const auto& g = u.grid();
  const double half = g.box_length() / 2.0;
  const double lo = window.inner * half;
  const double hi = window.outer * half;

  double n = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double r = g.radius(i);
    if (r < lo || r > hi) continue;
    if (!(u[i] > 0.0)) throw NumericalError("decay fit: nonpositive value in the fit window");
    const double x = std::log(r);
    const double y = std::log(u[i]);
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 2.0) throw ConfigError("decay fit: fewer than two grid points in the window");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

}  // namespace fraclab
