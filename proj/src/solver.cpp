#include "fraclab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/spectral.hpp"

namespace fraclab {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;

struct Iterate {
  Field u;
  Field v;
  double energy = 0.0;
  double norm = 0.0;
};

}  // namespace

BallConstants ball_constants(const GridPtr<double>& grid, const SystemParams& params,
                             const MinimizeOpts& quotient_opts) {
  BallConstants b;
  b.s_scalar = minimize_quotient(grid, params, QuotientMode::kScalar, quotient_opts).value;
  b.s_vector = ratio_formula(params.alpha, params.beta) * b.s_scalar;
  b.radius = convexity_radius(params, b.s_scalar);
  b.threshold = smallness_threshold(params, b.radius, b.s_scalar, b.s_vector);
  return b;
}

FlatRecord SolveReport::to_record() const {
  FlatRecord r;
  r.set("energy", energy)
      .set("grad_norm", grad_norm)
      .set("ball_fraction", ball_fraction)
      .set("min_u", min_u)
      .set("min_v", min_v)
      .set("distinctness", distinctness)
      .set("iterations", iterations)
      .set("converged", converged)
      .set("radius", ball.radius)
      .set("threshold", ball.threshold)
      .set("S_scalar", ball.s_scalar)
      .set("S_vector", ball.s_vector)
      .set("forcing_norm", forcing_norm)
      .set("smallness_exceeded", smallness_exceeded)
      .set("projection_active", projection_active);
  return r;
}

std::vector<FlatRecord> SolveReport::trace_rows() const {
  std::vector<FlatRecord> rows;
  rows.reserve(trace.size());
  for (const auto& t : trace) {
    FlatRecord r;
    r.set("iter", t.iteration)
        .set("energy", t.energy)
        .set("grad_norm", t.grad_norm)
        .set("ball_fraction", t.ball_fraction);
    rows.push_back(std::move(r));
  }
  return rows;
}

SolveReport solve_system(const Functional& f, const Functional& g, const SystemParams& params,
                         const GridPtr<double>& grid, const SolveOptions& opts) {
  detail::require(opts.iteration.tol > 0.0 && opts.iteration.max_iter >= 0,
                  "solve_system: invalid options");
  detail::require(opts.projection_fraction > 0.0 && opts.projection_fraction <= 1.0,
                  "solve_system: projection fraction must lie in (0, 1]");
  f.density().check_grid(g.density());
  detail::require(*f.density().grid_ptr() == *grid, "solve_system: forcing lives on another grid");

  const bool critical = params.regime == Regime::kCritical;
  const int gamma = params.gamma();
  const BallConstants ball = opts.ball ? *opts.ball : ball_constants(grid, params);
  const double limit = opts.projection_fraction * ball.radius;

  SolveReport rep{.u_bar = Field::zeros(grid), .v_bar = Field::zeros(grid)};
  rep.ball = ball;
  rep.forcing_norm = std::max(f.dual_norm(params.regime), g.dual_norm(params.regime));
  rep.smallness_exceeded = rep.forcing_norm > ball.threshold;

  auto project_mean = [&](Field w) { return critical ? remove_mean(w) : w; };
  auto make_iterate = [&](Field u, Field v) {
    Iterate it{std::move(u), std::move(v)};
    it.norm = pair_norm(it.u, it.v, params);
    it.energy = energy(it.u, it.v, f, g, params, EnergyVariant::kJ).total;
    return it;
  };
  // Radial projection onto the closed ball of radius `limit`.
  auto project_ball = [&](Field u, Field v, bool& projected) {
    const double n = pair_norm(u, v, params);
    projected = n > limit;
    if (projected) {
      const double c = limit / n;
      u = c * u;
      v = c * v;
    }
    return make_iterate(std::move(u), std::move(v));
  };

  Iterate x = [&] {
    if (!opts.start) return make_iterate(Field::zeros(grid), Field::zeros(grid));
    bool ignored = false;
    return project_ball(project_mean(opts.start->first), project_mean(opts.start->second), ignored);
  }();

  for (int it = 0;; ++it) {
    auto [gu, gv] = gradient(x.u, x.v, f, g, params, EnergyVariant::kJ);
    gu = project_mean(std::move(gu));
    gv = project_mean(std::move(gv));
    const double gnorm = std::sqrt(inner(gu, gu) + inner(gv, gv));
    rep.trace.push_back({it, x.energy, gnorm, x.norm / ball.radius});
    rep.iterations = it;
    rep.grad_norm = gnorm;
    if (gnorm <= opts.iteration.tol) {
      rep.converged = true;
      break;
    }
    if (it >= opts.iteration.max_iter) break;

    const Field du = -apply_regime_inverse(gu, params.s, gamma);
    const Field dv = -apply_regime_inverse(gv, params.s, gamma);

    double t = 1.0;
    std::optional<Iterate> next;
    bool projected = false;
    while (t >= kMinStep) {
      bool was_projected = false;
      Iterate trial = project_ball(x.u + t * du, x.v + t * dv, was_projected);
      // Armijo along the (possibly projected) step.
      const double decrease = inner(gu, trial.u - x.u) + inner(gv, trial.v - x.v);
      if (trial.energy <= x.energy + kArmijo * decrease) {
        next = std::move(trial);
        projected = was_projected;
        break;
      }
      t *= 0.5;
    }
    if (!next) break;  // stalled: reported as non-convergence
    rep.projection_active = projected;
    x = std::move(*next);
  }

  rep.u_bar = x.u;
  rep.v_bar = x.v;
  rep.energy = x.energy;
  rep.ball_fraction = x.norm / ball.radius;
  rep.min_u = x.u.values().minCoeff();
  rep.min_v = x.v.values().minCoeff();
  const double sum = l2_norm(x.u + x.v);
  rep.distinctness = sum > 0.0 ? l2_norm(x.u - x.v) / sum : 0.0;
  return rep;
}

double residual(const Field& u, const Field& v, const Functional& f, const Functional& g,
                const SystemParams& params) {
  const auto [ru, rv] = gradient(u, v, f, g, params, EnergyVariant::kI);
  return std::sqrt(inner(ru, ru) + inner(rv, rv));
}

PositivityDiagnostics positivity_check(const SolveReport& report) {
  PositivityDiagnostics d;
  const auto& u = report.u_bar.values();
  const auto& v = report.v_bar.values();
  d.min_u = u.minCoeff();
  d.min_v = v.minCoeff();
  d.nonpositive_fraction_u = static_cast<double>((u.array() <= 0.0).count()) / u.size();
  d.nonpositive_fraction_v = static_cast<double>((v.array() <= 0.0).count()) / v.size();
  d.trivial = u.cwiseAbs().maxCoeff() == 0.0 && v.cwiseAbs().maxCoeff() == 0.0;
  d.positive = d.min_u > 0.0 && d.min_v > 0.0;
  return d;
}

std::vector<FlatRecord> LinearResponseCurve::to_rows() const {
  std::vector<FlatRecord> rows;
  for (const auto& p : points) {
    FlatRecord r;
    r.set("t", p.t)
        .set("norm", p.norm)
        .set("norm_over_t", p.norm_over_t)
        .set("linear_norm", linear_norm)
        .set("relative_deviation", std::abs(p.norm_over_t - linear_norm) / linear_norm)
        .set("converged", p.converged);
    rows.push_back(std::move(r));
  }
  return rows;
}

LinearResponseCurve neumann_series_sanity(const std::vector<double>& t_scale, const Functional& f,
                                          const Functional& g, const SystemParams& params,
                                          const GridPtr<double>& grid, const SolveOptions& opts) {
  detail::require(!t_scale.empty(), "neumann_series_sanity: empty t list");
  for (double t : t_scale) detail::require(t > 0.0, "neumann_series_sanity: t must be positive");

  SolveOptions local = opts;
  if (!local.ball) local.ball = ball_constants(grid, params);

  LinearResponseCurve curve;
  const Field rf = riesz_representer(f, params.regime);
  const Field rg = riesz_representer(g, params.regime);
  curve.linear_norm = pair_norm(rf, rg, params);

  std::vector<double> ts = t_scale;
  std::sort(ts.begin(), ts.end());
  for (double t : ts) {
    const auto rep = solve_system(scaled(f, t), scaled(g, t), params, grid, local);
    if (!rep.converged)
      throw NumericalError("neumann_series_sanity: solve failed at t = " + format_number(t));
    const double n = pair_norm(rep.u_bar, rep.v_bar, params);
    curve.points.push_back({t, n, n / t, rep.converged});
  }
  curve.monotone = std::adjacent_find(curve.points.begin(), curve.points.end(),
                                      [](const ResponsePoint& a, const ResponsePoint& b) {
                                        return !(b.norm > a.norm);
                                      }) == curve.points.end();
  return curve;
}

MarginResult empirical_margin(const Functional& f, const Functional& g, const SystemParams& params,
                              const GridPtr<double>& grid, const SolveOptions& opts,
                              double max_multiple, int bisections) {
  SolveOptions local = opts;
  if (!local.ball) local.ball = ball_constants(grid, params);
  const double d = local.ball->threshold;
  const double base = std::max(f.dual_norm(params.regime), g.dual_norm(params.regime));
  detail::require(base > 0.0, "empirical_margin: forcing must be nontrivial");

  MarginResult m;
  auto interior = [&](double c) {
    ++m.solves;
    const double t = c * d / base;
    const auto rep = solve_system(scaled(f, t), scaled(g, t), params, grid, local);
    return rep.converged && !rep.projection_active && rep.ball_fraction < local.projection_fraction;
  };

  double good = 0.0;
  double bad = 0.0;
  for (double c = 1.0; c <= max_multiple; c *= 2.0) {
    if (interior(c)) {
      good = c;
    } else {
      bad = c;
      break;
    }
  }
  if (bad > 0.0) {
    m.failure_found = true;
    for (int i = 0; i < bisections; ++i) {
      const double mid = 0.5 * (good + bad);
      (interior(mid) ? good : bad) = mid;
    }
  }
  m.last_interior = good;
  m.first_failure = bad;
  return m;
}

PinnedResult pinned_component_residual(const Functional& f, const Functional& g,
                                       const SystemParams& params, Component pinned) {
  const Functional& free_forcing = pinned == Component::kU ? g : f;
  const Functional& pinned_forcing = pinned == Component::kU ? f : g;
  // With one component zero every coupling term vanishes (alpha, beta > 1).
  Field w = riesz_representer(free_forcing, params.regime);
  return {std::move(w), l2_norm(pinned_forcing.density())};
}

}  // namespace fraclab
