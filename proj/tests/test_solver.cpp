#include <cmath>

#include "doctest.h"
#include "fraclab/solver.hpp"

using namespace fraclab;

namespace {

struct Setup {
  GridPtr<double> grid = make_grid(1, 128, 40.0);
  SystemParams params = make_params(1, 0.25, 2, 2, 1);
  BallConstants ball = ball_constants(grid, params);
  Field bump = gaussian_density(grid, {0, 0, 0}, 1.0, 1.0);

  Functional scaled_bump(double fraction) const {
    return scale_to_norm(make_forcing(bump, params), fraction * ball.threshold, params.regime);
  }
  SolveOptions opts() const {
    SolveOptions o;
    o.ball = ball;
    return o;
  }
};

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("zero forcing stays at the origin") {
  Setup st;
  const auto zero = Functional::zero(st.grid, st.params.s);
  const auto rep = solve_system(zero, zero, st.params, st.grid, st.opts());
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(rep.energy == 0.0);
  CHECK(rep.u_bar.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(positivity_check(rep).trivial);
}

TEST_CASE("symmetric system gives equal components") {
  Setup st;
  const auto f = st.scaled_bump(0.5);
  const auto rep = solve_system(f, f, st.params, st.grid, st.opts());
  REQUIRE(rep.converged);
  CHECK(l2_norm(rep.u_bar - rep.v_bar) / l2_norm(rep.u_bar) < 1e-8);
  CHECK(rep.energy < 0.0);
  CHECK(rep.ball_fraction < 1.0);
  CHECK_FALSE(rep.smallness_exceeded);

  const auto pos = positivity_check(rep);
  CHECK(pos.positive);
  CHECK(pos.nonpositive_fraction_u == 0.0);
  CHECK(pos.nonpositive_fraction_v == 0.0);

  const double res = residual(rep.u_bar, rep.v_bar, f, f, st.params);
  CHECK(res <= 10 * 1e-8);
  const Field kick = 0.1 * st.bump;
  CHECK(residual(rep.u_bar + kick, rep.v_bar, f, f, st.params) > res);
}

TEST_CASE("minimizer does not depend on the start") {
  Setup st;
  const auto f = st.scaled_bump(0.5);
  const auto g = scale_to_norm(make_forcing(gaussian_density(st.grid, {2, 0, 0}, 1.5, 1.0), st.params),
                               0.3 * st.ball.threshold, st.params.regime);
  const auto base = solve_system(f, g, st.params, st.grid, st.opts());
  auto o = st.opts();
  const double scale = 0.5 * st.ball.radius / pair_norm(st.bump, st.bump, st.params);
  o.start = FieldPair{scale * st.bump, -scale * st.bump};
  const auto other = solve_system(f, g, st.params, st.grid, o);
  REQUIRE(base.converged);
  REQUIRE(other.converged);
  CHECK(pair_norm(base.u_bar - other.u_bar, base.v_bar - other.v_bar, st.params) < 1e-6);
  CHECK(base.distinctness > 0.0);
}

TEST_CASE("linear response for small forcing") {
  Setup st;
  const auto f = st.scaled_bump(1.0);
  const double d = st.ball.threshold;
  const auto curve = neumann_series_sanity({1e-1, 1e-3, 1e-2}, f, f, st.params, st.grid, st.opts());
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points.front().t == 1e-3);
  CHECK(curve.monotone);
  const double expected = pair_norm(riesz_representer(f, st.params.regime),
                                    riesz_representer(f, st.params.regime), st.params);
  CHECK(curve.linear_norm == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(curve.points.front().norm_over_t - curve.linear_norm) / curve.linear_norm < 0.05);
  CHECK(curve.linear_norm == doctest::Approx(std::sqrt(2.0) * d).epsilon(1e-10));
  CHECK(curve.to_rows().size() == 3);
}

TEST_CASE("empirical margin brackets the interior region") {
  Setup st;
  const auto f = st.scaled_bump(1.0);
  const auto m = empirical_margin(f, f, st.params, st.grid, st.opts(), 16.0, 4);
  CHECK(m.solves > 0);
  CHECK(m.last_interior >= 1.0);
  if (m.failure_found) CHECK(m.first_failure > m.last_interior);
}

TEST_CASE("semi-trivial pairs are not critical points") {
  Setup st;
  const auto f = st.scaled_bump(0.5);
  const auto zero = Functional::zero(st.grid, st.params.s);
  const auto pinned = pinned_component_residual(f, f, st.params, Component::kV);
  CHECK(pinned.pinned_residual == doctest::Approx(l2_norm(f.density())).epsilon(1e-12));
  CHECK(l2_norm(pinned.free_component - riesz_representer(f, st.params.regime)) < 1e-12);
  const auto ok = pinned_component_residual(f, zero, st.params, Component::kV);
  CHECK(ok.pinned_residual == 0.0);
}

}
