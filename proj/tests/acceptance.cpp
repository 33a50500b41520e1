// One line per acceptance criterion; exit status 1 when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/energy.hpp"
#include "fraclab/profiles.hpp"
#include "fraclab/sampling.hpp"
#include "fraclab/solver.hpp"
#include "fraclab/spectral.hpp"

using namespace fraclab;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) { return format_number(x); }

Field cosine_mode(const GridPtr<double>& g, const std::array<int, 3>& k) {
  return Field::sample(g, [&](const std::array<double, 3>& x) {
    double phase = 0.0;
    for (int d = 0; d < g->dimension(); ++d) phase += 2 * pi * k[d] * x[d] / g->box_length();
    return std::cos(phase);
  });
}

double max_rel(const Field& a, const Field& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff() / b.values().cwiseAbs().maxCoeff();
}

Outcome multiplier_exactness() {
  auto g = make_grid(1, 64, 40.0);
  const double s = 0.25;
  double worst = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const int mode = 3 * k;  // 3 .. 30, below the Nyquist index 32
    const Field u = cosine_mode(g, {mode, 0, 0});
    const double xi = 2 * pi * mode / g->box_length();
    worst = std::max(worst, max_rel(frac_laplacian(u, s), std::pow(xi, 2 * s) * u));
  }
  const Field u = cosine_mode(g, {5, 0, 0});
  const double xi = 2 * pi * 5 / g->box_length();
  const double lap = std::max(max_rel(frac_laplacian(u, 1.0), spectral_laplacian(u)),
                              max_rel(spectral_laplacian(u), xi * xi * u));
  return {worst <= 1e-12 && lap <= 1e-12,
          "max relative error " + num(worst) + " over 10 modes, s = 1 error " + num(lap)};
}

Outcome gradient_fidelity() {
  auto g = make_grid(1, 64, 40.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const auto f = make_forcing(gaussian_density(g, {0, 0, 0}, 2.0, 1.0), params);
  const auto h = make_forcing(gaussian_density(g, {3, 0, 0}, 1.0, 0.5), params);
  auto rng = make_rng(2024);
  double worst = 0.0;
  for (int b = 0; b < 5; ++b) {
    const Field u = random_positive_field(g, rng, 3, 2.0);
    const Field v = random_positive_field(g, rng, 3, 2.0);
    const auto [gu, gv] = gradient(u, v, f, h, params);
    for (int k = 0; k < 20; ++k) {
      const Field phi = random_smooth_field(g, rng, 1.0);
      const Field psi = random_smooth_field(g, rng, 1.0);
      const double t = 1e-5;
      const double fd = (energy(u + t * phi, v + t * psi, f, h, params).total -
                         energy(u - t * phi, v - t * psi, f, h, params).total) /
                        (2 * t);
      const double exact = inner(gu, phi) + inner(gv, psi);
      worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
  }
  return {worst <= 1e-6, "max relative error " + num(worst) + " over 100 directional derivatives"};
}

Outcome convexity_certificate() {
  auto g = make_grid(1, 256, 40.0);
  auto rng = make_rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double min_ratio = std::numeric_limits<double>::infinity();
  int violations = 0;
  int samples = 0;
  std::string radii;
  for (auto [a, b] : {std::pair{2.0, 2.0}, std::pair{2.5, 1.5}}) {
    const auto params = make_params(1, 0.25, a, b, 1);
    const double S = minimize_quotient(g, params, QuotientMode::kScalar).value;
    const double r = convexity_radius(params, S);
    radii += " r(" + num(a) + "," + num(b) + ") = " + num(r);
    const double bracket = a * (a - 1) + b * (b - 1) + a * b;
    const double p = params.energy_power();
    for (int i = 0; i < 100; ++i, ++samples) {
      Field u = i % 2 ? random_smooth_field(g, rng, 2.0) : random_positive_field(g, rng, 3, 2.0);
      Field v = i % 2 ? random_smooth_field(g, rng, 2.0) : random_positive_field(g, rng, 3, 2.0);
      const double radius = 0.95 * r * (i % 3 == 0 ? 1.0 : unit(rng));
      const double scale = radius / pair_norm(u, v, params);
      u = scale * u;
      v = scale * v;
      const Field phi = random_smooth_field(g, rng, 1.0);
      const Field psi = random_smooth_field(g, rng, 1.0);
      const double n2 = pair_norm_squared(phi, psi, params);
      const double q = hessian_quadform(u, v, phi, psi, params);
      const double lower = 1.0 - std::pow(S, -p / 2) / p * std::pow(radius, p - 2) * bracket;
      min_ratio = std::min(min_ratio, q / n2);
      if (q / n2 < lower * (1 - 1e-12)) ++violations;
    }
  }
  return {min_ratio > 0.0 && violations == 0,
          std::to_string(samples) + " samples, min Q/||.||^2 = " + num(min_ratio) + ", " +
              std::to_string(violations) + " bound violations;" + radii};
}

Outcome lemma_ratio() {
  auto g = make_grid(1, 256, 40.0);
  double worst = 0.0;
  std::string detail;
  for (auto [a, b] : {std::pair{2.0, 2.0}, std::pair{3.0, 1.0}, std::pair{1.5, 1.5}}) {
    const auto params = make_quotient_params(1, 0.25, a, b, 1);
    const double scalar = minimize_quotient(g, params, QuotientMode::kScalar).value;
    const double vector = minimize_quotient(g, params, QuotientMode::kVector).value;
    const double formula = std::pow(a / b, b / (a + b)) + std::pow(a / b, -a / (a + b));
    const double err = std::abs(vector / scalar - formula) / formula;
    worst = std::max(worst, err);
    detail += " (" + num(a) + "," + num(b) + "): " + num(vector / scalar) + " vs " + num(formula) + ";";
  }
  return {worst <= 0.02, "max relative error " + num(worst) + ";" + detail};
}

Outcome coercivity_sweep() {
  double margin = std::numeric_limits<double>::infinity();
  int rows = 0;
  const double crit = 2.0 / (1.0 - 0.5);  // 2N/(N-2s) at N = 1, s = 1/4
  for (auto [p, gamma] : {std::pair{3.0, 1}, std::pair{crit, 0}}) {
    for (int i = 0; i < 50; ++i, ++rows) {
      const double a = 1.0 + (p - 2.0) * (i + 0.5) / 50.0;
      const double b = p - a;
      const double ratio = std::pow(a / b, b / p) + std::pow(a / b, -a / p);
      const double lhs = coercivity_lhs(make_params(1, 0.25, a, b, gamma), 1.0, ratio);
      margin = std::min(margin, lhs - 2.0);
    }
  }
  return {margin > 0.0, std::to_string(rows) + " pairs, smallest margin " + num(margin)};
}

Outcome desk_solve() {
  auto g = make_grid(1, 256, 40.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const auto ball = ball_constants(g, params);
  const auto f = scale_to_norm(make_forcing(gaussian_density(g, {0, 0, 0}, 1.0, 1.0), params),
                               ball.threshold / 2, params.regime);
  SolveOptions opts;
  opts.ball = ball;
  const auto rep = solve_system(f, f, params, g, opts);
  auto rng = make_rng(5);
  double deviation = 0.0;
  for (int i = 0; i < 3; ++i) {
    SolveOptions o = opts;
    const Field u = random_smooth_field(g, rng, 1.0);
    const Field v = random_smooth_field(g, rng, 1.0);
    const double scale = 0.5 * ball.radius / pair_norm(u, v, params);
    o.start = FieldPair{scale * u, scale * v};
    const auto again = solve_system(f, f, params, g, o);
    deviation = std::max(deviation, again.converged
                                        ? pair_norm(again.u_bar - rep.u_bar, again.v_bar - rep.v_bar, params)
                                        : std::numeric_limits<double>::infinity());
  }
  const bool ok = rep.converged && rep.grad_norm <= 1e-8 && rep.energy < 0 && rep.min_u > 0 &&
                  rep.min_v > 0 && rep.ball_fraction < 1 && deviation <= 1e-6;
  return {ok, "grad " + num(rep.grad_norm) + ", E " + num(rep.energy) + ", min " +
                  num(std::min(rep.min_u, rep.min_v)) + ", ball fraction " + num(rep.ball_fraction) +
                  ", restart deviation " + num(deviation)};
}

double distinctness(double a, double b) {
  auto g = make_grid(1, 256, 40.0);
  const auto params = make_params(1, 0.25, a, b, 1);
  const auto ball = ball_constants(g, params);
  const auto f = scale_to_norm(make_forcing(gaussian_density(g, {0, 0, 0}, 1.0, 1.0), params),
                               ball.threshold / 2, params.regime);
  SolveOptions opts;
  opts.ball = ball;
  const auto rep = solve_system(f, f, params, g, opts);
  if (!rep.converged) return std::numeric_limits<double>::quiet_NaN();
  return l2_norm(rep.u_bar - rep.v_bar) / l2_norm(rep.u_bar + rep.v_bar);
}

Outcome distinct_components() {
  const double unequal = distinctness(2.5, 1.5);
  const double equal = distinctness(2.0, 2.0);
  return {unequal > 1e-3 && equal < 1e-6,
          "(2.5, 1.5): " + num(unequal) + " (need > 1e-3); (2, 2): " + num(equal) + " (need < 1e-6)"};
}

Outcome sign_dichotomy() {
  auto g = make_grid(1, 256, 40.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const Field bump = gaussian_density(g, {0, 0, 0}, 1.0, 1.0);
  const auto f = make_forcing(bump, params);
  const double plus = energy(1e-3 * bump, 1e-3 * bump, f, f, params).total;
  const double minus = energy(-1e-3 * bump, -1e-3 * bump, f, f, params).total;
  return {plus < 0 && minus > 0, "J(+1e-3) = " + num(plus) + ", J(-1e-3) = " + num(minus)};
}

Outcome ground_state_decay() {
  auto g = make_grid(1, 512, 80.0);
  const auto params = make_params(1, 0.25, 1.5, 1.5, 1);
  const auto gs = subcritical_ground_state(g, params);
  const double decay = decay_exponent_fit(gs.profile);
  const double err = std::abs(decay - 1.5) / 1.5;
  return {err <= 0.10, "fitted exponent " + num(decay) + " vs 1.5 (relative error " + num(err) +
                           "), residual " + num(gs.residual)};
}

Outcome linear_response() {
  auto g = make_grid(1, 256, 40.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const auto ball = ball_constants(g, params);
  const auto f = scale_to_norm(make_forcing(gaussian_density(g, {0, 0, 0}, 1.0, 1.0), params),
                               ball.threshold, params.regime);
  const double t = 1e-3 * ball.threshold;
  SolveOptions opts;
  opts.ball = ball;
  const auto ft = scaled(f, t);
  const auto rep = solve_system(ft, ft, params, g, opts);
  // Decoupled linear solve A w = f, once per component.
  const Field w = apply_regime_inverse(f.density(), params.s, 1);
  const double linear = pair_norm(w, w, params);
  const double ratio = pair_norm(rep.u_bar, rep.v_bar, params) / t;
  const double err = std::abs(ratio - linear) / linear;
  return {rep.converged && err <= 0.05,
          "||(u_t, v_t)|| / t = " + num(ratio) + ", linear " + num(linear) + ", relative gap " + num(err)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "multiplier exactness", 1, multiplier_exactness},
      {2, "gradient fidelity", 10, gradient_fidelity},
      {3, "convexity certificate", 30, convexity_certificate},
      {4, "vector/scalar constant ratio", 300, lemma_ratio},
      {5, "coercivity sweep", 1, coercivity_sweep},
      {6, "desk-scale solve", 120, desk_solve},
      {7, "distinct components", 240, distinct_components},
      {8, "sign dichotomy", 1, sign_dichotomy},
      {9, "ground-state decay", 300, ground_state_decay},
      {10, "small-data linear response", 120, linear_response},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
