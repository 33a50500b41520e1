#include "fraclab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fraclab/constants.hpp"
#include "fraclab/energy.hpp"
#include "fraclab/forcing.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {

FlatRecord CheckResult::to_record() const {
  FlatRecord r;
  r.set("check", name).set("pass", pass).set("value", value).set("bound", bound).set("detail", detail);
  return r;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

double max_relative_error(const Field& got, const Field& expected) {
  const double scale = expected.values().cwiseAbs().maxCoeff();
  return (got.values() - expected.values()).cwiseAbs().maxCoeff() / scale;
}

// Unit-L2 direction, mean-free in the critical regime.
Field direction(const GridPtr<double>& grid, const SystemParams& params, Rng& rng) {
  Field d = random_smooth_field(grid, rng, grid->box_length() / 32.0);
  if (params.regime == Regime::kCritical) d = remove_mean(d);
  return (1.0 / l2_norm(d)) * d;
}

}  // namespace

CheckResult check_multiplier_exactness(const GridPtr<double>& grid, double s, double perturbation) {
  CheckResult c{"multiplier_exactness"};
  c.bound = 1e-12;
  const int n = grid->dimension();
  const double L = grid->box_length();
  const int half = grid->points_per_axis() / 2;
  const auto tested = [perturbation](double xi2, double order) {
    return (1.0 + perturbation) * fractional_symbol(xi2, order);
  };

  double worst = 0.0;
  for (int m = 0; m < 10; ++m) {
    // Spread over 1 .. P/2 - 1, below the Nyquist mode.
    std::array<int, 3> k{0, 0, 0};
    k[m % n] = 1 + m * (half - 2) / 9;
    if (n > 1) k[(m + 1) % n] = 1 + m / 3;
    double xi2 = 0.0;
    for (int d = 0; d < n; ++d) xi2 += std::pow(2.0 * std::numbers::pi * k[d] / L, 2);
    const Field mode = Field::sample(grid, [&](const std::array<double, 3>& x) {
      double phase = 0.0;
      for (int d = 0; d < n; ++d) phase += 2.0 * std::numbers::pi * k[d] * x[d] / L;
      return std::cos(phase);
    });
    const Field got = apply_multiplier(mode, [&](double q) { return tested(q, s); });
    worst = std::max(worst, max_relative_error(got, std::pow(xi2, s) * mode));
  }
  const Field probe = mode_density(grid, {3, 0, 0}, 1.0);
  const Field lap = apply_multiplier(probe, [&](double q) { return tested(q, 1.0); });
  worst = std::max(worst, max_relative_error(lap, spectral_laplacian(probe)));

  c.value = worst;
  c.pass = worst <= c.bound;
  c.detail = "10 single modes at s = " + format_number(s) + " and s = 1 against the Laplacian";
  return c;
}

CheckResult check_gradient_fidelity(const GridPtr<double>& grid, const SystemParams& params, Rng& rng,
                                    int directions, int bases) {
  CheckResult c{"gradient_fidelity"};
  c.bound = 1e-6;
  constexpr double h = 1e-5;
  const double width = grid->box_length() / 16.0;
  const Functional f = make_forcing(gaussian_density(grid, {0.0, 0.0, 0.0}, width, 1.0), params);
  const Functional g = make_forcing(gaussian_density(grid, {width, 0.0, 0.0}, width, 0.5), params);
  double worst = 0.0;
  for (int b = 0; b < bases; ++b) {
    Field u = random_positive_field(grid, rng, 3, width);
    Field v = random_positive_field(grid, rng, 3, width);
    const auto [gu, gv] = gradient(u, v, f, g, params, EnergyVariant::kJ);
    for (int k = 0; k < directions; ++k) {
      const Field phi = direction(grid, params, rng);
      const Field psi = direction(grid, params, rng);
      const double analytic = inner(gu, phi) + inner(gv, psi);
      const double plus = energy(u + h * phi, v + h * psi, f, g, params, EnergyVariant::kJ).total;
      const double minus = energy(u - h * phi, v - h * psi, f, g, params, EnergyVariant::kJ).total;
      const double numeric = (plus - minus) / (2.0 * h);
      worst = std::max(worst, std::abs(numeric - analytic) / std::abs(analytic));
    }
  }
  c.value = worst;
  c.pass = worst <= c.bound;
  c.detail = std::to_string(directions) + " directions at " + std::to_string(bases) +
             " base points, central step 1e-5";
  return c;
}

CheckResult check_hessian_positivity(const GridPtr<double>& grid, const SystemParams& params,
                                     double s_scalar, Rng& rng, int samples) {
  CheckResult c{"hessian_positivity"};
  const double r = convexity_radius(params, s_scalar);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double width = grid->box_length() / 16.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  int bound_violations = 0;
  for (int i = 0; i < samples; ++i) {
    // Alternate sign-changing and positive base points; odd samples sit at 0.95 r.
    Field u = i % 4 < 2 ? direction(grid, params, rng) : random_positive_field(grid, rng, 3, width);
    Field v = i % 4 < 2 ? direction(grid, params, rng) : random_positive_field(grid, rng, 3, width);
    if (params.regime == Regime::kCritical) {
      u = remove_mean(u);
      v = remove_mean(v);
    }
    const double target = 0.95 * r * (i % 2 == 1 ? 1.0 : unit(rng));
    const double scale = target / pair_norm(u, v, params);
    u = scale * u;
    v = scale * v;
    const Field phi = direction(grid, params, rng);
    const Field psi = direction(grid, params, rng);
    const double n2 = pair_norm_squared(phi, psi, params);
    const double q = hessian_quadform(u, v, phi, psi, params);
    const double lower = hessian_lower_bound_factor(params, s_scalar, pair_norm(u, v, params));
    min_ratio = std::min(min_ratio, q / n2);
    if (q / n2 < lower * (1.0 - 1e-12)) ++bound_violations;
  }
  c.value = min_ratio;
  c.bound = 0.0;
  c.pass = min_ratio > 0.0 && bound_violations == 0;
  c.detail = std::to_string(samples) + " samples, r = " + format_number(r) + ", " +
             std::to_string(bound_violations) + " lower-bound violations";
  return c;
}

CheckResult check_lemma_ratio(const GridPtr<double>& grid, const SystemParams& params,
                              const MinimizeOpts& opts) {
  CheckResult c{"lemma_ratio"};
  c.bound = 0.02;
  const auto rep = measure_constants(grid, params, opts);
  c.value = rep.ratio_error();
  c.pass = c.value <= c.bound;
  c.detail = "measured " + format_number(rep.ratio_measured) + ", formula " +
             format_number(rep.ratio_formula);
  return c;
}

CheckResult check_coercivity_sweep(const SystemParams& params, int count) {
  CheckResult c{"coercivity_sweep"};
  c.bound = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  int rows = 0;
  const auto sweep = [&](double p, int gamma) {
    for (const auto& [a, b] : sweep_pairs(p, count)) {
      const SystemParams q = make_params(params.dimension, params.s, a, b, gamma);
      const double lhs = coercivity_lhs(q, 1.0, ratio_formula(a, b));
      margin = std::min(margin, lhs - 2.0);
      ++rows;
    }
  };
  sweep(params.total_power(), 1);
  sweep(params.critical_exponent(), 0);
  c.value = margin;
  c.pass = margin > 0.0;
  c.detail = std::to_string(rows) + " pairs over both regimes";
  return c;
}

CheckResult check_sign_scan(const GridPtr<double>& grid, const SystemParams& params) {
  CheckResult c{"sign_scan"};
  const Field bump = gaussian_density(grid, {0.0, 0.0, 0.0}, grid->box_length() / 16.0, 1.0);
  const Functional f = make_forcing(bump, params);
  const auto scan = small_t_sign_scan(bump, bump, f, f, params, {-1e-3, 1e-3});
  c.value = scan.rows.back().energy;
  c.bound = 0.0;
  c.pass = scan.dichotomy_holds;
  std::ostringstream detail;
  detail << "J(+1e-3) = " << format_number(scan.rows.back().energy)
         << ", J(-1e-3) = " << format_number(scan.rows.front().energy);
  c.detail = detail.str();
  return c;
}

}  // namespace fraclab
