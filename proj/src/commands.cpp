#include "fraclab/commands.hpp"

#include <cmath>
#include <limits>

#include "fraclab/field_io.hpp"
#include "fraclab/profiles.hpp"
#include "fraclab/solver.hpp"

namespace fraclab {

namespace {

class Writer {
 public:
  Writer(const ExperimentConfig& config, CommandOutcome& outcome)
      : config_(config), outcome_(outcome) {
    std::filesystem::create_directories(config.output);
  }

  void json(const std::string& name, FlatRecord record) {
    record.merge(config_.to_record(), "config.");
    write_text(path(name), record.to_json() + "\n");
  }
  void csv(const std::string& name, const std::vector<FlatRecord>& rows) {
    write_csv(path(name), rows);
  }
  void field(const std::string& stem, const Field& u) {
    save_field(path(stem + "." + config_.field_format), u);
  }

 private:
  std::filesystem::path path(const std::string& name) {
    auto p = config_.output / name;
    outcome_.files.push_back(p);
    return p;
  }

  const ExperimentConfig& config_;
  CommandOutcome& outcome_;
};

CheckResult relative_check(std::string name, double measured, double expected, double tol) {
  CheckResult c{std::move(name)};
  c.value = std::abs(measured - expected) / std::abs(expected);
  c.bound = tol;
  c.pass = c.value <= tol;
  c.detail = "measured " + format_number(measured) + ", expected " + format_number(expected);
  return c;
}

CheckResult flag_check(std::string name, bool ok, double value, double bound, std::string detail) {
  return {std::move(name), ok, value, bound, std::move(detail)};
}

void add_checks(FlatRecord& record, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    record.set("check." + c.name, c.pass);
    all = all && c.pass;
  }
  record.set("pass", all);
}

}  // namespace

CommandOutcome cmd_constants(const ExperimentConfig& config) {
  config.validate();
  CommandOutcome out{"constants"};
  const auto grid = config.make_grid();
  const SystemParams params = config.system_params();
  Writer w(config, out);

  if (!config.sweep) {
    const auto rep = measure_constants(grid, params, config.minimize_opts());
    out.checks.push_back(relative_check("ratio_within_2_percent", rep.ratio_measured,
                                        rep.ratio_formula, 0.02));
    out.checks.push_back(flag_check("coercivity_above_2", rep.coercivity_lhs > 2.0,
                                    rep.coercivity_lhs, 2.0, "measured ratio"));
    FlatRecord record = rep.to_record();
    add_checks(record, out.checks);
    w.json("constants.json", record);
    w.csv("constants.csv", {rep.to_record()});
    return out;
  }

  // Formula ratios over the pairs; S_scalar depends only on p and is measured once.
  const double s_scalar =
      minimize_quotient(grid, params, QuotientMode::kScalar, config.minimize_opts()).value;
  const GridMeta meta{grid->dimension(), grid->points_per_axis(), grid->box_length()};
  std::vector<FlatRecord> rows;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : sweep_pairs(params.energy_power(), config.sweep_count)) {
    const SystemParams q =
        make_params(params.dimension, params.s, a, b, params.regime == Regime::kCritical ? 0 : 1);
    const auto rep = formula_constants(q, s_scalar, meta);
    margin = std::min(margin, rep.coercivity_lhs - 2.0);
    rows.push_back(rep.to_record());
  }
  out.checks.push_back(flag_check("sweep_coercivity_above_2", margin > 0.0, margin, 0.0,
                                  std::to_string(rows.size()) + " pairs, smallest margin shown"));
  FlatRecord summary;
  summary.set("rows", static_cast<int>(rows.size()))
      .set("S_scalar", s_scalar)
      .set("min_coercivity_margin", margin);
  add_checks(summary, out.checks);
  w.json("sweep.json", summary);
  w.csv("sweep.csv", rows);
  return out;
}

CommandOutcome cmd_bubble(const ExperimentConfig& config) {
  config.validate();
  CommandOutcome out{"bubble"};
  const auto grid = config.make_grid();
  const SystemParams params = config.system_params();
  const BubbleParams bp{config.bubble_lambda, {0.0, 0.0, 0.0}, config.bubble_normalization};
  const Field bubble = talenti_bubble(grid, params, bp);
  Writer w(config, out);

  const double expected = params.dimension - 2.0 * params.s;
  const double decay = decay_exponent_fit(bubble, {config.fit_inner, config.fit_outer});
  out.checks.push_back(relative_check("decay_exponent", decay, expected, 0.10));

  FlatRecord record;
  record.set("lambda", bp.lambda)
      .set("normalization", bp.normalization)
      .set("decay_exponent", decay)
      .set("expected_decay", expected)
      .set("core_height", bubble.values().maxCoeff())
      .set("core_height_formula", bp.normalization * std::pow(bp.lambda, -expected / 2.0));
  add_checks(record, out.checks);
  w.json("bubble.json", record);
  w.field("bubble", bubble);
  return out;
}

CommandOutcome cmd_ground_state(const ExperimentConfig& config) {
  config.validate();
  CommandOutcome out{"ground-state"};
  const auto grid = config.make_grid();
  const SystemParams params = config.system_params();
  const auto gs = subcritical_ground_state(grid, params, {config.ground_state_tol, config.max_iter});
  Writer w(config, out);

  const double expected = params.dimension + 2.0 * params.s;
  const double decay = decay_exponent_fit(gs.profile, {config.fit_inner, config.fit_outer});
  out.checks.push_back(flag_check("residual", gs.residual <= config.ground_state_tol, gs.residual,
                                  config.ground_state_tol, "L2 residual of the ground-state equation"));
  out.checks.push_back(relative_check("decay_exponent", decay, expected, 0.10));

  FlatRecord record = gs.to_record();
  record.set("decay_exponent", decay).set("expected_decay", expected);
  add_checks(record, out.checks);
  w.json("ground_state.json", record);
  w.field("ground_state", gs.profile);
  return out;
}

CommandOutcome cmd_solve(const ExperimentConfig& config) {
  config.validate();
  CommandOutcome out{"solve"};
  const auto grid = config.make_grid();
  const SystemParams params = config.system_params();
  const BallConstants ball = ball_constants(grid, params, config.minimize_opts());
  const Functional f = build_forcing(config.f, grid, params, ball.threshold);
  const Functional g =
      config.g_same_as_f ? f : build_forcing(config.g, grid, params, ball.threshold);

  SolveOptions opts;
  opts.iteration = {config.tol, config.max_iter};
  opts.ball = ball;
  const SolveReport rep = solve_system(f, g, params, grid, opts);
  const auto pos = positivity_check(rep);

  // Restarts from random interior points, all derived from the config seed.
  Rng rng = make_rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double restart_deviation = 0.0;
  bool restarts_converged = true;
  for (int i = 0; i < config.restarts; ++i) {
    Field u = random_smooth_field(grid, rng, grid->box_length() / 32.0);
    Field v = random_smooth_field(grid, rng, grid->box_length() / 32.0);
    const double scale = 0.9 * unit(rng) * ball.radius / pair_norm(u, v, params);
    SolveOptions local = opts;
    local.start = FieldPair{scale * u, scale * v};
    const auto again = solve_system(f, g, params, grid, local);
    restarts_converged = restarts_converged && again.converged;
    restart_deviation = std::max(
        restart_deviation, pair_norm(again.u_bar - rep.u_bar, again.v_bar - rep.v_bar, params));
  }

  const bool trivial = f.is_zero() && g.is_zero();
  out.checks.push_back(flag_check("converged", rep.converged, rep.grad_norm, config.tol,
                                  "gradient L2 norm after " + std::to_string(rep.iterations) +
                                      " iterations"));
  out.checks.push_back(flag_check("energy_negative", trivial ? rep.energy == 0.0 : rep.energy < 0.0,
                                  rep.energy, 0.0, trivial ? "zero forcing: J = 0" : "J < J(0, 0) = 0"));
  out.checks.push_back(flag_check("positivity", trivial || pos.positive, std::min(pos.min_u, pos.min_v),
                                  0.0, trivial ? "zero forcing: trivial solution" : "min of u and v"));
  out.checks.push_back(flag_check("interior", rep.ball_fraction < 1.0, rep.ball_fraction, 1.0,
                                  "||(u, v)|| / r"));
  if (config.restarts > 0) {
    out.checks.push_back(flag_check("restart_independence",
                                    restarts_converged && restart_deviation <= 1e-6,
                                    restart_deviation, 1e-6,
                                    std::to_string(config.restarts) + " random starts"));
  }

  if (rep.smallness_exceeded)
    out.warnings.push_back("forcing norm " + format_number(rep.forcing_norm) +
                           " exceeds the smallness threshold d = " + format_number(ball.threshold));
  if (rep.projection_active) out.warnings.push_back("ball projection active at termination");
  const KernelMatch km = kernel_match_check(f, g);
  if (!km.match) out.warnings.push_back("supports of f and g differ");

  Writer w(config, out);
  FlatRecord record = rep.to_record();
  record.set("residual", residual(rep.u_bar, rep.v_bar, f, g, params))
      .set("nonpositive_fraction_u", pos.nonpositive_fraction_u)
      .set("nonpositive_fraction_v", pos.nonpositive_fraction_v)
      .set("restart_deviation", restart_deviation)
      .set("kernel_match", km.match)
      .set("warnings", static_cast<int>(out.warnings.size()));
  for (std::size_t i = 0; i < out.warnings.size(); ++i)
    record.set("warning." + std::to_string(i), out.warnings[i]);
  add_checks(record, out.checks);
  w.json("solve.json", record);
  w.csv("trace.csv", rep.trace_rows());
  w.field("u_bar", rep.u_bar);
  w.field("v_bar", rep.v_bar);
  return out;
}

CommandOutcome cmd_verify(const ExperimentConfig& config) {
  config.validate();
  CommandOutcome out{"verify"};
  const auto grid = config.make_grid();
  const SystemParams params = config.system_params();
  Rng rng = make_rng(config.seed);

  out.checks.push_back(check_multiplier_exactness(grid, params.s, config.verify_corrupt_multiplier));
  out.checks.push_back(check_gradient_fidelity(grid, params, rng));
  const double s_scalar =
      minimize_quotient(grid, params, QuotientMode::kScalar, config.minimize_opts()).value;
  out.checks.push_back(check_hessian_positivity(grid, params, s_scalar, rng, config.verify_samples));
  out.checks.push_back(check_lemma_ratio(grid, params, config.minimize_opts()));
  out.checks.push_back(check_coercivity_sweep(params, config.sweep_count));
  out.checks.push_back(check_sign_scan(grid, params));

  Writer w(config, out);
  std::vector<FlatRecord> rows;
  for (const auto& c : out.checks) rows.push_back(c.to_record());
  FlatRecord summary;
  for (const auto& c : out.checks) summary.set(c.name + ".value", c.value);
  add_checks(summary, out.checks);
  w.json("verify.json", summary);
  w.csv("verify.csv", rows);
  return out;
}

}  // namespace fraclab
