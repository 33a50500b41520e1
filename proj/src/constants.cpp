#include "fraclab/constants.hpp"

#include <cmath>
#include <limits>

#include "fraclab/sampling.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;

Field denominator_view(const Field& u, const SystemParams& params) {
  return params.regime == Regime::kCritical ? remove_mean(u) : u;
}

double abs_power_integral(const Field& u, double p) {
  return u.grid().cell_volume() * u.values().array().abs().pow(p).sum();
}

// |u|^{p-2} u
Field signed_power(const Field& u, double e) {
  Field::Vector out(u.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = detail::signed_pow(u[i], e);
  return u.with_values(out);
}

// |u|^{a-2} u |v|^b
Field coupling_derivative(const Field& u, const Field& v, double a, double b) {
  Field::Vector out(u.size());
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] = detail::signed_pow(u[i], a - 1.0) * detail::pow0(std::abs(v[i]), b);
  return u.with_values(out);
}

Field default_start(const GridPtr<double>& grid, const SystemParams& params) {
  Field g = gaussian_bump(grid, {0.0, 0.0, 0.0}, grid->box_length() / 16.0, 1.0);
  return params.regime == Regime::kCritical ? remove_mean(g) : g;
}

// State of one quotient iterate (scalar mode uses u only).
struct QuotientState {
  Field u;
  std::optional<Field> v;
  double numerator = 0.0;
  double denominator = 0.0;  // integral of the coupling/power term
  double value = 0.0;
};

class QuotientProblem {
 public:
  QuotientProblem(const SystemParams& params, QuotientMode mode)
      : params_(params), mode_(mode), p_(params.energy_power()), gamma_(params.gamma()) {}

  QuotientState evaluate(Field u, std::optional<Field> v) const {
    QuotientState st{std::move(u), std::move(v)};
    st.numerator = regime_norm_squared(st.u, params_.s, gamma_);
    if (mode_ == QuotientMode::kScalar) {
      st.denominator = abs_power_integral(denominator_view(st.u, params_), p_);
    } else {
      st.numerator += regime_norm_squared(*st.v, params_.s, gamma_);
      st.denominator = coupling_integral(denominator_view(st.u, params_),
                                         denominator_view(*st.v, params_), params_.alpha,
                                         params_.beta, false);
    }
    if (!(st.denominator > 0.0) || !std::isfinite(st.denominator))
      throw NumericalError("quotient minimization collapsed: power integral vanished");
    st.value = st.numerator / std::pow(st.denominator, 2.0 / p_);
    return st;
  }

  // Residuals r = A u - (N/D) dD/du / p (the gradient of Q up to the positive
  // factor 2 / D^{2/p}) and the preconditioned descent directions -A^{-1} r.
  struct Step {
    Field du;
    std::optional<Field> dv;
    double slope = 0.0;     // <grad Q, d>, negative
    double relative = 0.0;  // <r, A^{-1} r> / N
  };

  Step direction(const QuotientState& st) const {
    const double lambda = st.numerator / st.denominator;
    const double scale = 2.0 / std::pow(st.denominator, 2.0 / p_);
    auto make = [&](const Field& w, const Field& nonlinear) {
      Field r = apply_regime_operator(w, params_.s, gamma_) - lambda * nonlinear;
      if (params_.regime == Regime::kCritical) r = remove_mean(r);
      Field d = -apply_regime_inverse(r, params_.s, gamma_);
      return std::pair<Field, Field>{std::move(r), std::move(d)};
    };

    if (mode_ == QuotientMode::kScalar) {
      const Field base = denominator_view(st.u, params_);
      auto [r, d] = make(st.u, signed_power(base, p_ - 1.0));
      const double rr = -inner(r, d);
      return Step{std::move(d), std::nullopt, -scale * rr, rr / st.numerator};
    }
    const Field bu = denominator_view(st.u, params_);
    const Field bv = denominator_view(*st.v, params_);
    const double a = params_.alpha;
    const double b = params_.beta;
    auto [ru, du] = make(st.u, (a / p_) * coupling_derivative(bu, bv, a, b));
    auto [rv, dv] = make(*st.v, (b / p_) * coupling_derivative(bv, bu, b, a));
    const double rr = -inner(ru, du) - inner(rv, dv);
    return Step{std::move(du), std::move(dv), -scale * rr, rr / st.numerator};
  }

  QuotientState normalized(Field u, std::optional<Field> v) const {
    double n2 = inner(u, u);
    if (v) n2 += inner(*v, *v);
    const double n = std::sqrt(n2);
    if (!(n > 0.0)) throw NumericalError("quotient minimization collapsed to the zero field");
    std::optional<Field> vn;
    if (v) vn = (1.0 / n) * *v;
    return evaluate((1.0 / n) * u, std::move(vn));
  }

 private:
  SystemParams params_;
  QuotientMode mode_;
  double p_;
  int gamma_;
};

}  // namespace

double sobolev_quotient(const Field& u, const SystemParams& params) {
  const double p = params.energy_power();
  const double den = lp_norm(denominator_view(u, params), p);
  if (!(den > 0.0)) throw ConfigError("sobolev_quotient of the zero field");
  const double num = regime_norm_squared(u, params.s, params.gamma());
  return num / (den * den);
}

double vector_quotient(const Field& u, const Field& v, const SystemParams& params) {
  const double p = params.energy_power();
  const double c = coupling_integral(denominator_view(u, params), denominator_view(v, params),
                                     params.alpha, params.beta, false);
  if (!(c > 0.0)) throw ConfigError("vector_quotient: coupling integral vanishes");
  const double num = regime_norm_squared(u, params.s, params.gamma()) +
                     regime_norm_squared(v, params.s, params.gamma());
  return num / std::pow(c, 2.0 / p);
}

QuotientResult minimize_quotient(const GridPtr<double>& grid, const SystemParams& params,
                                 QuotientMode mode, const MinimizeOpts& opts,
                                 const std::optional<Field>& start) {
  detail::require(opts.tol > 0.0 && opts.max_iter > 0, "minimize_quotient: invalid options");
  const QuotientProblem problem(params, mode);

  Field u0 = start ? *start : default_start(grid, params);
  if (params.regime == Regime::kCritical) u0 = remove_mean(u0);
  std::optional<Field> v0;
  if (mode == QuotientMode::kVector) v0 = u0;
  QuotientState st = problem.normalized(std::move(u0), std::move(v0));

  QuotientResult result{st.u, st.v, st.value, 0, false, {st.value}};
  double step = 1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const auto dir = problem.direction(st);
    if (dir.relative <= std::numeric_limits<double>::epsilon()) {
      result.converged = true;
      break;
    }

    double t = std::min(1.0, 2.0 * step);
    std::optional<QuotientState> next;
    while (t >= kMinStep) {
      Field u = st.u + t * dir.du;
      std::optional<Field> v;
      if (st.v) v = *st.v + t * *dir.dv;
      auto trial = problem.normalized(std::move(u), std::move(v));
      if (trial.value <= st.value + kArmijo * t * dir.slope) {
        next = std::move(trial);
        break;
      }
      t *= 0.5;
    }
    if (!next) {
      // No representable decrease left: the value is stationary to round-off.
      result.converged = dir.relative <= 1e-10;
      if (!result.converged)
        throw NumericalError("minimize_quotient: line search failed away from a stationary point");
      break;
    }

    step = t;
    const double change = (st.value - next->value) / st.value;
    st = std::move(*next);
    result.iterations = it;
    result.trace.push_back(st.value);
    if (change <= opts.tol) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged)
    throw NumericalError("minimize_quotient: no convergence within " + std::to_string(opts.max_iter) +
                         " iterations");
  result.u = st.u;
  result.v = st.v;
  result.value = st.value;
  return result;
}

double ratio_formula(double alpha, double beta) {
  const double q = alpha / beta;
  const double p = alpha + beta;
  return std::pow(q, beta / p) + std::pow(q, -alpha / p);
}

double verify_strictness(double alpha, double beta) { return ratio_formula(alpha, beta) - 1.0; }

double coercivity_lhs(const SystemParams& params, double s_scalar, double s_vector) {
  const double k = params.convexity_factor();
  if (!(k > 0.0))
    throw NumericalError("internal inconsistency: alpha^2 + beta^2 + alpha beta - p <= 0");
  detail::require(s_scalar > 0.0 && s_vector > 0.0, "Sobolev constants must be positive");
  return k * std::pow(s_vector / s_scalar, params.energy_power() / 2.0);
}

double convexity_radius(const SystemParams& params, double s_scalar) {
  detail::require(s_scalar > 0.0, "Sobolev constant must be positive");
  const double p = params.energy_power();
  const double k = params.convexity_factor();
  if (!(k > 0.0))
    throw NumericalError("internal inconsistency: alpha^2 + beta^2 + alpha beta - p <= 0");
  const double exponent = params.regime == Regime::kCritical
                              ? params.dimension / (4.0 * params.s)
                              : p / (2.0 * (p - 2.0));
  return std::pow(p / k, 1.0 / (p - 2.0)) * std::pow(s_scalar, exponent);
}

double boundary_coefficient(const SystemParams& params, double s_scalar, double s_vector) {
  const double k = params.convexity_factor();
  return 0.5 - std::pow(s_scalar / s_vector, params.energy_power() / 2.0) / k;
}

double smallness_threshold(const SystemParams& params, double radius, double s_scalar,
                           double s_vector) {
  const double a = boundary_coefficient(params, s_scalar, s_vector);
  if (!(a > 0.0))
    throw NumericalError("boundary bound is not positive at the supplied constants (A <= 0)");
  return 0.5 * a * radius;
}

double coupling_bound_constant(double s_vector) { return 1.0 / std::sqrt(s_vector); }

double hessian_lower_bound_factor(const SystemParams& params, double s_scalar, double pair_norm) {
  const double p = params.energy_power();
  const double a = params.alpha;
  const double b = params.beta;
  const double bracket = a * (a - 1.0) + b * (b - 1.0) + a * b;
  return 1.0 - std::pow(s_scalar, -p / 2.0) / p * std::pow(pair_norm, p - 2.0) * bracket;
}

double ConstantsReport::ratio_error() const {
  return std::abs(ratio_measured - ratio_formula) / ratio_formula;
}

FlatRecord ConstantsReport::to_record() const {
  FlatRecord r;
  r.set("S_scalar", s_scalar)
      .set("S_vector", s_vector)
      .set("ratio_measured", ratio_measured)
      .set("ratio_formula", ratio_formula)
      .set("radius", radius)
      .set("threshold", threshold)
      .set("coercivity_lhs", coercivity_lhs)
      .set("regime", params.gamma())
      .set("dimension", grid.dimension)
      .set("points_per_axis", grid.points_per_axis)
      .set("box_length", grid.box_length)
      .set("s", params.s)
      .set("alpha", params.alpha)
      .set("beta", params.beta)
      .set("energy_power", params.energy_power())
      .set("ratio_relative_error", ratio_error())
      .set("strictness", strictness)
      .set("coercivity_lhs_formula", coercivity_lhs_formula)
      .set("coercivity_margin", coercivity_lhs - 2.0)
      .set("scalar_iterations", scalar_iterations)
      .set("vector_iterations", vector_iterations);
  if (params.alpha == params.beta) {
    r.set("note", "alpha = beta: S_vector = 2 S_scalar holds with equality, not strictly");
  }
  return r;
}

namespace {

void fill_closed_forms(ConstantsReport& rep) {
  const auto& p = rep.params;
  rep.ratio_formula = fraclab::ratio_formula(p.alpha, p.beta);
  rep.strictness = verify_strictness(p.alpha, p.beta);
  rep.coercivity_lhs = fraclab::coercivity_lhs(p, rep.s_scalar, rep.s_vector);
  rep.coercivity_lhs_formula =
      fraclab::coercivity_lhs(p, rep.s_scalar, rep.ratio_formula * rep.s_scalar);
  rep.radius = convexity_radius(p, rep.s_scalar);
  rep.threshold = smallness_threshold(p, rep.radius, rep.s_scalar, rep.s_vector);
}

}  // namespace

ConstantsReport measure_constants(const GridPtr<double>& grid, const SystemParams& params,
                                  const MinimizeOpts& opts) {
  ConstantsReport rep;
  rep.params = params;
  rep.regime = params.regime;
  rep.grid = {grid->dimension(), grid->points_per_axis(), grid->box_length()};
  const auto scalar = minimize_quotient(grid, params, QuotientMode::kScalar, opts);
  const auto vector = minimize_quotient(grid, params, QuotientMode::kVector, opts);
  rep.s_scalar = scalar.value;
  rep.s_vector = vector.value;
  rep.scalar_iterations = scalar.iterations;
  rep.vector_iterations = vector.iterations;
  rep.ratio_measured = rep.s_vector / rep.s_scalar;
  fill_closed_forms(rep);
  return rep;
}

ConstantsReport formula_constants(const SystemParams& params, double s_scalar, const GridMeta& grid) {
  ConstantsReport rep;
  rep.params = params;
  rep.regime = params.regime;
  rep.grid = grid;
  rep.s_scalar = s_scalar;
  rep.s_vector = ratio_formula(params.alpha, params.beta) * s_scalar;
  rep.ratio_measured = rep.s_vector / rep.s_scalar;
  fill_closed_forms(rep);
  return rep;
}

std::vector<std::pair<double, double>> sweep_pairs(double total_power, int count) {
  detail::require(total_power > 2.0, "sweep requires alpha + beta > 2");
  detail::require(count > 0, "sweep requires a positive count");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  const double span = total_power - 2.0;
  for (int i = 1; i <= count; ++i) {
    const double alpha = 1.0 + span * i / (count + 1.0);
    pairs.emplace_back(alpha, total_power - alpha);
  }
  return pairs;
}

}  // namespace fraclab
