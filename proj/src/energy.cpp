#include "fraclab/energy.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/spectral.hpp"

namespace fraclab {

FlatRecord EnergyBreakdown::to_record() const {
  FlatRecord r;
  r.set("quadratic", quadratic).set("coupling", coupling).set("forcing", forcing).set("total", total);
  return r;
}

double pair_norm_squared(const Field& u, const Field& v, const SystemParams& params) {
  return regime_norm_squared(u, params.s, params.gamma()) +
         regime_norm_squared(v, params.s, params.gamma());
}

double pair_norm(const Field& u, const Field& v, const SystemParams& params) {
  return std::sqrt(pair_norm_squared(u, v, params));
}

namespace {

void check_shared_grid(const Field& u, const Field& v, const Functional& f, const Functional& g) {
  u.check_grid(v);
  u.check_grid(f.density());
  u.check_grid(g.density());
}

// Coupling derivative with respect to the first argument, divided by its
// exponent: a_+^{ea-1} b_+^{eb} (J) or |a|^{ea-2} a |b|^{eb} (I).
Field coupling_partial(const Field& a, const Field& b, double ea, double eb, EnergyVariant variant) {
  Field::Vector out(a.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (variant == EnergyVariant::kJ) {
      out[i] = detail::pow0(a[i], ea - 1.0) * detail::pow0(b[i], eb);
    } else {
      out[i] = detail::signed_pow(a[i], ea - 1.0) * detail::pow0(std::abs(b[i]), eb);
    }
  }
  return a.with_values(out);
}

}  // namespace

EnergyBreakdown energy(const Field& u, const Field& v, const Functional& f, const Functional& g,
                       const SystemParams& params, EnergyVariant variant) {
  check_shared_grid(u, v, f, g);
  EnergyBreakdown e;
  e.quadratic = 0.5 * pair_norm_squared(u, v, params);
  e.coupling = coupling_integral(u, v, params.alpha, params.beta, variant == EnergyVariant::kJ) /
               params.energy_power();
  e.forcing = f.pair(u) + g.pair(v);
  e.total = e.quadratic - e.coupling - e.forcing;
  return e;
}

FieldPair gradient(const Field& u, const Field& v, const Functional& f, const Functional& g,
                   const SystemParams& params, EnergyVariant variant) {
  check_shared_grid(u, v, f, g);
  const double p = params.energy_power();
  const double a = params.alpha;
  const double b = params.beta;
  Field gu = apply_regime_operator(u, params.s, params.gamma()) -
             (a / p) * coupling_partial(u, v, a, b, variant) - f.density();
  Field gv = apply_regime_operator(v, params.s, params.gamma()) -
             (b / p) * coupling_partial(v, u, b, a, variant) - g.density();
  return {std::move(gu), std::move(gv)};
}

double hessian_quadform(const Field& u, const Field& v, const Field& phi, const Field& psi,
                        const SystemParams& params) {
  u.check_grid(v);
  u.check_grid(phi);
  u.check_grid(psi);
  const double p = params.energy_power();
  const double a = params.alpha;
  const double b = params.beta;

  double uu = 0.0;
  double vv = 0.0;
  double uv = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double x = u[i];
    const double y = v[i];
    if (x <= 0.0 || y <= 0.0) continue;  // every coupling term carries u_+ and v_+ factors
    uu += detail::pow0(x, a - 2.0) * detail::pow0(y, b) * phi[i] * phi[i];
    vv += detail::pow0(x, a) * detail::pow0(y, b - 2.0) * psi[i] * psi[i];
    uv += detail::pow0(x, a - 1.0) * detail::pow0(y, b - 1.0) * phi[i] * psi[i];
  }
  const double h = u.grid().cell_volume();
  const double q = pair_norm_squared(phi, psi, params) -
                   h * (a * (a - 1.0) / p * uu + b * (b - 1.0) / p * vv + 2.0 * a * b / p * uv);
  if (!std::isfinite(q)) throw NumericalError("hessian_quadform: non-finite value");
  return q;
}

std::vector<FlatRecord> SignScanReport::to_rows() const {
  std::vector<FlatRecord> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    FlatRecord rec;
    rec.set("t", r.t).set("J", r.energy);
    out.push_back(std::move(rec));
  }
  return out;
}

SignScanReport small_t_sign_scan(const Field& u, const Field& v, const Functional& f,
                                 const Functional& g, const SystemParams& params,
                                 const std::vector<double>& t_values) {
  check_shared_grid(u, v, f, g);
  SignScanReport rep;
  for (double t : t_values) {
    rep.rows.push_back({t, energy(t * u, t * v, f, g, params, EnergyVariant::kJ).total});
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const SignScanRow& x, const SignScanRow& y) { return x.t < y.t; });

  rep.degenerate = f.is_zero() && g.is_zero();
  const SignScanRow* smallest_positive = nullptr;
  const SignScanRow* closest_negative = nullptr;
  for (const auto& r : rep.rows) {
    if (r.t > 0.0 && smallest_positive == nullptr) smallest_positive = &r;
    if (r.t < 0.0) closest_negative = &r;
  }
  if (rep.degenerate || smallest_positive == nullptr || closest_negative == nullptr) return rep;

  if (!(smallest_positive->energy < 0.0)) {
    rep.offending_t = smallest_positive->t;
  } else if (!(closest_negative->energy > 0.0)) {
    rep.offending_t = closest_negative->t;
  }
  rep.dichotomy_holds = !rep.offending_t.has_value();
  return rep;
}

}  // namespace fraclab
