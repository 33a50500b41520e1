#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "fraclab/constants.hpp"
#include "fraclab/energy.hpp"
#include "fraclab/sampling.hpp"

using namespace fraclab;
using std::numbers::pi;

namespace {

Field trig(const GridPtr<double>& g, double a, double b, int k) {
  return Field::sample(g, [=](const std::array<double, 3>& x) { return a + b * std::cos(k * x[0]); });
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("energy at the origin and on the negative cone") {
  auto g = make_grid(1, 64, 20.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const auto zero = Functional::zero(g, params.s);
  const auto e0 = energy(Field::zeros(g), Field::zeros(g), zero, zero, params);
  CHECK(e0.total == 0.0);

  auto rng = make_rng(3);
  const Field u = -1.0 * random_positive_field(g, rng, 3, 1.0);
  const Field v = -1.0 * random_positive_field(g, rng, 3, 1.0);
  const auto e = energy(u, v, zero, zero, params);
  CHECK(e.coupling == 0.0);
  CHECK(e.total == doctest::Approx(0.5 * pair_norm_squared(u, v, params)).epsilon(1e-14));
}

TEST_CASE("term by term against hand integrals") {
  // u = a + b cos(2x), v = c + e cos(3x) on [-pi, pi), forcing density m (1 + cos 2x).
  auto g = make_grid(1, 128, 2 * pi);
  const double s = 0.3, a = 1.2, b = 0.5, c = 0.9, e = 0.4, m = 0.6;
  const auto params = make_params(1, s, 2.5, 1.5, 1);
  const Field u = trig(g, a, b, 2);
  const Field v = trig(g, c, e, 3);
  const auto f = make_forcing(mode_density(g, {2, 0, 0}, m), s);
  const auto zero = Functional::zero(g, s);
  const auto got = energy(u, v, f, zero, params);

  const double norm_u = 2 * pi * a * a + pi * b * b * (1 + std::pow(2.0, 2 * s));
  const double norm_v = 2 * pi * c * c + pi * e * e * (1 + std::pow(3.0, 2 * s));
  CHECK(got.quadratic == doctest::Approx(0.5 * (norm_u + norm_v)).epsilon(1e-10));

  const auto integrand = [&](double x) {
    return std::pow(a + b * std::cos(2 * x), 2.5) * std::pow(c + e * std::cos(3 * x), 1.5);
  };
  const double coupling =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -pi, pi, 10, 1e-14);
  CHECK(got.coupling == doctest::Approx(coupling / 4.0).epsilon(1e-10));
  CHECK(got.forcing == doctest::Approx(m * (2 * pi * a + pi * b)).epsilon(1e-10));
  CHECK(got.total == doctest::Approx(got.quadratic - got.coupling - got.forcing).epsilon(1e-14));
}

TEST_CASE("gradient at the origin is minus the forcing") {
  auto g = make_grid(2, 16, 8.0);
  const auto params = make_params(2, 0.5, 2, 2, 1);
  const Field rho = gaussian_density(g, {0, 0, 0}, 1.0, 1.0);
  const auto f = make_forcing(rho, params);
  const auto h = make_forcing(2.0 * rho, params);
  const auto [gu, gv] = gradient(Field::zeros(g), Field::zeros(g), f, h, params);
  CHECK((gu.values() + rho.values()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((gv.values() + 2.0 * rho.values()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gradient matches central differences in both variants") {
  auto g = make_grid(1, 64, 20.0);
  auto rng = make_rng(11);
  for (int gamma : {0, 1}) {
    const auto params = gamma == 1 ? make_params(1, 0.25, 2.5, 1.5, 1) : make_params(1, 0.25, 2, 2, 0);
    const auto f = make_forcing(gaussian_density(g, {1, 0, 0}, 2.0, 1.0), params);
    const auto h = make_forcing(gaussian_density(g, {-1, 0, 0}, 1.0, 0.3), params);
    for (auto variant : {EnergyVariant::kI, EnergyVariant::kJ}) {
      const Field u = random_positive_field(g, rng, 3, 1.5);
      const Field v = random_smooth_field(g, rng, 1.0);
      Field phi = random_smooth_field(g, rng, 1.0);
      Field psi = random_smooth_field(g, rng, 1.0);
      if (gamma == 0) {
        phi = remove_mean(phi);
        psi = remove_mean(psi);
      }
      const auto [gu, gv] = gradient(u, v, f, h, params, variant);
      const double t = 1e-5;
      const double fd = (energy(u + t * phi, v + t * psi, f, h, params, variant).total -
                         energy(u - t * phi, v - t * psi, f, h, params, variant).total) /
                        (2 * t);
      const double analytic = inner(gu, phi) + inner(gv, psi);
      CHECK(std::abs(fd - analytic) / std::abs(analytic) < 1e-6);
    }
  }
}

TEST_CASE("Hessian form") {
  auto g = make_grid(1, 64, 20.0);
  auto rng = make_rng(5);
  const auto params = make_params(1, 0.25, 2.5, 1.5, 1);
  const Field phi = random_smooth_field(g, rng, 1.0);
  const Field psi = random_smooth_field(g, rng, 1.0);
  CHECK(hessian_quadform(Field::zeros(g), Field::zeros(g), phi, psi, params) ==
        doctest::Approx(pair_norm_squared(phi, psi, params)).epsilon(1e-14));

  const Field u = random_positive_field(g, rng, 3, 2.0);
  const Field v = random_positive_field(g, rng, 3, 2.0);
  CHECK(hessian_quadform(u, v, -1.0 * phi, -1.0 * psi, params) ==
        doctest::Approx(hessian_quadform(u, v, phi, psi, params)).epsilon(1e-14));

  // Second difference of J on positive data (u, v bounded away from 0).
  const Field up = u + Field::constant(g, 0.5);
  const Field vp = v + Field::constant(g, 0.5);
  const auto zero = Functional::zero(g, params.s);
  const double t = 1e-4;
  const auto J = [&](double tt) { return energy(up + tt * phi, vp + tt * psi, zero, zero, params).total; };
  const double second = (J(t) - 2 * J(0) + J(-t)) / (t * t);
  const double q = hessian_quadform(up, vp, phi, psi, params);
  CHECK(std::abs(second - q) / std::abs(q) < 1e-4);
}

TEST_CASE("Hessian lower-bound factor vanishes at the convexity radius") {
  auto g = make_grid(1, 64, 20.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const double S = 0.8;  // any positive constant: the bound is algebraic in S
  const double r = convexity_radius(params, S);
  // p = 4: the factor is 1 - (norm / r)^2.
  CHECK(hessian_lower_bound_factor(params, S, r) == doctest::Approx(0.0).scale(1.0));
  CHECK(hessian_lower_bound_factor(params, S, r / std::sqrt(2.0)) == doctest::Approx(0.5));
  CHECK(hessian_lower_bound_factor(params, S, 0.0) == 1.0);
}

TEST_CASE("small-t sign scan") {
  auto g = make_grid(1, 128, 40.0);
  const auto params = make_params(1, 0.25, 2, 2, 1);
  const Field bump = gaussian_density(g, {0, 0, 0}, 1.0, 1.0);
  const auto f = make_forcing(bump, params);
  const auto scan = small_t_sign_scan(bump, bump, f, f, params, {1e-3, -1e-2, 1e-2, -1e-3});
  CHECK(scan.dichotomy_holds);
  CHECK_FALSE(scan.degenerate);
  REQUIRE(scan.rows.size() == 4);
  CHECK(scan.rows.front().t == -1e-2);
  CHECK(scan.rows[2].energy < 0.0);
  CHECK(scan.rows[1].energy > 0.0);

  const auto zero = Functional::zero(g, params.s);
  const auto flat = small_t_sign_scan(bump, bump, zero, zero, params, {-1e-3, 1e-3});
  CHECK(flat.degenerate);
  CHECK_FALSE(flat.dichotomy_holds);
}

}
