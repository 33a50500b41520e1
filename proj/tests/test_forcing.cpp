#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclab/forcing.hpp"
#include "fraclab/sampling.hpp"
#include "fraclab/spectral.hpp"

using namespace fraclab;
using std::numbers::pi;

TEST_SUITE("forcing") {

TEST_CASE("one-mode dual norms by hand") {
  // density c (1 + cos 2x) on [-pi, pi): the oscillating part has L2 norm c sqrt(pi)
  // and |xi| = 2, the mean is c with |xi| = 0.
  auto g = make_grid(1, 64, 2 * pi);
  const double c = 0.7;
  const auto f = make_forcing(mode_density(g, {2, 0, 0}, c), 0.5);
  CHECK(f.dual_norm_hdot() == doctest::Approx(c * std::sqrt(pi) / std::sqrt(2.0)).epsilon(1e-12));
  const double mean_part = c * c * 2 * pi;
  const double osc_part = c * c * pi / 3.0;
  CHECK(f.dual_norm_hfull() == doctest::Approx(std::sqrt(mean_part + osc_part)).epsilon(1e-12));
  CHECK(f.projected_mean() == doctest::Approx(c));
}

TEST_CASE("dual norm is the norm of the Riesz representer") {
  auto g = make_grid(2, 32, 10.0);
  const auto f = make_forcing(gaussian_density(g, {1, -1, 0}, 1.5, 2.0), 0.3);
  for (Regime r : {Regime::kCritical, Regime::kSubcritical}) {
    const Field rep = riesz_representer(f, r);
    CHECK(regime_norm(rep, 0.3, gamma_of(r)) == doctest::Approx(f.dual_norm(r)).epsilon(1e-12));
    // f(u) = <R, u>_A for any u (mean-free u in the critical regime).
    auto rng = make_rng(4);
    Field u = random_smooth_field(g, rng, 1.0);
    if (r == Regime::kCritical) u = remove_mean(u);
    CHECK(f.pair(u) == doctest::Approx(inner(apply_regime_operator(rep, 0.3, gamma_of(r)), u)).epsilon(1e-12));
  }
}

TEST_CASE("trivial and negative densities are rejected") {
  auto g = make_grid(1, 16, 1.0);
  CHECK_THROWS_AS(make_forcing(Field::zeros(g), 0.5), ConfigError);
  CHECK_THROWS_AS(make_forcing(Field::constant(g, -1.0), 0.5), ConfigError);
  CHECK(Functional::zero(g, 0.5).is_zero());
  CHECK(Functional::zero(g, 0.5).dual_norm(Regime::kSubcritical) == 0.0);
}

TEST_CASE("homogeneity and rescaling") {
  auto g = make_grid(1, 64, 20.0);
  const auto f = make_forcing(gaussian_density(g, {0, 0, 0}, 1.0, 1.0), 0.25);
  const auto t = scaled(f, 3.0);
  CHECK(t.dual_norm_hdot() == doctest::Approx(3 * f.dual_norm_hdot()).epsilon(1e-12));
  CHECK(t.dual_norm_hfull() == doctest::Approx(3 * f.dual_norm_hfull()).epsilon(1e-12));
  const auto same = scale_to_norm(f, f.dual_norm_hfull(), Regime::kSubcritical);
  CHECK((same.density() - f.density()).values().cwiseAbs().maxCoeff() < 1e-15);
  const double d = 0.4;
  const auto half = scale_to_norm(f, d / 2, Regime::kSubcritical);
  CHECK(half.dual_norm_hfull() * 2 == doctest::Approx(d).epsilon(1e-12));
  const auto twice = scaled(scaled(f, 2.0), 0.25);
  CHECK(twice.dual_norm_hfull() == doctest::Approx(0.5 * f.dual_norm_hfull()).epsilon(1e-12));
  CHECK_THROWS_AS(scaled(f, 0.0), ConfigError);
}

TEST_CASE("H^{-s} norm never exceeds the homogeneous dual norm of the same density part") {
  auto g = make_grid(1, 128, 30.0);
  const auto f = make_forcing(indicator_density(g, {2, 0, 0}, 3.0, 1.0), 0.4);
  const double osc = std::sqrt(f.dual_norm_hfull() * f.dual_norm_hfull() -
                               f.projected_mean() * f.projected_mean() * 30.0);
  CHECK(osc <= f.dual_norm_hdot());
}

TEST_CASE("kernel match") {
  auto g = make_grid(1, 128, 40.0);
  const Field bump = gaussian_density(g, {0, 0, 0}, 1.0, 1.0);
  const auto f = make_forcing(bump, 0.25);
  CHECK(kernel_match_check(f, make_forcing(2.0 * bump, 0.25)).match);
  const auto far = make_forcing(gaussian_density(g, {15, 0, 0}, 0.5, 1.0), 0.25);
  const auto m = kernel_match_check(f, far);
  CHECK_FALSE(m.match);
  CHECK(m.symmetric_difference > 0.0);

  // A tail below support_eps relative to the peak does not change the support.
  Field::Vector tail = bump.values();
  for (Eigen::Index i = 0; i < tail.size(); ++i) tail[i] += 1e-14;
  const auto k = kernel_match_check(f, make_forcing(Field(g, tail), 0.25));
  CHECK(k.match);
  CHECK(k.symmetric_difference == 0.0);
}

}
