#include "fraclab/forcing.hpp"

#include <cmath>
#include <numbers>

#include "fraclab/sampling.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {

Functional::Functional(Field density, double s) : density_(std::move(density)), s_(s) {
  const auto& v = density_.values();
  detail::require(v.minCoeff() >= 0.0, "forcing density must be nonnegative");
  const double peak = v.maxCoeff();
  detail::require(peak > 0.0, "forcing density is identically zero (trivial functional)");

  projected_mean_ = v.mean();
  dual_norm_hdot_ = std::sqrt(spectral_quadratic(density_, [s](double xi2) {
    return xi2 == 0.0 ? 0.0 : 1.0 / fractional_symbol(xi2, s);
  }));
  dual_norm_hfull_ = std::sqrt(
      spectral_quadratic(density_, [s](double xi2) { return 1.0 / (1.0 + fractional_symbol(xi2, s)); }));

  const double eps = kSupportEps * peak;
  support_mask_.resize(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) support_mask_[static_cast<std::size_t>(i)] = v[i] > eps;
}

Functional::Functional(Field density, double s, bool)
    : density_(std::move(density)), s_(s), is_zero_(true) {
  support_mask_.assign(static_cast<std::size_t>(density_.size()), false);
}

Functional Functional::zero(const GridPtr<double>& grid, double s) {
  detail::require_order(s);
  return Functional(Field::zeros(grid), s, true);
}

double Functional::dual_norm(Regime regime) const {
  return regime == Regime::kCritical ? dual_norm_hdot_ : dual_norm_hfull_;
}

double Functional::pair(const Field& u) const { return inner(density_, u); }

Functional make_forcing(const Field& density, double s) {
  detail::require_order(s);
  return Functional(density, s);
}

Functional scaled(const Functional& f, double t) {
  detail::require(t > 0.0, "forcing scale factor must be positive");
  if (f.is_zero()) return f;
  return make_forcing(t * f.density(), f.s());
}

Functional scale_to_norm(const Functional& f, double target, Regime regime) {
  detail::require(target > 0.0, "target norm must be positive");
  const double current = f.dual_norm(regime);
  if (!(current > 0.0)) throw NumericalError("cannot rescale a functional with zero dual norm");
  return scaled(f, target / current);
}

Field riesz_representer(const Functional& f, Regime regime) {
  return apply_regime_inverse(f.density(), f.s(), gamma_of(regime));
}

KernelMatch kernel_match_check(const Functional& f, const Functional& g) {
  f.density().check_grid(g.density());
  const auto& a = f.support_mask();
  const auto& b = g.support_mask();
  std::size_t only = 0;
  std::size_t na = 0;
  std::size_t nb = 0;
  std::size_t both = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i];
    nb += b[i];
    both += a[i] && b[i];
    only += a[i] != b[i];
  }
  KernelMatch m;
  m.symmetric_difference = static_cast<double>(only) / static_cast<double>(a.size());
  m.f_in_g = na ? static_cast<double>(both) / static_cast<double>(na) : 0.0;
  m.g_in_f = nb ? static_cast<double>(both) / static_cast<double>(nb) : 0.0;
  m.match = m.symmetric_difference <= kKernelMatchTolerance;
  return m;
}

Field gaussian_density(const GridPtr<double>& grid, const std::array<double, 3>& center, double width,
                       double amplitude) {
  detail::require(width > 0.0, "gaussian width must be positive");
  detail::require(amplitude > 0.0, "gaussian amplitude must be positive");
  return gaussian_bump(grid, center, width, amplitude);
}

Field indicator_density(const GridPtr<double>& grid, const std::array<double, 3>& center,
                        double radius, double amplitude) {
  detail::require(radius > 0.0, "indicator radius must be positive");
  detail::require(amplitude > 0.0, "indicator amplitude must be positive");
  return Field::sample(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < grid->dimension(); ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
    return r2 <= radius * radius ? amplitude : 0.0;
  });
}

Field mode_density(const GridPtr<double>& grid, const std::array<int, 3>& k, double amplitude) {
  detail::require(amplitude > 0.0, "mode amplitude must be positive");
  const double scale = 2.0 * std::numbers::pi / grid->box_length();
  return Field::sample(grid, [&](const std::array<double, 3>& x) {
    double phase = 0.0;
    for (int d = 0; d < grid->dimension(); ++d) phase += scale * k[d] * x[d];
    return amplitude * (1.0 + std::cos(phase));
  });
}

}  // namespace fraclab
