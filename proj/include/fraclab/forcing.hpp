#pragma once

#include <array>
#include <vector>

#include "fraclab/field.hpp"
#include "fraclab/params.hpp"

namespace fraclab {

inline constexpr double kSupportEps = 1e-12;

/// A nonnegative forcing term f represented by its density, acting on u by
/// <f, u> = integral of density * u.
///
/// Both dual norms are cached at construction:
///   ||f||_{(H-dot^s)'}^2 = sum_{xi != 0} |xi|^{-2s} |f_hat|^2        (mean projected out)
///   ||f||_{H^{-s}}^2     = sum_xi (1 + |xi|^{2s})^{-1} |f_hat|^2
/// (Plancherel-normalized). Each is the exact dual of the matching regime norm,
/// so the Riesz representer A^{-1} f attains the duality bound.
class Functional {
 public:
  const Field& density() const { return density_; }
  double s() const { return s_; }
  double dual_norm_hdot() const { return dual_norm_hdot_; }
  double dual_norm_hfull() const { return dual_norm_hfull_; }
  /// Dual norm matching the regime: H-dot^s dual for gamma = 0, H^{-s} for gamma = 1.
  double dual_norm(Regime regime) const;
  /// Grid mean of the density; this constant is the part removed before the
  /// H-dot^s dual norm is computed.
  double projected_mean() const { return projected_mean_; }
  /// density > kSupportEps * max(density), per grid point.
  const std::vector<bool>& support_mask() const { return support_mask_; }

  /// <f, u> by density quadrature.
  double pair(const Field& u) const;

  /// The zero functional, for the homogeneous problem. make_forcing rejects
  /// trivial densities; this is the one explicit way to get one.
  static Functional zero(const GridPtr<double>& grid, double s);
  bool is_zero() const { return is_zero_; }

 private:
  friend Functional make_forcing(const Field& density, double s);
  Functional(Field density, double s);
  Functional(Field density, double s, bool zero_tag);

  Field density_;
  double s_;
  double dual_norm_hdot_ = 0.0;
  double dual_norm_hfull_ = 0.0;
  double projected_mean_ = 0.0;
  std::vector<bool> support_mask_;
  bool is_zero_ = false;
};

/// Throws ConfigError for negative entries or an identically zero density.
Functional make_forcing(const Field& density, double s);
inline Functional make_forcing(const Field& density, const SystemParams& params) {
  return make_forcing(density, params.s);
}

/// Rescales the density so the regime dual norm equals target.
Functional scale_to_norm(const Functional& f, double target, Regime regime);

/// Multiplies the density by t > 0.
Functional scaled(const Functional& f, double t);

/// Riesz representer A^{-1} f of f in the regime inner product.
Field riesz_representer(const Functional& f, Regime regime);

struct KernelMatch {
  bool match = false;
  /// Fraction of grid points in exactly one of the two supports.
  double symmetric_difference = 0.0;
  /// Fraction of supp f covered by supp g, and vice versa.
  double f_in_g = 0.0;
  double g_in_f = 0.0;
};

inline constexpr double kKernelMatchTolerance = 1e-6;

/// Support equality of the two densities as the discrete stand-in for
/// ker f = ker g.
KernelMatch kernel_match_check(const Functional& f, const Functional& g);

// Built-in densities.

/// amplitude * exp(-|x - center|^2 / width^2).
Field gaussian_density(const GridPtr<double>& grid, const std::array<double, 3>& center, double width,
                       double amplitude);
/// amplitude on the closed ball |x - center| <= radius, 0 elsewhere.
Field indicator_density(const GridPtr<double>& grid, const std::array<double, 3>& center,
                        double radius, double amplitude);
/// amplitude * (1 + cos(xi_k . x)) with xi_k = 2 pi k / L: the single Fourier
/// mode k lifted to be nonnegative.
Field mode_density(const GridPtr<double>& grid, const std::array<int, 3>& k, double amplitude);

}  // namespace fraclab
