#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "fraclab/field.hpp"

namespace fraclab {

/// DFT coefficients u_hat_k = sum_j u_j exp(-i xi_k . x'_j), grid layout, with
/// x'_j the offset from the first grid point. The offset only contributes a
/// unimodular phase, which no multiplier or Plancherel sum depends on.
template <typename Scalar>
using Spectrum = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

namespace detail {

/// In-place separable N-D transform: 1-D FFTs along every axis.
template <typename Scalar>
void transform_axes(const BasicGrid<Scalar>& grid, Spectrum<Scalar>& data, bool forward) {
  const int n = grid.points_per_axis();
  const int dim = grid.dimension();
  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> line(n), out(n);

  for (int axis = 0; axis < dim; ++axis) {
    Eigen::Index stride = 1;
    for (int d = axis + 1; d < dim; ++d) stride *= n;
    const Eigen::Index block = stride * n;
    for (Eigen::Index base = 0; base < data.size(); base += block) {
      for (Eigen::Index offset = 0; offset < stride; ++offset) {
        for (int k = 0; k < n; ++k) line[k] = data[base + offset + k * stride];
        if (forward) {
          fft.fwd(out, line);
        } else {
          fft.inv(out, line);
        }
        for (int k = 0; k < n; ++k) data[base + offset + k * stride] = out[k];
      }
    }
  }
}

}  // namespace detail

template <typename Scalar>
Spectrum<Scalar> forward_transform(const BasicField<Scalar>& u) {
  Spectrum<Scalar> data = u.values().template cast<std::complex<Scalar>>();
  detail::transform_axes(u.grid(), data, true);
  return data;
}

/// Inverse of forward_transform; the imaginary part (round-off only for
/// Hermitian spectra) is discarded.
template <typename Scalar>
BasicField<Scalar> inverse_transform(const GridPtr<Scalar>& grid, Spectrum<Scalar> data) {
  detail::transform_axes(*grid, data, false);
  return BasicField<Scalar>(grid, data.real());
}

/// Applies the radial Fourier multiplier m(|xi|^2) to u.
template <typename Scalar, typename Multiplier>
BasicField<Scalar> apply_multiplier(const BasicField<Scalar>& u, Multiplier&& m) {
  Spectrum<Scalar> data = forward_transform(u);
  const auto& xi2 = u.grid().squared_frequencies();
  for (Eigen::Index k = 0; k < data.size(); ++k) data[k] *= m(xi2[k]);
  return inverse_transform(u.grid_ptr(), std::move(data));
}

/// Plancherel: cell_volume / size * sum_k m(|xi_k|^2) |u_hat_k|^2, which equals
/// the quadrature of u * (m applied to u).
template <typename Scalar, typename Multiplier>
Scalar spectral_quadratic(const BasicField<Scalar>& u, Multiplier&& m) {
  const Spectrum<Scalar> data = forward_transform(u);
  const auto& xi2 = u.grid().squared_frequencies();
  Scalar sum = 0;
  for (Eigen::Index k = 0; k < data.size(); ++k) sum += m(xi2[k]) * std::norm(data[k]);
  return u.grid().cell_volume() / Scalar(u.size()) * sum;
}

namespace detail {

template <typename Scalar>
void require_order(Scalar s) {
  require(s > Scalar(0) && s <= Scalar(1), "fractional order s must lie in (0, 1]");
}

}  // namespace detail

/// |xi|^{2s} as a function of |xi|^2.
template <typename Scalar>
Scalar fractional_symbol(Scalar xi2, Scalar s) {
  if (xi2 == Scalar(0)) return Scalar(0);
  if (s == Scalar(1)) return xi2;
  return std::pow(xi2, s);
}

/// (-Delta)^s as the periodic multiplier |xi|^{2s}; the zero mode maps to 0.
template <typename Scalar>
BasicField<Scalar> frac_laplacian(const BasicField<Scalar>& u, Scalar s) {
  detail::require_order(s);
  return apply_multiplier(u, [s](Scalar xi2) { return fractional_symbol(xi2, s); });
}

/// Spectral Laplacian -Delta (multiplier |xi|^2).
template <typename Scalar>
BasicField<Scalar> spectral_laplacian(const BasicField<Scalar>& u) {
  return apply_multiplier(u, [](Scalar xi2) { return xi2; });
}

/// ||u||_{H-dot^s} = <(-Delta)^s u, u>^{1/2}.
template <typename Scalar>
Scalar hs_seminorm(const BasicField<Scalar>& u, Scalar s) {
  detail::require_order(s);
  const Scalar q = spectral_quadratic(u, [s](Scalar xi2) { return fractional_symbol(xi2, s); });
  return std::sqrt(std::max(q, Scalar(0)));
}

/// ||u||_{H^s} = (||u||_2^2 + ||u||_{H-dot^s}^2)^{1/2}.
template <typename Scalar>
Scalar hs_full_norm(const BasicField<Scalar>& u, Scalar s) {
  detail::require_order(s);
  const Scalar q =
      spectral_quadratic(u, [s](Scalar xi2) { return Scalar(1) + fractional_symbol(xi2, s); });
  return std::sqrt(std::max(q, Scalar(0)));
}

// ---------------------------------------------------------------------------
// Regime operator A = (-Delta)^s + gamma Id, gamma in {0, 1}.

template <typename Scalar>
Scalar regime_symbol(Scalar xi2, Scalar s, int gamma) {
  return fractional_symbol(xi2, s) + Scalar(gamma);
}

template <typename Scalar>
BasicField<Scalar> apply_regime_operator(const BasicField<Scalar>& u, Scalar s, int gamma) {
  detail::require_order(s);
  return apply_multiplier(u, [s, gamma](Scalar xi2) { return regime_symbol(xi2, s, gamma); });
}

/// A^{-1}; for gamma = 0 the zero mode is projected out (mapped to 0).
template <typename Scalar>
BasicField<Scalar> apply_regime_inverse(const BasicField<Scalar>& u, Scalar s, int gamma) {
  detail::require_order(s);
  return apply_multiplier(u, [s, gamma](Scalar xi2) {
    const Scalar a = regime_symbol(xi2, s, gamma);
    return a == Scalar(0) ? Scalar(0) : Scalar(1) / a;
  });
}

/// Squared regime norm: seminorm^2 (gamma = 0) or full H^s norm^2 (gamma = 1).
template <typename Scalar>
Scalar regime_norm_squared(const BasicField<Scalar>& u, Scalar s, int gamma) {
  detail::require_order(s);
  return std::max(
      spectral_quadratic(u, [s, gamma](Scalar xi2) { return regime_symbol(xi2, s, gamma); }),
      Scalar(0));
}

template <typename Scalar>
Scalar regime_norm(const BasicField<Scalar>& u, Scalar s, int gamma) {
  return std::sqrt(regime_norm_squared(u, s, gamma));
}

}  // namespace fraclab
