#pragma once

#include <cstdint>
#include <random>

#include "fraclab/field.hpp"

namespace fraclab {

/// The one generator behind every randomized check: std::mt19937_64 seeded
/// with the configured seed. Normals come from std::normal_distribution, so
/// runs are reproducible bit-for-bit on one standard library and comparable in
/// distribution across implementations.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Smooth sign-changing field: white noise filtered by exp(-|xi|^2 l^2 / 2),
/// then scaled to unit L2 norm. l is the correlation length.
Field random_smooth_field(const GridPtr<double>& grid, Rng& rng, double correlation_length);

/// Positive field: sum of `count` Gaussian bumps with random centers in the
/// middle half of the box, widths in [0.5, 2] * width_scale and amplitudes in
/// [0.5, 1.5], plus a small positive floor so the field is strictly positive.
Field random_positive_field(const GridPtr<double>& grid, Rng& rng, int count, double width_scale);

/// Gaussian bump amplitude * exp(-|x - center|^2 / width^2).
Field gaussian_bump(const GridPtr<double>& grid, const std::array<double, 3>& center, double width,
                    double amplitude);

}  // namespace fraclab
