#include "fraclab/sampling.hpp"

#include <cmath>

#include "fraclab/spectral.hpp"

namespace fraclab {

Field random_smooth_field(const GridPtr<double>& grid, Rng& rng, double correlation_length) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Field::Vector noise(grid->size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = normal(rng);
  const double l2 = correlation_length * correlation_length;
  Field smooth = apply_multiplier(Field(grid, std::move(noise)),
                                  [l2](double xi2) { return std::exp(-0.5 * xi2 * l2); });
  const double n = l2_norm(smooth);
  return (1.0 / n) * smooth;
}

Field gaussian_bump(const GridPtr<double>& grid, const std::array<double, 3>& center, double width,
                    double amplitude) {
  const double inv_w2 = 1.0 / (width * width);
  return Field::sample(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < grid->dimension(); ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
    return amplitude * std::exp(-r2 * inv_w2);
  });
}

Field random_positive_field(const GridPtr<double>& grid, Rng& rng, int count, double width_scale) {
  const double half = grid->box_length() / 4.0;
  std::uniform_real_distribution<double> pos(-half, half);
  std::uniform_real_distribution<double> width(0.5 * width_scale, 2.0 * width_scale);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  Field::Vector sum = Field::Vector::Constant(grid->size(), 1e-3);
  for (int b = 0; b < count; ++b) {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (int d = 0; d < grid->dimension(); ++d) c[d] = pos(rng);
    const double w = width(rng);
    const double a = amp(rng);
    sum += gaussian_bump(grid, c, w, a).values();
  }
  return Field(grid, std::move(sum));
}

}  // namespace fraclab
