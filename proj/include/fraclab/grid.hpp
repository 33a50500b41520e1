#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "fraclab/errors.hpp"

namespace fraclab {

/// Uniform periodic grid on the box [-L/2, L/2)^N, N in {1,2,3}.
///
/// Points are stored row-major (last axis fastest). Point j along an axis sits
/// at x_j = -L/2 + j h with h = L/P, so the box center x = 0 is the grid point
/// j = P/2. Spectral arrays share the same row-major layout in FFT order:
/// axis index k maps to the integer wavenumber k for k < P/2 and k - P for
/// k >= P/2, i.e. the Nyquist mode carries the wavenumber -P/2.
template <typename Scalar>
class BasicGrid {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicGrid(int dimension, int points_per_axis, Scalar box_length)
      : dimension_(dimension), points_per_axis_(points_per_axis), box_length_(box_length) {
    detail::require(dimension >= 1 && dimension <= 3,
                    "grid dimension must be 1, 2 or 3, got " + std::to_string(dimension));
    detail::require(points_per_axis >= 16 && (points_per_axis & (points_per_axis - 1)) == 0,
                    "points_per_axis must be a power of two >= 16, got " +
                        std::to_string(points_per_axis));
    detail::require(box_length > Scalar(0) && std::isfinite(static_cast<double>(box_length)),
                    "box_length must be positive and finite");

    spacing_ = box_length_ / Scalar(points_per_axis_);
    size_ = 1;
    for (int d = 0; d < dimension_; ++d) size_ *= points_per_axis_;
    cell_volume_ = std::pow(spacing_, Scalar(dimension_));

    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    axis_wavenumbers_.resize(points_per_axis_);
    for (int k = 0; k < points_per_axis_; ++k) {
      const int signed_k = k < points_per_axis_ / 2 ? k : k - points_per_axis_;
      axis_wavenumbers_[k] = two_pi * Scalar(signed_k) / box_length_;
    }

    squared_frequencies_.resize(size_);
    for (Eigen::Index i = 0; i < size_; ++i) {
      const auto idx = multi_index(i);
      Scalar sum = 0;
      for (int d = 0; d < dimension_; ++d) sum += axis_wavenumbers_[idx[d]] * axis_wavenumbers_[idx[d]];
      squared_frequencies_[i] = sum;
    }
  }

  int dimension() const { return dimension_; }
  int points_per_axis() const { return points_per_axis_; }
  Scalar box_length() const { return box_length_; }
  Scalar spacing() const { return spacing_; }
  Scalar cell_volume() const { return cell_volume_; }
  Scalar box_volume() const { return std::pow(box_length_, Scalar(dimension_)); }
  Eigen::Index size() const { return size_; }

  /// Signed angular wavenumbers 2*pi*k/L along one axis, FFT order.
  const Vector& axis_wavenumbers() const { return axis_wavenumbers_; }

  /// |xi_k|^2 for every spectral slot, same layout as the values.
  const Vector& squared_frequencies() const { return squared_frequencies_; }

  /// Per-axis indices of the flat index i (unused axes are 0).
  std::array<int, 3> multi_index(Eigen::Index i) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dimension_ - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(i % points_per_axis_);
      i /= points_per_axis_;
    }
    return idx;
  }

  Eigen::Index flat_index(const std::array<int, 3>& idx) const {
    Eigen::Index i = 0;
    for (int d = 0; d < dimension_; ++d) i = i * points_per_axis_ + idx[d];
    return i;
  }

  /// Physical coordinates of grid point i (unused axes are 0).
  std::array<Scalar, 3> point(Eigen::Index i) const {
    const auto idx = multi_index(i);
    std::array<Scalar, 3> x{0, 0, 0};
    for (int d = 0; d < dimension_; ++d) x[d] = -box_length_ / Scalar(2) + spacing_ * Scalar(idx[d]);
    return x;
  }

  /// Euclidean distance from grid point i to the box center.
  Scalar radius(Eigen::Index i) const {
    const auto x = point(i);
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }

  bool contains(const std::array<Scalar, 3>& x) const {
    for (int d = 0; d < dimension_; ++d) {
      if (!(x[d] >= -box_length_ / Scalar(2) && x[d] < box_length_ / Scalar(2))) return false;
    }
    return true;
  }

  bool operator==(const BasicGrid& other) const {
    return dimension_ == other.dimension_ && points_per_axis_ == other.points_per_axis_ &&
           box_length_ == other.box_length_;
  }

 private:
  int dimension_;
  int points_per_axis_;
  Scalar box_length_;
  Scalar spacing_{};
  Scalar cell_volume_{};
  Eigen::Index size_{};
  Vector axis_wavenumbers_;
  Vector squared_frequencies_;
};

template <typename Scalar>
using GridPtr = std::shared_ptr<const BasicGrid<Scalar>>;

template <typename Scalar = double>
GridPtr<Scalar> make_grid(int dimension, int points_per_axis, Scalar box_length) {
  return std::make_shared<const BasicGrid<Scalar>>(dimension, points_per_axis, box_length);
}

using Grid = BasicGrid<double>;

}  // namespace fraclab
