#pragma once

#include <cmath>
#include <utility>

#include "fraclab/grid.hpp"

namespace fraclab {

/// Real-valued samples of a function on a periodic grid.
///
/// A field is a value type: it shares its (immutable) grid and owns its
/// samples. Every constructor checks that the samples match the grid size and
/// are finite.
template <typename Scalar>
class BasicField {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicField(GridPtr<Scalar> grid, Vector values) : grid_(std::move(grid)), values_(std::move(values)) {
    detail::require(grid_ != nullptr, "field requires a grid");
    detail::require(values_.size() == grid_->size(), "field size does not match its grid");
    if (!values_.allFinite()) throw NumericalError("field contains non-finite values");
  }

  static BasicField zeros(GridPtr<Scalar> grid) {
    const auto n = grid->size();
    return BasicField(std::move(grid), Vector::Zero(n));
  }

  static BasicField constant(GridPtr<Scalar> grid, Scalar c) {
    const auto n = grid->size();
    return BasicField(std::move(grid), Vector::Constant(n, c));
  }

  /// Samples fn(x) at every grid point, x given as std::array<Scalar,3>.
  template <typename Fn>
  static BasicField sample(GridPtr<Scalar> grid, Fn&& fn) {
    Vector v(grid->size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = fn(grid->point(i));
    return BasicField(std::move(grid), std::move(v));
  }

  const BasicGrid<Scalar>& grid() const { return *grid_; }
  const GridPtr<Scalar>& grid_ptr() const { return grid_; }
  const Vector& values() const { return values_; }
  Scalar operator[](Eigen::Index i) const { return values_[i]; }
  Eigen::Index size() const { return values_.size(); }

  /// New field on the same grid with values produced by an Eigen expression.
  template <typename Derived>
  BasicField with_values(const Eigen::DenseBase<Derived>& values) const {
    return BasicField(grid_, Vector(values.derived().matrix()));
  }

  bool same_grid(const BasicField& other) const {
    return grid_ == other.grid_ || *grid_ == *other.grid_;
  }

  BasicField operator-() const { return with_values(-values_); }

  friend BasicField operator+(const BasicField& a, const BasicField& b) {
    a.check_grid(b);
    return a.with_values(a.values_ + b.values_);
  }
  friend BasicField operator-(const BasicField& a, const BasicField& b) {
    a.check_grid(b);
    return a.with_values(a.values_ - b.values_);
  }
  friend BasicField operator*(Scalar t, const BasicField& a) { return a.with_values(t * a.values_); }
  friend BasicField operator*(const BasicField& a, Scalar t) { return t * a; }

  void check_grid(const BasicField& other) const {
    if (!same_grid(other)) throw ConfigError("fields live on different grids");
  }

 private:
  GridPtr<Scalar> grid_;
  Vector values_;
};

using Field = BasicField<double>;

// ---------------------------------------------------------------------------
// Quadrature. Every integral is the uniform-weight rule cell_volume * sum.

template <typename Scalar>
Scalar integral(const BasicField<Scalar>& u) {
  return u.grid().cell_volume() * u.values().sum();
}

template <typename Scalar>
Scalar inner(const BasicField<Scalar>& u, const BasicField<Scalar>& v) {
  u.check_grid(v);
  return u.grid().cell_volume() * u.values().dot(v.values());
}

template <typename Scalar>
Scalar l2_norm(const BasicField<Scalar>& u) {
  return std::sqrt(u.grid().cell_volume()) * u.values().norm();
}

/// (cell_volume * sum |u|^p)^{1/p}, p >= 1.
template <typename Scalar>
Scalar lp_norm(const BasicField<Scalar>& u, Scalar p) {
  detail::require(p >= Scalar(1), "lp_norm requires p >= 1");
  if (p == Scalar(2)) return l2_norm(u);
  const Scalar sum = u.values().array().abs().pow(p).sum();
  return std::pow(u.grid().cell_volume() * sum, Scalar(1) / p);
}

template <typename Scalar>
BasicField<Scalar> positive_part(const BasicField<Scalar>& u) {
  return u.with_values(u.values().cwiseMax(Scalar(0)));
}

/// Field minus its grid mean (the zero Fourier mode removed).
template <typename Scalar>
BasicField<Scalar> remove_mean(const BasicField<Scalar>& u) {
  return u.with_values(u.values().array() - u.values().mean());
}

namespace detail {

/// x^e with the convention 0^e = 0 (also for e <= 0); x >= 0.
template <typename Scalar>
Scalar pow0(Scalar x, Scalar e) {
  if (x <= Scalar(0)) return Scalar(0);
  if (e == Scalar(0)) return Scalar(1);
  if (e == Scalar(1)) return x;
  if (e == Scalar(2)) return x * x;
  return std::pow(x, e);
}

/// sign(x) |x|^e, i.e. |x|^{e-1} x for e > 0.
template <typename Scalar>
Scalar signed_pow(Scalar x, Scalar e) {
  const Scalar m = pow0(std::abs(x), e);
  return x < Scalar(0) ? -m : m;
}

}  // namespace detail

/// Integral of u^alpha v^beta. With positive_parts the integrand is
/// u_+^alpha v_+^beta, otherwise |u|^alpha |v|^beta.
template <typename Scalar>
Scalar coupling_integral(const BasicField<Scalar>& u, const BasicField<Scalar>& v, Scalar alpha,
                         Scalar beta, bool positive_parts) {
  u.check_grid(v);
  Scalar sum = 0;
  const auto& a = u.values();
  const auto& b = v.values();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Scalar x = positive_parts ? a[i] : std::abs(a[i]);
    const Scalar y = positive_parts ? b[i] : std::abs(b[i]);
    sum += detail::pow0(x, alpha) * detail::pow0(y, beta);
  }
  return u.grid().cell_volume() * sum;
}

}  // namespace fraclab
