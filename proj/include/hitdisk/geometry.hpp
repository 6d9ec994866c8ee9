#pragma once

// Linear change of variables that turns the correlated operator
//   d2/dx2 + 2 rho d2/dxdy + d2/dy2
// into the plain Laplacian, and the induced correspondence between the exit
// angle on the circle of radius R and the parameter of the image ellipse.

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "hitdisk/angles.hpp"
#include "hitdisk/errors.hpp"

namespace hitdisk {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Correlation and disk radius. Immutable; validated on construction.
template <typename Scalar = double>
class ProblemSpec {
 public:
  /// |rho| within this distance of 1 is treated as degenerate.
  static constexpr double kDegenerateMargin = 1e-12;

  ProblemSpec(Scalar rho, Scalar radius) : rho_(rho), radius_(radius) {
    using std::abs;
    using std::isfinite;
    if (!isfinite(static_cast<double>(rho)) ||
        !(abs(rho) < Scalar(1) - Scalar(kDegenerateMargin))) {
      std::ostringstream msg;
      msg << "correlation must satisfy |rho| < 1, got " << static_cast<double>(rho);
      throw InvalidArgument(msg.str());
    }
    if (!isfinite(static_cast<double>(radius)) || !(radius > 0)) {
      std::ostringstream msg;
      msg << "disk radius must be positive, got " << static_cast<double>(radius);
      throw InvalidArgument(msg.str());
    }
  }

  Scalar rho() const { return rho_; }
  Scalar radius() const { return radius_; }

  /// sgn(rho) with the convention sgn(0) = +1, so rho = 0 gives a pure rotation.
  Scalar orientation() const { return rho_ < 0 ? Scalar(-1) : Scalar(1); }

  template <typename Other>
  ProblemSpec<Other> cast() const {
    return ProblemSpec<Other>(static_cast<Other>(rho_), static_cast<Other>(radius_));
  }

 private:
  Scalar rho_;
  Scalar radius_;
};

/// Constants of the canonical ellipse w^2/a^2 + z^2/b^2 = 1 and of the annulus [q, 1].
template <typename Scalar = double>
struct EllipseGeometry {
  Scalar a;        // major semiaxis
  Scalar b;        // minor semiaxis
  Scalar c;        // focal half-distance sqrt(a^2 - b^2)
  Scalar q;        // inner annulus radius sqrt((a - b)/(a + b))
  Scalar eta_hat;  // elliptic coordinate of the boundary, -log q (infinite when q = 0)
  Scalar A_cap;    // (a + b)/2
  Scalar B_cap;    // (a - b)/2

  /// a^2 - b^2 evaluated as (a - b)(a + b).
  Scalar focal_sq() const { return (a - b) * (a + b); }
  bool degenerate() const { return !(q > 0); }
};

template <typename Scalar>
EllipseGeometry<Scalar> make_ellipse_geometry(const ProblemSpec<Scalar>& spec) {
  using std::abs;
  using std::log;
  using std::sqrt;
  const Scalar R = spec.radius();
  const Scalar arho = abs(spec.rho());
  EllipseGeometry<Scalar> g{};
  g.a = R / sqrt(1 - arho);
  g.b = R / sqrt(1 + arho);
  g.c = sqrt((g.a - g.b) * (g.a + g.b));
  g.q = sqrt((g.a - g.b) / (g.a + g.b));
  g.eta_hat = g.q > 0 ? -log(g.q) : std::numeric_limits<Scalar>::infinity();
  g.A_cap = (g.a + g.b) / 2;
  g.B_cap = (g.a - g.b) / 2;
  return g;
}

template <typename Scalar = double>
struct CartesianPoint {
  Scalar x;
  Scalar y;
  Vector2<Scalar> vec() const { return {x, y}; }
};

template <typename Scalar = double>
struct EllipsePoint {
  Scalar w;
  Scalar z;
  Vector2<Scalar> vec() const { return {w, z}; }
};

/// The full transform (x, y) -> (w, z).
template <typename Scalar>
Matrix2<Scalar> linear_transform_matrix(const ProblemSpec<Scalar>& spec) {
  using std::abs;
  using std::sqrt;
  const Scalar s = spec.orientation();
  const Scalar arho = abs(spec.rho());
  const Scalar lo = sqrt(2 * (1 - arho));
  const Scalar hi = sqrt(2 * (1 + arho));
  Matrix2<Scalar> t;
  t << 1 / lo, -s / lo,
       s / hi, 1 / hi;
  return t;
}

template <typename Scalar>
Matrix2<Scalar> inverse_transform_matrix(const ProblemSpec<Scalar>& spec) {
  using std::abs;
  using std::sqrt;
  const Scalar s = spec.orientation();
  const Scalar arho = abs(spec.rho());
  const Scalar lo = sqrt(2 * (1 - arho));
  const Scalar hi = sqrt(2 * (1 + arho));
  Matrix2<Scalar> t;
  t << lo / 2, s * hi / 2,
       -s * lo / 2, hi / 2;
  return t;
}

/// Cholesky-type factor that removes the correlation: maps the circle to a rotated ellipse.
template <typename Scalar>
Matrix2<Scalar> decorrelating_factor(const ProblemSpec<Scalar>& spec) {
  using std::sqrt;
  const Scalar rho = spec.rho();
  const Scalar d = sqrt(1 - rho * rho);
  Matrix2<Scalar> n;
  n << 1 / d, -rho / d,
       Scalar(0), Scalar(1);
  return n;
}

/// Rotation bringing the decorrelated ellipse to canonical (axis-aligned) form.
template <typename Scalar>
Matrix2<Scalar> canonical_rotation(const ProblemSpec<Scalar>& spec) {
  using std::abs;
  using std::sqrt;
  const Scalar s = spec.orientation();
  const Scalar arho = abs(spec.rho());
  const Scalar cp = sqrt((1 + arho) / 2);
  const Scalar sp = sqrt((1 - arho) / 2);
  Matrix2<Scalar> m;
  m << cp, -s * sp,
       s * sp, cp;
  return m;
}

/// Covariance of the unit-time increments, [[1, rho], [rho, 1]].
template <typename Scalar>
Matrix2<Scalar> increment_covariance(const ProblemSpec<Scalar>& spec) {
  Matrix2<Scalar> cov;
  cov << Scalar(1), spec.rho(),
         spec.rho(), Scalar(1);
  return cov;
}

template <typename Scalar>
EllipsePoint<Scalar> forward_linear(const CartesianPoint<Scalar>& p, const ProblemSpec<Scalar>& spec) {
  const Vector2<Scalar> v = linear_transform_matrix(spec) * p.vec();
  return {v(0), v(1)};
}

template <typename Scalar>
CartesianPoint<Scalar> inverse_linear(const EllipsePoint<Scalar>& p, const ProblemSpec<Scalar>& spec) {
  const Vector2<Scalar> v = inverse_transform_matrix(spec) * p.vec();
  return {v(0), v(1)};
}

/// Ellipse parameter tau of the image of the circle point at exit angle alpha.
template <typename Scalar>
Scalar boundary_angle_to_tau(Scalar alpha, const ProblemSpec<Scalar>& spec) {
  using std::cos;
  using std::sin;
  const auto g = make_ellipse_geometry(spec);
  const Scalar R = spec.radius();
  const auto e = forward_linear(CartesianPoint<Scalar>{R * cos(alpha), R * sin(alpha)}, spec);
  return polar_angle(e.z / g.b, e.w / g.a);
}

/// Inverse of boundary_angle_to_tau.
template <typename Scalar>
Scalar tau_to_boundary_angle(Scalar tau, const ProblemSpec<Scalar>& spec) {
  using std::cos;
  using std::sin;
  const auto g = make_ellipse_geometry(spec);
  const auto p = inverse_linear(EllipsePoint<Scalar>{g.a * cos(tau), g.b * sin(tau)}, spec);
  return polar_angle(p.y, p.x);
}

/// d tau / d alpha along the circle.
template <typename Scalar>
Scalar boundary_jacobian(Scalar alpha, const ProblemSpec<Scalar>& spec) {
  using std::cos;
  using std::sin;
  const auto g = make_ellipse_geometry(spec);
  const Scalar R = spec.radius();
  const Matrix2<Scalar> t = linear_transform_matrix(spec);
  const Vector2<Scalar> pos = t * Vector2<Scalar>(R * cos(alpha), R * sin(alpha));
  const Vector2<Scalar> vel = t * Vector2<Scalar>(-R * sin(alpha), R * cos(alpha));
  const Scalar wh = pos(0) / g.a, zh = pos(1) / g.b;
  const Scalar dwh = vel(0) / g.a, dzh = vel(1) / g.b;
  return (wh * dzh - zh * dwh) / (wh * wh + zh * zh);
}

/// True when (x, y) lies strictly inside the disk.
template <typename Scalar>
bool inside_disk(const CartesianPoint<Scalar>& p, const ProblemSpec<Scalar>& spec) {
  const Scalar R = spec.radius();
  return p.x * p.x + p.y * p.y < R * R;
}

}  // namespace hitdisk
