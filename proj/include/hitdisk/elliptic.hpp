#pragma once

// Elliptic coordinates w = c cosh(eta) cos(phi), z = c sinh(eta) sin(phi), and the
// bridge r = q e^eta, theta = phi to the annulus coordinates.  Undefined for the
// circle (rho = 0), where c = 0.

#include <cmath>
#include <sstream>

#include "hitdisk/angles.hpp"
#include "hitdisk/annulus_map.hpp"
#include "hitdisk/errors.hpp"
#include "hitdisk/geometry.hpp"

namespace hitdisk {

template <typename Scalar = double>
struct EllipticCoord {
  Scalar eta;
  Scalar phi;
};

namespace detail {

template <typename Scalar>
void require_focal_ellipse(const EllipseGeometry<Scalar>& g, const char* who) {
  if (g.degenerate()) {
    throw DomainError(std::string(who) + ": elliptic coordinates are undefined when rho = 0");
  }
}

}  // namespace detail

template <typename Scalar>
EllipsePoint<Scalar> elliptic_to_ellipse(const EllipticCoord<Scalar>& c, const EllipseGeometry<Scalar>& g) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  detail::require_focal_ellipse(g, "elliptic_to_ellipse");
  if (!(c.eta >= 0)) {
    std::ostringstream msg;
    msg << "elliptic_to_ellipse: eta must be non-negative, got " << static_cast<double>(c.eta);
    throw DomainError(msg.str());
  }
  return {g.c * cosh(c.eta) * cos(c.phi), g.c * sinh(c.eta) * sin(c.phi)};
}

/// sinh^2(eta) for a point of the closed ellipse (non-negative root of the quartic in sinh eta).
template <typename Scalar>
Scalar elliptic_sinh_squared(const EllipsePoint<Scalar>& p, const EllipseGeometry<Scalar>& g) {
  const Scalar c2 = g.focal_sq();
  const Scalar s = p.w * p.w + p.z * p.z;
  const Scalar root = detail::focal_discriminant_root(p, c2);
  return detail::stable_sum(s - c2, root, 4 * c2 * p.z * p.z) / (2 * c2);
}

/// Inverse of elliptic_to_ellipse. On the focal segment (eta = 0) phi is returned in [0, pi].
template <typename Scalar>
EllipticCoord<Scalar> ellipse_to_elliptic(const EllipsePoint<Scalar>& p, const EllipseGeometry<Scalar>& g) {
  using std::asinh;
  using std::cosh;
  using std::max;
  using std::min;
  using std::sqrt;
  detail::require_focal_ellipse(g, "ellipse_to_elliptic");
  detail::require_in_ellipse(p, g, "ellipse_to_elliptic");

  const Scalar sh = sqrt(elliptic_sinh_squared(p, g));
  const Scalar eta = min(g.eta_hat, asinh(sh));
  const Scalar cos_phi = max(Scalar(-1), min(Scalar(1), p.w / (g.c * sqrt(1 + sh * sh))));
  Scalar sin_phi;
  if (sh > 0) {
    sin_phi = max(Scalar(-1), min(Scalar(1), p.z / (g.c * sh)));
  } else {
    sin_phi = sqrt(max(Scalar(0), 1 - cos_phi * cos_phi));
  }
  return {eta, polar_angle(sin_phi, cos_phi)};
}

/// (r, theta) -> (eta, phi) = (log(r / q), theta).
template <typename Scalar>
EllipticCoord<Scalar> annulus_elliptic_bridge(const AnnulusCoord<Scalar>& c, const EllipseGeometry<Scalar>& g) {
  using std::log;
  using std::max;
  detail::require_focal_ellipse(g, "annulus_elliptic_bridge");
  if (!(c.r >= g.q * (1 - Scalar(detail::kEllipseSlack)))) {
    std::ostringstream msg;
    msg << "annulus_elliptic_bridge: radius " << static_cast<double>(c.r) << " below q = "
        << static_cast<double>(g.q);
    throw DomainError(msg.str());
  }
  return {max(Scalar(0), log(c.r / g.q)), wrap_angle(c.theta)};
}

/// (eta, phi) -> (r, theta) = (q e^eta, phi).
template <typename Scalar>
AnnulusCoord<Scalar> elliptic_annulus_bridge(const EllipticCoord<Scalar>& c, const EllipseGeometry<Scalar>& g) {
  using std::exp;
  detail::require_focal_ellipse(g, "elliptic_annulus_bridge");
  return {g.q * exp(c.eta), wrap_angle(c.phi)};
}

}  // namespace hitdisk
