#pragma once

// Joukowski-type map between the solid ellipse and the annulus q <= r <= 1:
//   w = (A r + B / r) cos(theta),   z = (A r - B / r) sin(theta)
// with A = (a + b)/2, B = (a - b)/2.  The inner circle r = q collapses onto the
// focal segment, where (q, theta) and (q, -theta) meet.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "hitdisk/angles.hpp"
#include "hitdisk/errors.hpp"
#include "hitdisk/geometry.hpp"

namespace hitdisk {

template <typename Scalar = double>
struct AnnulusCoord {
  Scalar r;
  Scalar theta;
};

/// m = A^2 r^2 + B^2 / r^2, recovered from (w, z) as the non-negative root of
/// m^2 - (w^2 + z^2) m + 2AB (w^2 - z^2 - 2AB) = 0.
template <typename Scalar = double>
struct InversionIntermediate {
  Scalar m;
  // m - 2AB, kept separately because m^2 - 4A^2B^2 = gap (gap + 4AB) is
  // otherwise lost to cancellation near the focal segment.
  Scalar gap;
};

namespace detail {

/// Relative slack for points that should lie on the closed ellipse but miss by roundoff.
inline constexpr double kEllipseSlack = 1e-12;

template <typename Scalar>
void require_in_ellipse(const EllipsePoint<Scalar>& p, const EllipseGeometry<Scalar>& g,
                        const char* who) {
  const Scalar level = (p.w / g.a) * (p.w / g.a) + (p.z / g.b) * (p.z / g.b);
  if (!(level <= 1 + Scalar(kEllipseSlack))) {
    std::ostringstream msg;
    msg << who << ": point (" << static_cast<double>(p.w) << ", " << static_cast<double>(p.z)
        << ") lies outside the ellipse";
    throw DomainError(msg.str());
  }
}

/// sqrt of the discriminant (w^2+z^2)^2 - 2c^2(w^2-z^2) + c^4, written as a sum of squares.
template <typename Scalar>
Scalar focal_discriminant_root(const EllipsePoint<Scalar>& p, Scalar c2) {
  using std::sqrt;
  const Scalar s = p.w * p.w + p.z * p.z;
  return sqrt((s - c2) * (s - c2) + 4 * c2 * p.z * p.z);
}

/// x + root with x possibly negative, where root^2 - x^2 = num; avoids cancellation.
template <typename Scalar>
Scalar stable_sum(Scalar x, Scalar root, Scalar num) {
  if (x >= 0) return x + root;
  const Scalar den = root - x;
  return den > 0 ? num / den : Scalar(0);
}

}  // namespace detail

template <typename Scalar>
EllipsePoint<Scalar> annulus_to_ellipse(const AnnulusCoord<Scalar>& c, const EllipseGeometry<Scalar>& g) {
  using std::cos;
  using std::sin;
  const Scalar tol = Scalar(detail::kEllipseSlack);
  if (!(c.r >= g.q * (1 - tol) && c.r <= 1 + tol)) {
    std::ostringstream msg;
    msg << "annulus_to_ellipse: radius " << static_cast<double>(c.r) << " outside ["
        << static_cast<double>(g.q) << ", 1]";
    throw DomainError(msg.str());
  }
  const Scalar inner = g.B_cap > 0 ? g.B_cap / c.r : Scalar(0);
  return {(g.A_cap * c.r + inner) * cos(c.theta), (g.A_cap * c.r - inner) * sin(c.theta)};
}

/// The auxiliary root m for a point of the closed ellipse.
template <typename Scalar>
InversionIntermediate<Scalar> inversion_intermediate(const EllipsePoint<Scalar>& p,
                                                     const EllipseGeometry<Scalar>& g) {
  const Scalar c2 = g.focal_sq();
  const Scalar s = p.w * p.w + p.z * p.z;
  const Scalar root = detail::focal_discriminant_root(p, c2);
  // s - c^2 + root, equal to 4 c^2 z^2 / (root + c^2 - s) when s < c^2
  const Scalar twice_gap = detail::stable_sum(s - c2, root, 4 * c2 * p.z * p.z);
  return {(twice_gap + c2) / 2, twice_gap / 2};
}

/// Both candidate values of r^2 from A^2 r^4 - m r^2 + B^2 = 0, {plus-root, minus-root}.
template <typename Scalar>
std::pair<Scalar, Scalar> radius_squared_roots(const InversionIntermediate<Scalar>& im,
                                               const EllipseGeometry<Scalar>& g) {
  using std::max;
  using std::sqrt;
  // m^2 - 4 A^2 B^2 = (m - 2AB)(m + 2AB); clamp roundoff near the focal segment
  Scalar disc = im.gap * (im.gap + 4 * g.A_cap * g.B_cap);
  if (disc < 0) disc = 0;
  const Scalar root = sqrt(disc);
  const Scalar den = 2 * g.A_cap * g.A_cap;
  return {(im.m + root) / den, max(Scalar(0), (im.m - root) / den)};
}

/// |sin(theta)| from (w, z).
template <typename Scalar>
Scalar annulus_abs_sin(const EllipsePoint<Scalar>& p, const EllipseGeometry<Scalar>& g) {
  using std::min;
  using std::sqrt;
  const Scalar c2 = g.focal_sq();
  const Scalar s = p.w * p.w + p.z * p.z;
  const Scalar root = detail::focal_discriminant_root(p, c2);
  // c^2 - s + root, equal to 4 c^2 z^2 / (root + s - c^2) when s > c^2
  const Scalar numer = detail::stable_sum(c2 - s, root, 4 * c2 * p.z * p.z);
  return sqrt(min(Scalar(1), numer / (2 * c2)));
}

/// Inverse of annulus_to_ellipse. On the focal segment theta is returned in [0, pi].
template <typename Scalar>
AnnulusCoord<Scalar> ellipse_to_annulus(const EllipsePoint<Scalar>& p, const EllipseGeometry<Scalar>& g) {
  using std::hypot;
  using std::min;
  using std::max;
  using std::sqrt;
  detail::require_in_ellipse(p, g, "ellipse_to_annulus");

  if (g.degenerate()) {
    // circle: the map is plain polar coordinates scaled by A
    const Scalar r = min(Scalar(1), hypot(p.w, p.z) / g.A_cap);
    return {r, polar_angle(p.z, p.w)};
  }

  const auto im = inversion_intermediate(p, g);
  const Scalar r = min(Scalar(1), max(g.q, sqrt(radius_squared_roots(im, g).first)));
  const Scalar sin_mag = annulus_abs_sin(p, g);
  const Scalar cos_val = p.w / (g.A_cap * r + g.B_cap / r);
  const Scalar sin_val = p.z < 0 ? -sin_mag : sin_mag;
  return {r, polar_angle(sin_val, cos_val)};
}

}  // namespace hitdisk
