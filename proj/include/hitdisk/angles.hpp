#pragma once

#include <cmath>
#include <numbers>

namespace hitdisk {

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
inline constexpr Scalar kTwoPi = 2 * std::numbers::pi_v<Scalar>;

/// Reduce an angle to [0, 2*pi).
template <typename Scalar>
Scalar wrap_angle(Scalar angle) {
  using std::fmod;
  Scalar wrapped = fmod(angle, kTwoPi<Scalar>);
  if (wrapped < 0) wrapped += kTwoPi<Scalar>;
  // fmod of a tiny negative number can round up to exactly 2*pi
  if (wrapped >= kTwoPi<Scalar>) wrapped = 0;
  return wrapped;
}

/// atan2 with the result reduced to [0, 2*pi); the cut lies on the negative first axis.
template <typename Scalar>
Scalar polar_angle(Scalar y, Scalar x) {
  using std::atan2;
  return wrap_angle(atan2(y, x));
}

/// Signed distance between two angles, reduced to (-pi, pi].
template <typename Scalar>
Scalar angle_difference(Scalar a, Scalar b) {
  Scalar d = wrap_angle(a - b);
  if (d > kPi<Scalar>) d -= kTwoPi<Scalar>;
  return d;
}

}  // namespace hitdisk
