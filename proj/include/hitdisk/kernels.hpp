#pragma once

// Hitting kernels for the unit-speed Brownian motion in the canonical ellipse,
// written in annulus coordinates (r, theta) or elliptic coordinates (eta, phi),
// as densities in the boundary parameter tau (per radian).
//
// Three representations are provided:
//   annulus_kernel                 Fourier series in theta with radial factors r^k +- q^2k r^-k
//   elliptic_kernel                Fourier series with cosh(k eta), sinh(k eta) factors
//   poisson_superposition_kernel   classical Poisson kernel plus a series of shifted
//                                  Poisson kernels whose poles approach the centre
// They agree wherever they are all defined (r = q e^eta, theta = phi).

#include <cmath>
#include <sstream>

#include "hitdisk/angles.hpp"
#include "hitdisk/errors.hpp"
#include "hitdisk/geometry.hpp"

namespace hitdisk {

/// Truncation of the infinite series. A series stops once at least min_terms
/// terms are summed and a bound on the remaining tail is below tail_tol, or
/// once max_terms terms are summed.
struct SeriesControl {
  int max_terms = 200000;
  double tail_tol = 1e-15;
  int min_terms = 8;

  void validate() const {
    if (max_terms < 1) throw InvalidArgument("series control: max_terms must be >= 1");
    if (!(tail_tol >= 0)) throw InvalidArgument("series control: tail_tol must be >= 0");
    if (min_terms < 0) throw InvalidArgument("series control: min_terms must be >= 0");
  }
};

template <typename Scalar = double>
struct KernelValue {
  Scalar value;
  int terms = 0;           // number of series terms summed
  bool converged = true;   // false when max_terms bound before the tail did
};

namespace detail {

/// Step cos(k x), sin(k x) to cos((k+1) x), sin((k+1) x).
template <typename Scalar>
struct Harmonic {
  Scalar c1, s1;
  Scalar c = 1, s = 0;
  explicit Harmonic(Scalar x) : c1(std::cos(x)), s1(std::sin(x)) {}
  void advance() {
    const Scalar cn = c * c1 - s * s1;
    s = s * c1 + c * s1;
    c = cn;
  }
};

/// Annulus series at any radius q^2 < r < 1. Outside [q, 1) the value is the
/// analytic continuation, needed for central differences across r = q.
template <typename Scalar>
KernelValue<Scalar> annulus_series(Scalar r, Scalar theta, Scalar tau, const EllipseGeometry<Scalar>& g,
                                   const SeriesControl& ctl) {
  using std::max;
  ctl.validate();
  const Scalar q2 = g.q * g.q;
  const Scalar inner = r > 0 ? q2 / r : Scalar(0);
  const Scalar ratio = max(r, inner);  // geometric decay of the k-th coefficient
  const Scalar tail_scale = 4 / (kPi<Scalar> * (1 - ratio) * (1 - q2));

  Harmonic<Scalar> ht(theta), hu(tau);
  Scalar sum = 0;
  Scalar rk = 1, ik = 1, q2k = 1, ratio_k = 1;
  KernelValue<Scalar> out{0, 0, false};
  for (int k = 1; k <= ctl.max_terms; ++k) {
    ht.advance();
    hu.advance();
    rk *= r;
    ik *= inner;
    q2k *= q2;
    ratio_k *= ratio;
    const Scalar even = (rk + ik) / (1 + q2k);
    const Scalar odd = (rk - ik) / (1 - q2k);
    sum += even * ht.c * hu.c + odd * ht.s * hu.s;
    out.terms = k;
    if (k >= ctl.min_terms && ratio_k * ratio * tail_scale < Scalar(ctl.tail_tol)) {
      out.converged = true;
      break;
    }
  }
  out.value = 1 / kTwoPi<Scalar> + sum / kPi<Scalar>;
  return out;
}

/// (rho^2 - s^2) / (rho^2 - 2 rho s cos(psi) + s^2): Poisson kernel (times 2 pi) on a
/// circle of radius rho for a source at distance s from the centre.
template <typename Scalar>
Scalar scaled_poisson(Scalar rho, Scalar s, Scalar psi) {
  using std::cos;
  return (rho * rho - s * s) / (rho * rho - 2 * rho * s * cos(psi) + s * s);
}

}  // namespace detail

/// Kernel from separation of variables in the annulus, for q <= r < 1.
template <typename Scalar>
KernelValue<Scalar> annulus_kernel(Scalar r, Scalar theta, Scalar tau, const EllipseGeometry<Scalar>& g,
                                   const SeriesControl& ctl = {}) {
  if (!(r >= g.q * (1 - Scalar(1e-12)) && r < 1)) {
    std::ostringstream msg;
    msg << "annulus_kernel: radius " << static_cast<double>(r) << " outside [" << static_cast<double>(g.q)
        << ", 1)";
    throw DomainError(msg.str());
  }
  return detail::annulus_series(r < g.q ? g.q : r, theta, tau, g, ctl);
}

/// Kernel from separation of variables in elliptic coordinates, for 0 <= eta < eta_hat.
template <typename Scalar>
KernelValue<Scalar> elliptic_kernel(Scalar eta, Scalar phi, Scalar tau, const EllipseGeometry<Scalar>& g,
                                    const SeriesControl& ctl = {}) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  ctl.validate();
  if (g.degenerate()) throw DomainError("elliptic_kernel: undefined when rho = 0");
  if (!(eta >= 0 && eta < g.eta_hat)) {
    std::ostringstream msg;
    msg << "elliptic_kernel: eta " << static_cast<double>(eta) << " outside [0, "
        << static_cast<double>(g.eta_hat) << ")";
    throw DomainError(msg.str());
  }
  const Scalar decay = exp(eta - g.eta_hat);
  const Scalar tail_scale = 4 / (kPi<Scalar> * (1 - decay) * (1 - exp(-2 * g.eta_hat)));
  // past this argument cosh/sinh overflow in double; switch to the e^{-k(eta_hat - eta)} form
  constexpr double kDirectLimit = 300;

  detail::Harmonic<Scalar> hp(phi), ht(tau);
  Scalar sum = 0, decay_k = 1;
  KernelValue<Scalar> out{0, 0, false};
  for (int k = 1; k <= ctl.max_terms; ++k) {
    hp.advance();
    ht.advance();
    decay_k *= decay;
    Scalar ch, sh;
    if (k * g.eta_hat < Scalar(kDirectLimit)) {
      ch = cosh(k * eta) / cosh(k * g.eta_hat);
      sh = sinh(k * eta) / sinh(k * g.eta_hat);
    } else {
      const Scalar lo = exp(-2 * k * eta), hi = exp(-2 * k * g.eta_hat);
      ch = decay_k * (1 + lo) / (1 + hi);
      sh = decay_k * (1 - lo) / (1 - hi);
    }
    sum += ch * hp.c * ht.c + sh * hp.s * ht.s;
    out.terms = k;
    if (k >= ctl.min_terms && decay_k * decay * tail_scale < Scalar(ctl.tail_tol)) {
      out.converged = true;
      break;
    }
  }
  out.value = 1 / kTwoPi<Scalar> + sum / kPi<Scalar>;
  return out;
}

/// Negative control: the elliptic series with k-independent hyperbolic factors
/// sinh(eta)/sinh(eta_hat) on the cosine pair and cosh(eta)/cosh(eta_hat) on the
/// sine pair. The terms do not decay, so exactly ctl.max_terms terms are summed.
/// This form is not a solution of the boundary problem and exists to be rejected.
template <typename Scalar>
KernelValue<Scalar> elliptic_kernel_swapped_hyperbolic(Scalar eta, Scalar phi, Scalar tau,
                                                       const EllipseGeometry<Scalar>& g,
                                                       const SeriesControl& ctl = {}) {
  using std::cosh;
  using std::sinh;
  ctl.validate();
  if (g.degenerate()) throw DomainError("elliptic_kernel_swapped_hyperbolic: undefined when rho = 0");
  const Scalar cos_factor = sinh(eta) / sinh(g.eta_hat);
  const Scalar sin_factor = cosh(eta) / cosh(g.eta_hat);
  detail::Harmonic<Scalar> hp(phi), ht(tau);
  Scalar sum = 0;
  for (int k = 1; k <= ctl.max_terms; ++k) {
    hp.advance();
    ht.advance();
    sum += cos_factor * hp.c * ht.c + sin_factor * hp.s * ht.s;
  }
  return {1 / kTwoPi<Scalar> + sum / kPi<Scalar>, ctl.max_terms, false};
}

/// Poisson kernel of the disk of radius r_out at polar position (r, theta), per radian of tau.
template <typename Scalar>
Scalar classical_poisson(Scalar r, Scalar theta, Scalar r_out, Scalar tau) {
  if (!(r >= 0 && r < r_out)) {
    std::ostringstream msg;
    msg << "classical_poisson: radius " << static_cast<double>(r) << " outside [0, "
        << static_cast<double>(r_out) << ")";
    throw DomainError(msg.str());
  }
  return detail::scaled_poisson(r_out, r, theta - tau) / kTwoPi<Scalar>;
}

/// j-th bracket of the shifted-Poisson series (already divided by 2 pi). Sources
/// sit at radii q^{2(2j+1)} and q^{4(j+1)} and at angles -theta and theta.
template <typename Scalar>
Scalar superposition_term(int j, Scalar r, Scalar theta, Scalar tau, const EllipseGeometry<Scalar>& g) {
  using std::pow;
  const Scalar q2 = g.q * g.q;
  const Scalar near = pow(q2, 2 * j + 1);   // q^{2(2j+1)}
  const Scalar far = pow(q2, 2 * j + 2);    // q^{4(j+1)}
  const Scalar plus = theta + tau, minus = theta - tau;
  const Scalar bracket = detail::scaled_poisson(r, near, plus) - detail::scaled_poisson(Scalar(1), r * near, plus)
                       - detail::scaled_poisson(r, far, minus) + detail::scaled_poisson(Scalar(1), r * far, minus);
  return bracket / kTwoPi<Scalar>;
}

/// Annulus kernel rewritten as a superposition of classical Poisson kernels, for q <= r < 1.
template <typename Scalar>
KernelValue<Scalar> poisson_superposition_kernel(Scalar r, Scalar theta, Scalar tau,
                                                 const EllipseGeometry<Scalar>& g,
                                                 const SeriesControl& ctl = {}) {
  using std::pow;
  ctl.validate();
  const Scalar q2 = g.q * g.q;
  if (!(r >= g.q * (1 - Scalar(1e-12)) && r < 1) || !(r > q2 || g.degenerate())) {
    std::ostringstream msg;
    msg << "poisson_superposition_kernel: radius " << static_cast<double>(r) << " outside ["
        << static_cast<double>(g.q) << ", 1)";
    throw DomainError(msg.str());
  }
  const Scalar q4 = q2 * q2;
  KernelValue<Scalar> out{detail::scaled_poisson(Scalar(1), r, theta - tau) / kTwoPi<Scalar>, 0, false};
  if (g.degenerate()) {
    out.converged = true;
    return out;
  }
  // |P(x) - 1| <= 2x/(1-x) for each shifted kernel; the four are dominated by x = q^{2(2j+1)}/r
  auto bracket_bound = [&](int j) {
    const Scalar x = pow(q2, 2 * j + 1) / r;
    return 8 * x / ((1 - x) * (1 - q4) * kTwoPi<Scalar>);
  };
  for (int j = 0; j < ctl.max_terms; ++j) {
    out.value += superposition_term(j, r, theta, tau, g);
    out.terms = j + 1;
    if (bracket_bound(j + 1) < Scalar(ctl.tail_tol)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace hitdisk
