#pragma once

#include "hyplevel/holomap.hpp"
#include "hyplevel/types.hpp"

namespace hyplevel {

/// Conformal map psi of the unit disc onto the region bounded by the level
/// curve of f, defined pointwise by the fixed-point equation
///     w f(psi(w)) = psi(w),    psi(0) = 0,  psi'(0) = f(0).
/// The map z -> w f(z) is a strict contraction of the closed disc |z| <= |w|,
/// so the fixed point exists, is unique, and Picard iteration reaches it from
/// z0 = w f(0). Requires |f(0)| >= 1e-12: otherwise psi degenerates to 0.
class FixedPointMap {
 public:
  explicit FixedPointMap(HoloMap f, int max_iter = 200, double picard_tol = 1e-14);

  /// Fixed point of z -> w f(z) for |w| < 1. Picard iteration until the step
  /// drops below picard_tol, at most max_iter times, then a Newton polish on
  /// g(z) = w f(z) - z. Throws DomainError for |w| >= 1 and NoConvergence if
  /// the final residual |w f(z) - z| exceeds 1e-13.
  Complex psi(Complex w) const;

  /// d/dw of the fixed point, by implicit differentiation:
  ///     psi' = f(psi) / (1 - w f'(psi)).
  /// Throws NearSingular when |1 - w f'(psi)| < 1e-10. (Schwarz-Pick keeps
  /// |w f'(psi)| < 1 in exact arithmetic, so the guard is defensive.)
  Complex psi_prime(Complex w) const;

  /// psi with its first two derivatives; the second comes from differentiating
  /// the identity once more:
  ///     psi'' = (2 f'(psi) + w f''(psi) psi') psi' / (1 - w f'(psi)).
  Jet psi_jet(Complex w) const;

  const HoloMap& map() const { return f_; }

 private:
  HoloMap f_;
  Complex f0_;
  int max_iter_;
  double picard_tol_;
};

/// Boundary distortion coefficient at the image point zeta = psi(w), |w| = r:
///     C = (1 - |psi(w)|^2) / (r |psi'(w)|)
///       = |conj((rf)'(zeta)) (rf)(zeta) - zeta| (1 - |zeta|^2) / |zeta|^2.
/// Both routes are evaluated and must agree to 1e-9 (InternalCheckError
/// otherwise); the psi form is returned. Requires r in (0,1) and |w| = r.
double c_quantity(const FixedPointMap& m, double r, Complex w);

/// The Herglotz-type transform of psi:
///     p(w) = 1 + w psi''/psi' + 2 w psi' conj(psi) / (1 - |psi|^2),
/// with p(0) = 1. Re p(w) times c_quantity(|w|) is the hyperbolic curvature
/// of the level curve through psi(w); that identity is re-derived through the
/// implicit-curvature route on every call and must hold to 1e-8
/// (InternalCheckError otherwise).
Complex p_of_w(const FixedPointMap& m, Complex w);

}  // namespace hyplevel
