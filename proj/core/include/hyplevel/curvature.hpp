#pragma once

#include "hyplevel/levelset.hpp"
#include "hyplevel/types.hpp"

namespace hyplevel {

/// Curvatures of an oriented curve at a point, with the unit normal used for
/// the hyperbolic correction term (n = i t).
struct CurvaturePair {
  double ke;
  double kh;
  Complex normal;
};

/// A curve point with its first two parameter derivatives.
struct ParametricPoint {
  Complex value;
  Complex d1;
  Complex d2;
};

/// Curvatures from parametric data:
///   ke = Im(g'' conj(g')) / |g'|^3
///   kh = (1-|z|^2) ke - 2 Re(n conj(z)),  n = i g'/|g'|.
CurvaturePair kh_parametric(const ParametricPoint& g);

/// Curvatures of the level curve {u = 0} through z, oriented with unit
/// tangent t = -i u_zbar/|u_zbar| (inward normal i t = u_zbar/|u_zbar|):
///   ke = -(Re(u_zz t^2) + u_zzbar) / |u_zbar|.
/// Throws OffCurveError when |u(z)| > 1e-10 and SingularGradient when the
/// gradient is too small to orient the curve.
CurvaturePair kh_implicit(const LevelProblem& p, Complex z);

/// Same computation from precomputed derivative data; skips the |u| check.
CurvaturePair curvature_from_wirtinger(Complex z, const WirtingerData& w);

/// Max over interior samples of |kh(finite differences) - kh(implicit)|:
/// positions alone are re-differentiated with 5-point central stencils in the
/// angular parameter and pushed through the parametric formula.
double cross_validate(const LevelProblem& p, const TracedCurve& curve);

}  // namespace hyplevel
