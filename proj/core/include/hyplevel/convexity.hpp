#pragma once

#include "hyplevel/holomap.hpp"
#include "hyplevel/levelset.hpp"
#include "hyplevel/types.hpp"

namespace hyplevel {

/// Decision tolerance on the minimum Euclidean curvature. At the convexity
/// radius the minimum is exactly zero, so the verdict needs a dead band:
/// convex above +tol, nonconvex below -10 tol, inconclusive between.
inline constexpr double kConvexityTol = 1e-9;

enum class ConvexityVerdict { convex, nonconvex, inconclusive };

/// Curvature minima of one traced boundary, with the boundary points that
/// attain them. A nonconvex verdict always carries a witness: argmin_ke with
/// min_ke < -10 kConvexityTol.
struct ConvexityCertificate {
  double r = 0.0;
  double min_ke = 0.0;
  double min_kh = 0.0;
  Complex argmin_ke{};
  Complex argmin_kh{};
  ConvexityVerdict verdict = ConvexityVerdict::inconclusive;
};

/// Trace the boundary of the scaled region and minimize the Euclidean and
/// hyperbolic curvatures over it: a pass over the samples picks the best
/// basin, then golden-section on the angular parameter (to 1e-10) polishes
/// each minimum. Throws RequirementMismatch when p has no scale r set.
ConvexityCertificate certify(const LevelProblem& p, const TraceOptions& opts = {});

/// Result of the radius search. value is the midpoint of the final bracket
/// [lower, upper] (width 1e-6), except when the region stays convex all the
/// way to the search cap 1 - 1e-6: then capped is set and value = lower =
/// the cap. The witness fields record the first nonconvex radius seen and
/// its negative-curvature boundary point; they are zero when capped.
struct RadiusReport {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool capped = false;
  double witness_r = 0.0;
  Complex witness_z{};
  double witness_ke = 0.0;
  int certificates = 0;
};

/// Largest r in (0,1) such that the scaled region is convex, by bisection on
/// certify verdicts over the starting bracket [0.05, 1 - 1e-6]; convexity is
/// monotone in r, so the verdicts bisect cleanly. Inconclusive certificates
/// (bisection landed within the dead band of the transition) nudge the probe
/// radius by shrinking steps and retry; the search aborts after 60 traces.
/// Throws RequirementMismatch when f(0) = 0.
RadiusReport radius_of_convexity_report(const HoloMap& f);

/// Shorthand for radius_of_convexity_report(f).value.
double radius_of_convexity(const HoloMap& f);

/// Euclidean curvature of the boundary of the scaled region of f_alpha at its
/// leftmost point, where the curve is the image of the circle of radius r
/// under k_alpha:
///   ke = (k_alpha'(-r) - r k_alpha''(-r)) / (r [k_alpha'(-r)]^2).
/// For alpha = sqrt(sqrt(2)+2)/2 the sign is that of 1/sqrt(2) - r: this
/// member pins the sharp convexity threshold of the whole family.
double ke_at_pi_closed_form(double alpha, double r);

}  // namespace hyplevel
