#pragma once

#include <string>
#include <vector>

#include "hyplevel/levelset.hpp"

namespace hyplevel {

// Which quadrature path produced a value.
inline constexpr unsigned kMethodBoundaryTrapezoid = 1u;
inline constexpr unsigned kMethodPolarOracle = 2u;

/// Hyperbolic measures of a closed traced boundary, metric |dz|/(1-|z|^2).
/// The enclosed region has curvature -4 geometry: total_kh - 4 area_h = 2 pi,
/// and perimeter_h^2 >= 4 pi area_h + 4 area_h^2 with equality exactly on
/// hyperbolic circles.
struct MeasureSet {
  double area_h = 0.0;       // integral of lambda^2 over the region
  double perimeter_h = 0.0;  // integral of lambda |dz| along the boundary
  double total_kh = 0.0;     // integral of k_h lambda |dz| along the boundary
  unsigned method_flags = 0;
};

/// Hyperbolic perimeter by periodic trapezoid over the canonical grid.
/// Throws OpenCurveError for arcs: boundary pieces with endpoints on the
/// unit circle have infinite hyperbolic length.
double perimeter_h(const TracedCurve& curve);

/// Hyperbolic area of the enclosed region via the boundary reduction
/// A_h = closed integral of Im(conj(z) dz) / (2 (1 - |z|^2)); the integrand
/// is an exact primitive of the area density lambda^2. Requires a closed,
/// positively oriented curve (canonical closed traces are, by construction).
double area_h(const TracedCurve& curve);

/// Total hyperbolic curvature along the closed boundary.
double total_kh(const TracedCurve& curve);

/// All three measures in one pass over the samples (fixed summation order;
/// results are independent of any parallel partitioning by contract).
MeasureSet measures(const TracedCurve& curve);

/// total_kh - 4 area_h - 2 pi; zero for exact quadrature on any closed curve.
double gauss_bonnet_residual(const MeasureSet& ms);

/// perimeter_h^2 - 4 pi area_h - 4 area_h^2; nonnegative, zero exactly on
/// hyperbolic circles.
double isoperimetric_residual(const MeasureSet& ms);

/// Independent area check: 2-D Gauss-Legendre quadrature of the density
/// r / (1 - r^2)^2 in polar coordinates, with fresh radial boundary solves
/// at the angular nodes. Shares no samples or primitive with area_h.
double area_oracle_polar(const LevelProblem& p, const TracedCurve& curve,
                         int theta_panels = 64, int radial_nodes = 12);

/// One sublevel-measure inequality verdict. `id` values are the stable
/// registry names (P71_area, P71_perimeter, C72_total, P73_perimeter,
/// T75_area, T75_perimeter, T75_isop, C76_area, C77_lower, C77_upper,
/// C78_isop). margin >= 0 means the inequality holds (sign-adjusted so the
/// satisfied side is positive for both lower and upper bounds).
struct MeasureCheck {
  std::string id;
  bool applicable = false;
  std::string skip_reason;  // set exactly when not applicable
  double lhs = 0.0;         // measured quantity
  double rhs = 0.0;         // bound value
  double margin = 0.0;
  bool equality = false;  // |margin| < 1e-8
  bool satisfied = false;
};

/// Evaluates the sublevel inequalities against measured values:
///   P71_area:      area_h >= max{pi (lambda - 1),
///                               (pi/2) (1/sqrt(1 - |F(0)|^2) - 1)}
///   P71_perimeter: perimeter_h >= max{2 pi sqrt(lambda (lambda - 1)),
///                                     pi |F(0)| / sqrt(1 - |F(0)|^2)}
/// and, for scaled-disc regions with base map value f(0) != 0 at scale r:
///   C72_total:     total_kh > 2 pi / sqrt(1 - r^2 |f(0)|^2)        (strict)
///   P73_perimeter: perimeter_h >= 2 pi r |f(0)| /
///                    ((1+r) sqrt((1+r)^2 - 4 r |f(0)|^2))
///   T75_area:      area_h <= pi r^2 |f(0)|^2 / (1 - r^2)
///   T75_perimeter: perimeter_h <= 2 pi r |f(0)| / (1 - r^2)
///   T75_isop:      perimeter_h^2 <= (4 pi / (1 - r^2)) area_h
///   C76_area:      area_h >= pi (1-r) r^2 |f(0)|^2 /
///                    ((1+r) ((1+r)^2 - 4 r |f(0)|^2))
///   C77_lower/upper: 2 pi + 4 * {C76_area, T75_area} bounds on total_kh
///   C78_isop:      perimeter_h^2 <= (4 pi r / (1 - r^2))
///                    (area_h + pi r / (1 + r))
/// Rows outside the problem's family carry a skip reason instead of values.
/// Every non-strict inequality turns into equality exactly for unimodular
/// constant maps.
///
/// Margins are reported as measured. In particular the T75_area cap (and
/// C77_upper, which is 2 pi + 4 times the same quantity) is NOT valid for
/// every admissible map: scaled Blaschke products and disc automorphisms can
/// exceed it, and such rows come back with a negative margin and
/// satisfied = false rather than being clamped.
std::vector<MeasureCheck> verify_section7(const LevelProblem& p, const MeasureSet& ms);

}  // namespace hyplevel
