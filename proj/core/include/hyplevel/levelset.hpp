#pragma once

#include <optional>
#include <vector>

#include "hyplevel/holomap.hpp"
#include "hyplevel/types.hpp"

namespace hyplevel {

/// Defining function data for u(z) = |F(z)|^2 - lambda |z|^2 + lambda - 1,
/// where F is the problem's effective map. The level region is {u > 0} and
/// its boundary inside the disc is {u = 0}.
///
/// A problem is either a plain (f, lambda >= 1) pair, or the Jordan variant
/// (f, r) with r in (0,1), which studies {|z| < |r f(z)|}: effective map r*f,
/// effective lambda 1. Whenever the effective lambda is 1 the standing
/// hypothesis F(0) != 0 is enforced at construction.
class LevelProblem {
 public:
  static LevelProblem with_lambda(HoloMap f, double lambda);
  static LevelProblem jordan(HoloMap f, double r);

  /// Skips validation; for probing degenerate data (e.g. f = id, lambda = 1,
  /// whose u vanishes identically) without tripping the constructor.
  static LevelProblem unchecked(HoloMap f, double lambda,
                                std::optional<double> r = std::nullopt);

  const HoloMap& map() const { return effective_; }      // r*f or f
  const HoloMap& base_map() const { return base_; }      // f as given
  double lambda() const { return lambda_; }              // effective (1 when r set)
  std::optional<double> scale_r() const { return r_; }

 private:
  LevelProblem(HoloMap base, HoloMap effective, double lambda, std::optional<double> r)
      : base_(std::move(base)), effective_(std::move(effective)), lambda_(lambda), r_(r) {}

  HoloMap base_;
  HoloMap effective_;
  double lambda_;
  std::optional<double> r_;
};

double u_value(const LevelProblem& p, Complex z);

/// First and second Wirtinger derivatives of u. u is real, so u_zbar is the
/// conjugate of u_z and u_zzbar is real; the full gradient is 2 u_zbar.
struct WirtingerData {
  double u;
  Complex u_z;       // F'(z) conj(F(z)) - lambda conj(z)
  Complex u_zbar;    // conj(u_z)
  Complex u_zz;      // F''(z) conj(F(z))
  double u_zzbar;    // |F'(z)|^2 - lambda
};

WirtingerData u_wirtinger(const LevelProblem& p, Complex z);

struct SeedOptions {
  int rays = 64;
  int steps_per_ray = 400;
  double max_radius = 1.0 - 1e-6;
  double bisect_tol = 1e-13;
};

/// Scan rays from the origin for a sign change of u and bisect it down.
/// Returns nothing when no ray crosses the zero set (the level region fills
/// the disc, e.g. an inner function with sup |F'| <= lambda).
std::optional<Complex> find_boundary_seed(const LevelProblem& p, const SeedOptions& opts = {});

/// Solve u(rho e^{i theta}) = 0 for the starlike boundary radius on one ray.
/// Newton iteration from `hint` with a bisection-safeguarded bracket.
double boundary_radius(const LevelProblem& p, double theta, double hint);

struct TraceOptions {
  double angle_budget = 0.05;   // radians of turning per predictor step
  double h_min = 1e-5;
  double h_max = 0.02;
  double corrector_tol = 1e-12; // |u| accepted at a sample
  double seed_tol = 1e-9;       // |u(seed)| required on entry
  double edge_margin = 1e-4;    // open arcs stop at |z| > 1 - edge_margin
  double closure_tangent_dot = 0.99;
  int max_steps = 20000;
  std::size_t min_quadrature_points = 256;
  std::size_t max_quadrature_points = 1u << 16;

  /// Same options at twice the sampling density, for convergence studies.
  TraceOptions halved() const {
    TraceOptions o = *this;
    o.angle_budget *= 0.5;
    o.h_min *= 0.5;
    o.h_max *= 0.5;
    return o;
  }
};

struct CurveSample {
  double theta;           // angular parameter (uniform along the curve)
  Complex z;
  Complex velocity;       // dz/dtheta, exact from implicit differentiation
  Complex unit_tangent;   // -i u_zbar/|u_zbar|
  Complex inward_normal;  // u_zbar/|u_zbar|, points into {u > 0}
  double ke;              // Euclidean curvature
  double kh;              // hyperbolic curvature
  double arc_param;       // cumulative arclength from the first sample
  double u_residual;      // u at the sample after correction
};

/// A traced boundary component. Samples are equally spaced in the polar angle
/// (the traced components are starlike about the origin), oriented so that the
/// inward normal i*t points into the level region; for closed curves theta
/// runs over [0, 2pi) with no duplicated endpoint, for arcs over the refined
/// angular span with both endpoints included.
///
/// The uniform angular grid is anchored to the curve itself (theta = 0 for
/// closed curves, the |z| = 1 - edge_margin crossings for arcs), so re-tracing
/// from any seed reproduces the same point set to corrector accuracy.
struct TracedCurve {
  std::optional<LevelProblem> problem;
  std::vector<CurveSample> samples;
  bool closed = false;
  int turning_number = 0;   // closed curves: +1 for a positively wound Jordan curve
  int adaptive_steps = 0;   // length of the discovery pass
  double theta_lo = 0.0;    // arcs: angular span; closed: [0, 2pi)
  double theta_hi = 0.0;

  double length_euclidean() const {
    if (samples.empty())
      return 0.0;
    double len = samples.back().arc_param;
    if (closed && samples.size() > 1) {
      double dtheta = samples[1].theta - samples[0].theta;
      len += 0.5 * dtheta *
             (std::abs(samples.back().velocity) + std::abs(samples.front().velocity));
    }
    return len;
  }
};

/// Trace the boundary component through `seed`: an adaptive predictor-
/// corrector pass discovers the component (curvature-scaled steps, Newton
/// correction along the normal, closure/edge-exit detection), then the
/// component is resampled on its canonical uniform angular grid with all
/// sample data recomputed from exact formulas.
TracedCurve trace(const LevelProblem& p, Complex seed, const TraceOptions& opts = {});

/// Seed search followed by trace. Throws RequirementMismatch when the level
/// region has no boundary inside the disc.
TracedCurve trace(const LevelProblem& p, const TraceOptions& opts = {});

/// Largest radial gap | |pt| - rho_curve(arg pt) | over the points, where
/// rho_curve is solved on `curve`'s own problem. For starlike boundaries this
/// dominates the distance from each point to the curve. Points whose angle
/// falls outside an arc's span are skipped; returns the max over the rest.
double points_to_curve_gap(const TracedCurve& curve, const std::vector<Complex>& points);

/// Hausdorff distance between two traced boundaries of starlike regions,
/// evaluated as the symmetric max radial gap (an upper bound for the true
/// Hausdorff distance, tight for graphs over the angle).
double curve_hausdorff(const TracedCurve& a, const TracedCurve& b);

}  // namespace hyplevel
