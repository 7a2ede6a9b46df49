#include "hyplevel/levelset.hpp"

#include <algorithm>
#include <cmath>

#include "hyplevel/curvature.hpp"
#include "hyplevel/numeric.hpp"

namespace hyplevel {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kGradientFloor = 1e-10;

Complex tangent_from(const WirtingerData& w) {
  double g = std::abs(w.u_zbar);
  if (g < kGradientFloor)
    throw SingularGradient("level curve tangent: |grad u| below 1e-10");
  return Complex(0.0, -1.0) * w.u_zbar / g;
}

}  // namespace

LevelProblem LevelProblem::with_lambda(HoloMap f, double lambda) {
  if (!(lambda >= 1.0))
    throw RequirementMismatch("LevelProblem: lambda must be >= 1");
  if (lambda == 1.0 && std::abs(f(0.0)) < 1e-12)
    throw RequirementMismatch("LevelProblem: lambda = 1 needs f(0) != 0");
  HoloMap eff = f;
  return LevelProblem(std::move(f), std::move(eff), lambda, std::nullopt);
}

LevelProblem LevelProblem::jordan(HoloMap f, double r) {
  if (!(r > 0.0 && r < 1.0))
    throw RequirementMismatch("LevelProblem: r must lie in (0, 1)");
  if (std::abs(f(0.0)) < 1e-12)
    throw RequirementMismatch("LevelProblem: the scaled problem needs f(0) != 0");
  HoloMap eff = HoloMap::scalar_mul(r, f);
  return LevelProblem(std::move(f), std::move(eff), 1.0, r);
}

LevelProblem LevelProblem::unchecked(HoloMap f, double lambda, std::optional<double> r) {
  HoloMap eff = r ? HoloMap::scalar_mul(*r, f) : f;
  return LevelProblem(std::move(f), std::move(eff), r ? 1.0 : lambda, r);
}

double u_value(const LevelProblem& p, Complex z) {
  Jet j = p.map().eval(z, 0);
  return std::norm(j.f) - p.lambda() * std::norm(z) + p.lambda() - 1.0;
}

WirtingerData u_wirtinger(const LevelProblem& p, Complex z) {
  Jet j = p.map().eval(z, 2);
  double lambda = p.lambda();
  WirtingerData w;
  w.u = std::norm(j.f) - lambda * std::norm(z) + lambda - 1.0;
  w.u_z = j.d1 * std::conj(j.f) - lambda * std::conj(z);
  w.u_zbar = std::conj(w.u_z);
  w.u_zz = j.d2 * std::conj(j.f);
  w.u_zzbar = std::norm(j.d1) - lambda;
  return w;
}

std::optional<Complex> find_boundary_seed(const LevelProblem& p, const SeedOptions& opts) {
  double drho = opts.max_radius / opts.steps_per_ray;
  for (int k = 0; k < opts.rays; ++k) {
    double theta = kTwoPi * k / opts.rays;
    Complex dir = std::polar(1.0, theta);
    double prev = opts.max_radius * 1e-9;  // u(0) > 0 for every valid problem
    for (int i = 1; i <= opts.steps_per_ray; ++i) {
      double rho = i * drho;
      if (u_value(p, rho * dir) <= 0.0) {
        double lo = prev, hi = rho;
        while (hi - lo > opts.bisect_tol) {
          double mid = 0.5 * (lo + hi);
          (u_value(p, mid * dir) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi) * dir;
      }
      prev = rho;
    }
  }
  return std::nullopt;
}

double boundary_radius(const LevelProblem& p, double theta, double hint) {
  Complex dir = std::polar(1.0, theta);
  // Extended-precision residual: the defining function cancels to ~1e-16 in
  // double near the unit circle, which would leave the solved point too far
  // off the curve for the promised curvature accuracy at arc endpoints.
  long double lam = p.lambda();
  auto u_at = [&](double rho) -> long double {
    std::complex<long double> z(rho * static_cast<long double>(dir.real()),
                                rho * static_cast<long double>(dir.imag()));
    return std::norm(p.map().value_ld(z)) - lam * std::norm(z) + lam - 1.0L;
  };

  double cap = 1.0 - 1e-9;
  double rho = std::clamp(hint, 1e-12, cap);
  long double u = u_at(rho);

  // Bracket [lo, hi] with u(lo) > 0 >= u(hi); the traced components are
  // starlike, so the ray crosses the boundary exactly once.
  double lo, hi;
  if (u > 0.0L) {
    lo = rho;
    double step = std::max(1e-4, 1e-3 * (1.0 - rho));
    hi = rho;
    do {
      hi = std::min(hi + step, cap);
      step *= 2.0;
      if (hi >= cap && u_at(hi) > 0.0L) {
        // Arcs of the lambda = 1 family meet the unit circle tangentially in
        // rho: near a tip angle, |u| at the cap falls to ~1e-18, below the
        // evaluation noise. A tiny positive value there is a crossing at the
        // cap, not a miss; the residual gate below still rejects real misses.
        if (u_at(cap) <= 1e-14L)
          break;
        throw Error("boundary_radius: no crossing outward of the hint");
      }
    } while (u_at(hi) > 0.0L);
  } else {
    hi = rho;
    double step = std::max(1e-4, 1e-3 * rho);
    lo = rho;
    do {
      lo = std::max(lo - step, 0.0);
      step *= 2.0;
      if (lo <= 0.0 && u_at(lo) <= 0.0L)
        throw Error("boundary_radius: no crossing inward of the hint");
    } while (u_at(lo) <= 0.0L);
  }

  rho = 0.5 * (lo + hi);
  double best_rho = rho;
  long double best_u = fabsl(u_at(rho));
  for (int it = 0; it < 100; ++it) {
    WirtingerData w = u_wirtinger(p, rho * dir);
    long double ul = u_at(rho);
    double u_rho = 2.0 * (w.u_z * dir).real();
    (ul > 0.0L ? lo : hi) = rho;
    if (fabsl(ul) < best_u) {
      best_u = fabsl(ul);
      best_rho = rho;
    }
    if (fabsl(ul) <= 1e-19L)
      break;
    double next = (std::abs(u_rho) > 1e-14)
                      ? rho - static_cast<double>(ul / u_rho)
                      : 0.5 * (lo + hi);
    if (!(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    if (next == rho)
      break;
    rho = next;
  }
  if (best_u > 1e-10L)
    throw NoConvergence("boundary_radius: residual above 1e-10");
  return best_rho;
}

namespace {

// Newton along the gradient direction until |u| falls under tol (keeps
// iterating while it still improves, so accepted points typically carry
// residuals near machine precision).
std::optional<Complex> correct_to_curve(const LevelProblem& p, Complex z, double tol) {
  Complex best = z;
  double best_u = std::abs(u_value(p, z));
  for (int it = 0; it < 40; ++it) {
    WirtingerData w = u_wirtinger(p, z);
    double g2 = std::norm(w.u_zbar);
    if (g2 < kGradientFloor * kGradientFloor)
      throw SingularGradient("corrector: |grad u| below 1e-10");
    if (std::abs(w.u) < best_u) {
      best_u = std::abs(w.u);
      best = z;
    }
    if (std::abs(w.u) <= 1e-15)
      break;
    Complex step = -w.u * w.u_zbar / (2.0 * g2);
    z += step;
    if (std::norm(z) >= 1.0)
      return std::nullopt;
    if (std::abs(step) < 1e-17)
      break;
  }
  if (best_u > tol)
    return std::nullopt;
  return best;
}

struct AdaptivePoint {
  double theta;  // unwrapped polar angle
  double rho;
};

struct DirectionRun {
  std::vector<AdaptivePoint> points;  // excludes the start point
  bool closed = false;
  bool hit_edge = false;
  double edge_theta_in = 0.0;   // last angle with |z| <= 1 - edge_margin
  double edge_rho_in = 0.0;
  double edge_theta_out = 0.0;  // first angle beyond it (point still on curve)
  double edge_rho_out = 0.0;
};

DirectionRun run_direction(const LevelProblem& p, Complex z0, double sign,
                           const TraceOptions& opts, bool edge_exit_enabled) {
  DirectionRun run;
  Complex z = z0;
  WirtingerData w = u_wirtinger(p, z);
  Complex t_walk = sign * tangent_from(w);
  const Complex t_start = t_walk;
  double theta = std::arg(z0);
  double theta0 = theta;
  double edge = 1.0 - opts.edge_margin;

  for (int step = 0; step < opts.max_steps; ++step) {
    CurvaturePair curv = curvature_from_wirtinger(z, w);
    double h = std::clamp(opts.angle_budget / std::max(std::abs(curv.ke), 1e-12),
                          opts.h_min, opts.h_max);

    Complex z_new;
    Complex t_new;
    WirtingerData w_new;
    bool accepted = false;
    while (!accepted) {
      // Second-order predictor along the walking tangent; the curvature
      // vector of the oriented curve is ke * (i t).
      Complex pred = z + h * t_walk +
                     0.5 * h * h * (sign * curv.ke) * (Complex(0.0, 1.0) * t_walk);
      std::optional<Complex> corrected =
          std::norm(pred) < 1.0 ? correct_to_curve(p, pred, opts.corrector_tol)
                                : std::nullopt;
      if (corrected) {
        z_new = *corrected;
        w_new = u_wirtinger(p, z_new);
        t_new = sign * tangent_from(w_new);
        bool sane = std::abs(z_new - z) <= 3.0 * h &&
                    (t_new * std::conj(t_walk)).real() > 0.5;
        if (sane) {
          accepted = true;
          break;
        }
      }
      h *= 0.5;
      if (h < opts.h_min)
        throw NoConvergence("trace: corrector failed above the minimum step");
    }

    theta += std::remainder(std::arg(z_new) - std::arg(z), kTwoPi);
    z = z_new;
    w = w_new;
    t_walk = t_new;

    if (step >= 8 && std::abs(theta - theta0) > kPi && std::abs(z - z0) < h &&
        (t_walk * std::conj(t_start)).real() > opts.closure_tangent_dot) {
      run.closed = true;
      return run;
    }

    if (edge_exit_enabled && std::abs(z) > edge) {
      double prev_theta = run.points.empty() ? theta0 : run.points.back().theta;
      double prev_rho = run.points.empty() ? std::abs(z0) : run.points.back().rho;
      run.hit_edge = true;
      run.edge_theta_in = prev_theta;
      run.edge_rho_in = prev_rho;
      run.edge_theta_out = theta;
      run.edge_rho_out = std::abs(z);
      return run;
    }

    run.points.push_back({theta, std::abs(z)});
  }
  throw MaxStepsError("trace: step limit reached before closure or edge exit");
}

// Nearest-angle radius hints from the discovery pass.
class RadialTable {
 public:
  RadialTable(std::vector<AdaptivePoint> pts, bool wrap) : pts_(std::move(pts)), wrap_(wrap) {
    if (wrap_)
      for (AdaptivePoint& q : pts_) q.theta = q.theta - kTwoPi * std::floor(q.theta / kTwoPi);
    std::sort(pts_.begin(), pts_.end(),
              [](const AdaptivePoint& a, const AdaptivePoint& b) { return a.theta < b.theta; });
  }

  double hint(double theta) const {
    if (pts_.empty())
      throw Error("radial table: empty discovery pass");
    if (wrap_)
      theta = theta - kTwoPi * std::floor(theta / kTwoPi);
    auto it = std::lower_bound(
        pts_.begin(), pts_.end(), theta,
        [](const AdaptivePoint& a, double th) { return a.theta < th; });
    double best = 1e30;
    double rho = pts_.front().rho;
    auto consider = [&](const AdaptivePoint& q) {
      double d = std::abs(q.theta - theta);
      if (wrap_)
        d = std::min(d, kTwoPi - d);
      if (d < best) {
        best = d;
        rho = q.rho;
      }
    };
    if (it != pts_.end()) consider(*it);
    if (it != pts_.begin()) consider(*(it - 1));
    consider(pts_.front());
    consider(pts_.back());
    return rho;
  }

 private:
  std::vector<AdaptivePoint> pts_;
  bool wrap_;
};

CurveSample make_sample(const LevelProblem& p, double theta, double rho) {
  Complex dir = std::polar(1.0, theta);
  Complex z = rho * dir;
  WirtingerData w = u_wirtinger(p, z);
  CurvaturePair curv = curvature_from_wirtinger(z, w);

  CurveSample s;
  s.theta = theta;
  s.z = z;
  double u_rho = 2.0 * (w.u_z * dir).real();
  double rho_prime = 2.0 * (w.u_z * z).imag() / u_rho;
  s.velocity = Complex(rho_prime, rho) * dir;
  s.unit_tangent = tangent_from(w);
  s.inward_normal = Complex(0.0, 1.0) * s.unit_tangent;
  s.ke = curv.ke;
  s.kh = curv.kh;
  s.arc_param = 0.0;
  s.u_residual = w.u;
  return s;
}

void fill_arc_params(std::vector<CurveSample>& samples, double dtheta) {
  KahanSum s;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (j > 0)
      s.add(0.5 * dtheta * (std::abs(samples[j - 1].velocity) + std::abs(samples[j].velocity)));
    samples[j].arc_param = s.value();
  }
}

bool grid_respects_steps(const std::vector<CurveSample>& samples, bool closed,
                         const TraceOptions& opts) {
  std::size_t n = samples.size();
  std::size_t pairs = closed ? n : n - 1;
  // An arc tip meets the unit circle with d rho / d theta unbounded, so no
  // uniform angular grid can hold the segment bound there; the outermost
  // span/128 taper at each end is exempt.
  std::size_t skip = closed ? 0 : std::max<std::size_t>(1, (n - 1) / 128);
  for (std::size_t j = skip; j < pairs - skip; ++j) {
    const CurveSample& a = samples[j];
    const CurveSample& b = samples[(j + 1) % n];
    double seg = std::abs(b.z - a.z);
    if (seg > opts.h_max)
      return false;
    double turn = std::abs(std::arg(b.unit_tangent / a.unit_tangent));
    if (turn > opts.angle_budget)
      return false;
  }
  return true;
}

int tangent_winding(const std::vector<CurveSample>& samples) {
  double total = 0.0;
  std::size_t n = samples.size();
  for (std::size_t j = 0; j < n; ++j)
    total += std::arg(samples[(j + 1) % n].unit_tangent / samples[j].unit_tangent);
  return static_cast<int>(std::lround(total / kTwoPi));
}

TracedCurve canonical_closed(const LevelProblem& p, const RadialTable& table,
                             std::size_t discovery_count, const TraceOptions& opts) {
  std::size_t n = next_pow2(std::max(opts.min_quadrature_points, 2 * discovery_count));
  for (;; n *= 2) {
    std::vector<CurveSample> samples;
    samples.reserve(n);
    double prev_rho = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double theta = kTwoPi * j / n;
      double hint = prev_rho > 0.0 ? prev_rho : table.hint(theta);
      double rho = boundary_radius(p, theta, hint);
      prev_rho = rho;
      samples.push_back(make_sample(p, theta, rho));
    }
    if (grid_respects_steps(samples, true, opts) || 2 * n > opts.max_quadrature_points) {
      fill_arc_params(samples, kTwoPi / n);
      TracedCurve curve;
      curve.problem = p;
      curve.samples = std::move(samples);
      curve.closed = true;
      curve.turning_number = tangent_winding(curve.samples);
      curve.adaptive_steps = static_cast<int>(discovery_count);
      curve.theta_lo = 0.0;
      curve.theta_hi = kTwoPi;
      return curve;
    }
  }
}

double refine_edge_theta(const LevelProblem& p, double th_in, double rho_in, double th_out,
                         double rho_out, double target) {
  // rho(theta) crosses `target` between th_in and th_out; bisect the angle.
  for (int it = 0; it < 60 && std::abs(th_out - th_in) > 1e-12; ++it) {
    double mid = 0.5 * (th_in + th_out);
    double rho = boundary_radius(p, mid, 0.5 * (rho_in + rho_out));
    if (rho > target) {
      th_out = mid;
      rho_out = rho;
    } else {
      th_in = mid;
      rho_in = rho;
    }
  }
  return 0.5 * (th_in + th_out);
}

TracedCurve canonical_arc(const LevelProblem& p, const RadialTable& table, double theta_lo,
                          double theta_hi, std::size_t discovery_count,
                          const TraceOptions& opts) {
  std::size_t n = std::max<std::size_t>(301, 2 * discovery_count + 1);
  if (n % 2 == 0) ++n;
  for (;; n = 2 * n - 1) {
    std::vector<CurveSample> samples;
    samples.reserve(n);
    double span = theta_hi - theta_lo;
    double prev_rho = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double theta = theta_lo + span * j / (n - 1);
      double hint = prev_rho > 0.0 ? prev_rho : table.hint(theta);
      double rho = boundary_radius(p, theta, hint);
      prev_rho = rho;
      samples.push_back(make_sample(p, theta, rho));
    }
    if (grid_respects_steps(samples, false, opts) || 2 * n > opts.max_quadrature_points) {
      fill_arc_params(samples, span / (n - 1));
      TracedCurve curve;
      curve.problem = p;
      curve.samples = std::move(samples);
      curve.closed = false;
      curve.turning_number = 0;
      curve.adaptive_steps = static_cast<int>(discovery_count);
      curve.theta_lo = theta_lo;
      curve.theta_hi = theta_hi;
      return curve;
    }
  }
}

}  // namespace

TracedCurve trace(const LevelProblem& p, Complex seed, const TraceOptions& opts) {
  if (!(std::norm(seed) < 1.0))
    throw DomainError("trace: seed outside the unit disc");
  if (std::abs(u_value(p, seed)) > opts.seed_tol)
    throw OffCurveError("trace: |u(seed)| above seed tolerance");
  std::optional<Complex> z0 = correct_to_curve(p, seed, std::min(opts.corrector_tol, 1e-13));
  if (!z0)
    throw NoConvergence("trace: could not settle the seed onto the curve");

  // Scaled problems live in the closed r-disc, so their boundary is a Jordan
  // curve; only the plain-lambda problems can run off to the unit circle.
  bool edge_exit = !p.scale_r().has_value();

  DirectionRun fwd = run_direction(p, *z0, +1.0, opts, edge_exit);

  double seed_theta = std::arg(*z0);
  double seed_rho = std::abs(*z0);
  std::vector<AdaptivePoint> merged;
  merged.push_back({seed_theta, seed_rho});
  for (const AdaptivePoint& q : fwd.points) merged.push_back(q);
  std::size_t discovery = merged.size();

  if (fwd.closed)
    return canonical_closed(p, RadialTable(std::move(merged), true), discovery, opts);

  if (!fwd.hit_edge)
    throw MaxStepsError("trace: forward direction ended without closure or edge exit");

  DirectionRun bwd = run_direction(p, *z0, -1.0, opts, edge_exit);
  if (bwd.closed || !bwd.hit_edge)
    throw NoConvergence("trace: inconsistent closure between the two directions");

  for (const AdaptivePoint& q : bwd.points) merged.push_back(q);
  discovery = merged.size();

  double target = 1.0 - opts.edge_margin;
  double theta_hi = refine_edge_theta(p, fwd.edge_theta_in, fwd.edge_rho_in, fwd.edge_theta_out,
                                      fwd.edge_rho_out, target);
  double theta_lo = refine_edge_theta(p, bwd.edge_theta_in, bwd.edge_rho_in, bwd.edge_theta_out,
                                      bwd.edge_rho_out, target);
  if (theta_lo > theta_hi)
    std::swap(theta_lo, theta_hi);
  return canonical_arc(p, RadialTable(std::move(merged), false), theta_lo, theta_hi, discovery,
                       opts);
}

TracedCurve trace(const LevelProblem& p, const TraceOptions& opts) {
  std::optional<Complex> seed = find_boundary_seed(p);
  if (!seed)
    throw RequirementMismatch("trace: the level region has no boundary inside the disc");
  return trace(p, *seed, opts);
}

double points_to_curve_gap(const TracedCurve& curve, const std::vector<Complex>& points) {
  if (!curve.problem)
    throw RequirementMismatch("points_to_curve_gap: curve carries no problem");
  const LevelProblem& p = *curve.problem;
  double worst = 0.0;
  for (Complex pt : points) {
    double phi = std::arg(pt);
    if (!curve.closed) {
      // shift into the arc's angular span; skip points outside it
      while (phi < curve.theta_lo - 1e-9) phi += kTwoPi;
      while (phi > curve.theta_hi + 1e-9) phi -= kTwoPi;
      if (phi < curve.theta_lo - 1e-9)
        continue;
    }
    double rho = boundary_radius(p, phi, std::abs(pt));
    worst = std::max(worst, std::abs(std::abs(pt) - rho));
  }
  return worst;
}

double curve_hausdorff(const TracedCurve& a, const TracedCurve& b) {
  std::vector<Complex> pa, pb;
  pa.reserve(a.samples.size());
  pb.reserve(b.samples.size());
  for (const CurveSample& s : a.samples) pa.push_back(s.z);
  for (const CurveSample& s : b.samples) pb.push_back(s.z);
  return std::max(points_to_curve_gap(b, pa), points_to_curve_gap(a, pb));
}

}  // namespace hyplevel
