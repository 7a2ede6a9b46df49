#include "hyplevel/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hyplevel/curvature.hpp"
#include "hyplevel/errors.hpp"

namespace hyplevel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Curvature of the boundary point on the ray at `theta`, re-solved radially
// from the previous solution so golden-section probes stay warm-started.
class RayCurvature {
 public:
  RayCurvature(const LevelProblem& p, double hint, bool use_kh)
      : p_(&p), hint_(hint), use_kh_(use_kh) {}

  double operator()(double theta) {
    hint_ = boundary_radius(*p_, theta, hint_);
    last_z_ = std::polar(hint_, theta);
    CurvaturePair c = kh_implicit(*p_, last_z_);
    return use_kh_ ? c.kh : c.ke;
  }

  Complex last_point() const { return last_z_; }

 private:
  const LevelProblem* p_;
  double hint_;
  bool use_kh_;
  Complex last_z_{};
};

struct RefinedMin {
  double value;
  Complex at;
};

// Golden-section descent of the best sampled basin: [a, b] spans the two grid
// neighbours of the minimum sample, narrowed to 1e-10 in theta.
RefinedMin refine_minimum(RayCurvature g, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kThetaTol = 1e-10;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = g(x1);
  Complex z1 = g.last_point();
  double f2 = g(x2);
  Complex z2 = g.last_point();
  while (b - a > kThetaTol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      z2 = z1;
      x1 = b - kInvPhi * (b - a);
      f1 = g(x1);
      z1 = g.last_point();
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      z1 = z2;
      x2 = a + kInvPhi * (b - a);
      f2 = g(x2);
      z2 = g.last_point();
    }
  }
  return f1 <= f2 ? RefinedMin{f1, z1} : RefinedMin{f2, z2};
}

ConvexityVerdict verdict_from(double min_ke) {
  if (min_ke > kConvexityTol)
    return ConvexityVerdict::convex;
  if (min_ke < -10.0 * kConvexityTol)
    return ConvexityVerdict::nonconvex;
  return ConvexityVerdict::inconclusive;
}

}  // namespace

ConvexityCertificate certify(const LevelProblem& p, const TraceOptions& opts) {
  if (!p.scale_r())
    throw RequirementMismatch("certify: needs a problem with the scale r set");

  // Scaled boundaries stay inside the r-disc, so a single radial solve on the
  // positive real axis seeds the tracer without a ray scan and anchors the
  // canonical grid at theta = 0.
  double f0 = std::abs(p.map()(Complex(0.0, 0.0)));
  double rho0 = boundary_radius(p, 0.0, std::max(f0, 1e-4));
  TracedCurve curve = trace(p, Complex(rho0, 0.0), opts);
  if (!curve.closed || curve.samples.size() < 4)
    throw InternalCheckError("certify: scaled boundary did not close");

  std::size_t jke = 0;
  std::size_t jkh = 0;
  const auto& s = curve.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].ke < s[jke].ke)
      jke = i;
    if (s[i].kh < s[jkh].kh)
      jkh = i;
  }

  std::size_t n = s.size();
  double dtheta = kTwoPi / static_cast<double>(n);
  auto refined = [&](std::size_t j, bool use_kh) {
    double theta = s[j].theta;
    RayCurvature g(p, std::abs(s[j].z), use_kh);
    RefinedMin m = refine_minimum(g, theta - dtheta, theta + dtheta);
    double sampled = use_kh ? s[j].kh : s[j].ke;
    if (sampled < m.value)
      return RefinedMin{sampled, s[j].z};
    return m;
  };
  RefinedMin mke = refined(jke, false);
  RefinedMin mkh = refined(jkh, true);

  ConvexityCertificate cert;
  cert.r = *p.scale_r();
  cert.min_ke = mke.value;
  cert.min_kh = mkh.value;
  cert.argmin_ke = mke.at;
  cert.argmin_kh = mkh.at;
  cert.verdict = verdict_from(mke.value);
  return cert;
}

RadiusReport radius_of_convexity_report(const HoloMap& f) {
  if (std::abs(f(Complex(0.0, 0.0))) < 1e-12)
    throw RequirementMismatch("radius_of_convexity: f(0) = 0 has no scaled region");

  constexpr int kBudget = 60;
  constexpr double kCap = 1.0 - 1e-6;
  constexpr double kBracketWidth = 1e-6;

  RadiusReport report;
  auto classify = [&](double r) {
    if (report.certificates >= kBudget)
      throw NoConvergence("radius_of_convexity: certificate budget exhausted");
    ++report.certificates;
    ConvexityCertificate c = certify(LevelProblem::jordan(f, r));
    if (c.verdict == ConvexityVerdict::nonconvex && report.witness_r == 0.0) {
      report.witness_r = r;
      report.witness_z = c.argmin_ke;
      report.witness_ke = c.min_ke;
    }
    return c.verdict;
  };

  // Inconclusive probes sit within the dead band of the transition radius;
  // nudge by shrinking steps, alternating sides, until a side classifies.
  auto conclusive = [&](double r, double step) {
    double at = r;
    for (int depth = 0; depth < kBudget; ++depth) {
      ConvexityVerdict v = classify(at);
      if (v != ConvexityVerdict::inconclusive)
        return std::pair<double, ConvexityVerdict>{at, v};
      step *= 0.5;
      at = (depth % 2 == 0) ? r - step : r + step;
    }
    throw NoConvergence("radius_of_convexity: stuck on inconclusive certificates");
  };

  double lo = 0.05;
  while (classify(lo) != ConvexityVerdict::convex) {
    lo *= 0.5;
    if (lo < 1e-3)
      throw NoConvergence("radius_of_convexity: no convex radius above 1e-3");
  }

  if (classify(kCap) != ConvexityVerdict::nonconvex) {
    report.value = kCap;
    report.lower = kCap;
    report.upper = 1.0;
    report.capped = true;
    return report;
  }

  double hi = kCap;
  while (hi - lo > kBracketWidth) {
    auto [rm, v] = conclusive(0.5 * (lo + hi), 0.25 * (hi - lo));
    (v == ConvexityVerdict::convex ? lo : hi) = rm;
  }

  report.value = 0.5 * (lo + hi);
  report.lower = lo;
  report.upper = hi;
  return report;
}

double radius_of_convexity(const HoloMap& f) {
  return radius_of_convexity_report(f).value;
}

double ke_at_pi_closed_form(double alpha, double r) {
  Jet j = HoloMap::k_alpha(alpha).eval(Complex(-r, 0.0), 2);
  double k1 = j.d1.real();
  double k2 = j.d2.real();
  return (k1 - r * k2) / (r * k1 * k1);
}

}  // namespace hyplevel
