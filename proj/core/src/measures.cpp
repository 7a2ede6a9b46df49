#include "hyplevel/measures.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyplevel/errors.hpp"
#include "hyplevel/types.hpp"

namespace hyplevel {
namespace {

// Fixed-order compensated accumulation; callers must not reorder terms, so
// results are independent of any parallel partitioning.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_closed(const TracedCurve& curve, const char* op) {
  if (!curve.closed)
    throw OpenCurveError(std::string(op) +
                         ": boundary arc reaches the unit circle, its "
                         "hyperbolic perimeter is infinite");
  if (curve.samples.size() < 8)
    throw Error(std::string(op) + ": curve has too few samples");
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by Newton
// iteration on the Legendre recurrence. Self-contained so the oracle shares
// no machinery with the boundary-integral path.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
      double step = p0 / dp;
      xi -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    x[static_cast<std::size_t>(i)] = -xi;
    x[static_cast<std::size_t>(n - 1 - i)] = xi;
    double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

}  // namespace

MeasureSet measures(const TracedCurve& curve) {
  require_closed(curve, "measures");
  const auto& s = curve.samples;
  std::size_t n = s.size();
  double dtheta = 2.0 * kPi / static_cast<double>(n);
  KahanSum len;
  KahanSum area;
  KahanSum curv;
  for (std::size_t j = 0; j < n; ++j) {
    double lam = hyperbolic_density(s[j].z);
    double speed = std::abs(s[j].velocity);
    len.add(lam * speed);
    // x dy - y dx = Im(conj(z) dz); the 1-form Im(conj(z) dz)/(2 (1-|z|^2))
    // has exterior derivative lambda^2 dA, so this sums the enclosed area.
    area.add(0.5 * lam * std::imag(std::conj(s[j].z) * s[j].velocity));
    curv.add(s[j].kh * lam * speed);
  }
  MeasureSet ms;
  ms.perimeter_h = len.sum * dtheta;
  ms.area_h = area.sum * dtheta;
  ms.total_kh = curv.sum * dtheta;
  ms.method_flags = kMethodBoundaryTrapezoid;
  return ms;
}

double perimeter_h(const TracedCurve& curve) {
  require_closed(curve, "perimeter_h");
  return measures(curve).perimeter_h;
}

double area_h(const TracedCurve& curve) {
  require_closed(curve, "area_h");
  return measures(curve).area_h;
}

double total_kh(const TracedCurve& curve) {
  require_closed(curve, "total_kh");
  return measures(curve).total_kh;
}

double gauss_bonnet_residual(const MeasureSet& ms) {
  return ms.total_kh - 4.0 * ms.area_h - 2.0 * kPi;
}

double isoperimetric_residual(const MeasureSet& ms) {
  return ms.perimeter_h * ms.perimeter_h - 4.0 * kPi * ms.area_h -
         4.0 * ms.area_h * ms.area_h;
}

namespace {

// One Gauss-Legendre panel of the density r / (1 - r^2)^2.
double radial_panel(double a, double b, const std::vector<double>& gx,
                    const std::vector<double>& gw) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    double r = mid + half * gx[i];
    double d = 1.0 - r * r;
    s += gw[i] * r / (d * d);
  }
  return s * half;
}

// Integral of r / (1 - r^2)^2 over [0, rho] by composite Gauss-Legendre with
// panels halving toward the outer endpoint: the density's pole at r = 1 sits
// a distance 1 - rho away, so each panel stays shorter than its distance to
// the pole and the rule converges at machine precision even for rho -> 1.
double radial_density_integral(double rho, const std::vector<double>& gx,
                               const std::vector<double>& gw) {
  double total = 0.0;
  double lo = 0.0;
  while (rho - lo > 0.5 * (1.0 - rho) && rho - lo > 1e-14) {
    double hi = lo + 0.5 * (rho - lo);
    total += radial_panel(lo, hi, gx, gw);
    lo = hi;
  }
  total += radial_panel(lo, rho, gx, gw);
  return total;
}

struct PolarAreaIntegrand {
  const LevelProblem& p;
  const TracedCurve& curve;
  const std::vector<double>& gx;
  const std::vector<double>& gw;

  double operator()(double theta) const {
    const auto& s = curve.samples;
    std::size_t n = s.size();
    double dtheta = 2.0 * kPi / static_cast<double>(n);
    std::size_t j = static_cast<std::size_t>(std::llround(theta / dtheta)) % n;
    double rho = boundary_radius(p, theta, std::abs(s[j].z));
    return radial_density_integral(rho, gx, gw);
  }

  double panel(double a, double b) const {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i)
      s += gw[i] * (*this)(mid + half * gx[i]);
    return s * half;
  }

  // Accept a panel when one refinement no longer moves it; the boundary
  // radius can swing quickly where the region pinches, so the split depth is
  // driven by the data.
  double adaptive(double a, double b, double tol, int depth) const {
    double whole = panel(a, b);
    double mid = 0.5 * (a + b);
    double halves = panel(a, mid) + panel(mid, b);
    if (std::abs(whole - halves) <= tol || depth >= 20)
      return halves;
    return adaptive(a, mid, 0.5 * tol, depth + 1) +
           adaptive(mid, b, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double area_oracle_polar(const LevelProblem& p, const TracedCurve& curve,
                         int theta_panels, int radial_nodes) {
  require_closed(curve, "area_oracle_polar");
  if (theta_panels < 1 || radial_nodes < 2)
    throw Error("area_oracle_polar: bad quadrature resolution");
  std::vector<double> gx;
  std::vector<double> gw;
  gauss_legendre(radial_nodes, gx, gw);
  PolarAreaIntegrand f{p, curve, gx, gw};

  double panel = 2.0 * kPi / theta_panels;
  double coarse = 0.0;
  for (int i = 0; i < theta_panels; ++i)
    coarse += f.panel(i * panel, (i + 1) * panel);

  double tol = std::max(std::abs(coarse), 1e-3) * 1e-11 / theta_panels;
  KahanSum total;
  for (int i = 0; i < theta_panels; ++i)
    total.add(f.adaptive(i * panel, (i + 1) * panel, tol, 0));
  return total.sum;
}

std::vector<MeasureCheck> verify_section7(const LevelProblem& p, const MeasureSet& ms) {
  if (!std::isfinite(ms.area_h) || !std::isfinite(ms.perimeter_h) ||
      !std::isfinite(ms.total_kh) || ms.area_h <= 0.0 || ms.perimeter_h <= 0.0)
    throw RequirementMismatch(
        "verify_section7: measures are not those of a closed boundary in the "
        "disc");

  std::vector<MeasureCheck> out;
  auto push = [&out](const char* id, double lhs, double rhs, bool lower) {
    MeasureCheck c;
    c.id = id;
    c.applicable = true;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lower ? lhs - rhs : rhs - lhs;
    c.equality = std::abs(c.margin) < 1e-8;
    c.satisfied = c.margin >= -1e-8;
    out.push_back(std::move(c));
  };
  auto skip = [&out](const char* id, const std::string& why) {
    MeasureCheck c;
    c.id = id;
    c.applicable = false;
    c.skip_reason = why;
    out.push_back(std::move(c));
  };

  double lambda = p.lambda();
  double cap_f0 = std::abs(p.map()(Complex(0.0, 0.0)));
  double s0 = std::sqrt(1.0 - cap_f0 * cap_f0);
  push("P71_area", ms.area_h,
       std::max(kPi * (lambda - 1.0), 0.5 * kPi * (1.0 / s0 - 1.0)), true);
  push("P71_perimeter", ms.perimeter_h,
       std::max(2.0 * kPi * std::sqrt(lambda * (lambda - 1.0)), kPi * cap_f0 / s0),
       true);

  static const char* kScaledIds[] = {"C72_total", "P73_perimeter", "T75_area",
                                     "T75_perimeter", "T75_isop", "C76_area",
                                     "C77_lower", "C77_upper", "C78_isop"};
  if (!p.scale_r()) {
    for (const char* id : kScaledIds)
      skip(id, "problem is not a scaled-disc region");
    return out;
  }
  double r = *p.scale_r();
  double f0 = std::abs(p.base_map()(Complex(0.0, 0.0)));
  if (f0 < 1e-12) {
    for (const char* id : kScaledIds)
      skip(id, "f(0) = 0");
    return out;
  }

  double rr = 1.0 - r * r;
  double plus = 1.0 + r;
  double disc = plus * plus - 4.0 * r * f0 * f0;  // >= (1-r)^2 > 0
  double area_hi = kPi * r * r * f0 * f0 / rr;
  double area_lo = kPi * (1.0 - r) * r * r * f0 * f0 / (plus * disc);
  double l2 = ms.perimeter_h * ms.perimeter_h;

  push("C72_total", ms.total_kh,
       2.0 * kPi / std::sqrt(1.0 - r * r * f0 * f0), true);
  push("P73_perimeter", ms.perimeter_h,
       2.0 * kPi * r * f0 / (plus * std::sqrt(disc)), true);
  push("T75_area", ms.area_h, area_hi, false);
  push("T75_perimeter", ms.perimeter_h, 2.0 * kPi * r * f0 / rr, false);
  push("T75_isop", l2, 4.0 * kPi / rr * ms.area_h, false);
  push("C76_area", ms.area_h, area_lo, true);
  push("C77_lower", ms.total_kh, 2.0 * kPi + 4.0 * area_lo, true);
  push("C77_upper", ms.total_kh, 2.0 * kPi + 4.0 * area_hi, false);
  push("C78_isop", l2, 4.0 * kPi * r / rr * (ms.area_h + kPi * r / plus), false);
  return out;
}

}  // namespace hyplevel
