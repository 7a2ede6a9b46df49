#include "hyplevel/curvature.hpp"

#include <cmath>

namespace hyplevel {

CurvaturePair kh_parametric(const ParametricPoint& g) {
  if (!(std::norm(g.value) < 1.0))
    throw DomainError("kh_parametric: point outside the unit disc");
  double speed = std::abs(g.d1);
  if (speed < 1e-12)
    throw SingularTangent("kh_parametric: |g'| below 1e-12");
  double ke = (g.d2 * std::conj(g.d1)).imag() / (speed * speed * speed);
  Complex n = Complex(0.0, 1.0) * g.d1 / speed;
  double kh = (1.0 - std::norm(g.value)) * ke - 2.0 * (n * std::conj(g.value)).real();
  return {ke, kh, n};
}

CurvaturePair curvature_from_wirtinger(Complex z, const WirtingerData& w) {
  double g = std::abs(w.u_zbar);
  if (g < 1e-10)
    throw SingularGradient("implicit curvature: |grad u| below 1e-10");
  Complex t = Complex(0.0, -1.0) * w.u_zbar / g;
  double ke = -((w.u_zz * t * t).real() + w.u_zzbar) / g;
  Complex n = Complex(0.0, 1.0) * t;
  double kh = (1.0 - std::norm(z)) * ke - 2.0 * (n * std::conj(z)).real();
  return {ke, kh, n};
}

CurvaturePair kh_implicit(const LevelProblem& p, Complex z) {
  if (!(std::norm(z) < 1.0))
    throw DomainError("kh_implicit: point outside the unit disc");
  WirtingerData w = u_wirtinger(p, z);
  if (std::abs(w.u) > 1e-10)
    throw OffCurveError("kh_implicit: |u(z)| above 1e-10");
  return curvature_from_wirtinger(z, w);
}

double cross_validate(const LevelProblem& p, const TracedCurve& curve) {
  std::size_t n = curve.samples.size();
  if (n < 5)
    throw RequirementMismatch("cross_validate: needs at least 5 samples");
  double h = curve.samples[1].theta - curve.samples[0].theta;

  auto at = [&](std::ptrdiff_t j) -> Complex {
    if (curve.closed) {
      std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n);
      return curve.samples[static_cast<std::size_t>(((j % m) + m) % m)].z;
    }
    return curve.samples[static_cast<std::size_t>(j)].z;
  };

  std::size_t lo = curve.closed ? 0 : 2;
  std::size_t hi = curve.closed ? n : n - 2;
  double worst = 0.0;
  for (std::size_t j = lo; j < hi; ++j) {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j);
    Complex f2 = at(i + 2), f1 = at(i + 1), f0 = at(i), fm1 = at(i - 1), fm2 = at(i - 2);
    Complex d1 = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);
    Complex d2 = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    CurvaturePair fd = kh_parametric({f0, d1, d2});
    worst = std::max(worst, std::abs(fd.kh - kh_implicit(p, curve.samples[j].z).kh));
  }
  return worst;
}

}  // namespace hyplevel
