#include "hyplevel/fixedpoint.hpp"

#include <cmath>
#include <limits>

#include "hyplevel/curvature.hpp"
#include "hyplevel/errors.hpp"
#include "hyplevel/levelset.hpp"

namespace hyplevel {

namespace {

// Residual ceiling the fixed point must reach before psi returns it.
constexpr double kResidualTol = 1e-13;

}  // namespace

FixedPointMap::FixedPointMap(HoloMap f, int max_iter, double picard_tol)
    : f_(std::move(f)), max_iter_(max_iter), picard_tol_(picard_tol) {
  if (max_iter_ < 1)
    throw RequirementMismatch("FixedPointMap: max_iter must be positive");
  if (!(picard_tol_ > 0.0))
    throw RequirementMismatch("FixedPointMap: picard_tol must be positive");
  f0_ = f_(Complex{0.0, 0.0});
  if (std::abs(f0_) < 1e-12)
    throw RequirementMismatch("FixedPointMap: f(0) must be nonzero");
}

Complex FixedPointMap::psi(Complex w) const {
  if (!(std::norm(w) < 1.0))
    throw DomainError("psi: |w| >= 1");
  if (w == Complex{})
    return {};

  Complex z = w * f0_;
  for (int it = 0; it < max_iter_; ++it) {
    Complex zn = w * f_(z);
    double step = std::abs(zn - z);
    z = zn;
    if (step < picard_tol_)
      break;
  }

  // Newton polish on g(z) = w f(z) - z. Also the rescue path when Picard ran
  // out of iterations: the contraction factor approaches 1 as |w| -> 1, but
  // Newton still converges from the Picard iterate.
  Complex best = z;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    Jet j = f_.eval(z, 1);
    Complex g = w * j.f - z;
    double res = std::abs(g);
    if (res < best_res) {
      best_res = res;
      best = z;
    }
    if (res < 1e-15)
      break;
    Complex gp = w * j.d1 - 1.0;
    if (std::abs(gp) < 1e-14)
      break;
    Complex step = g / gp;
    z -= step;
    if (!(std::norm(z) < 1.0)) {
      z = best;
      break;
    }
    if (std::abs(step) < 1e-16)
      break;
  }

  if (!(best_res < kResidualTol))
    throw NoConvergence("psi: fixed-point residual stalled above 1e-13");
  return best;
}

Jet FixedPointMap::psi_jet(Complex w) const {
  Complex value = psi(w);
  Jet jf = f_.eval(value, 2);
  Complex denom = 1.0 - w * jf.d1;
  if (std::abs(denom) < 1e-10)
    throw NearSingular("psi_prime: |1 - w f'(psi)| < 1e-10");
  Complex d1 = jf.f / denom;
  Complex d2 = (2.0 * jf.d1 + w * jf.d2 * d1) * d1 / denom;
  return {value, d1, d2};
}

Complex FixedPointMap::psi_prime(Complex w) const { return psi_jet(w).d1; }

double c_quantity(const FixedPointMap& m, double r, Complex w) {
  if (!(r > 0.0 && r < 1.0))
    throw RequirementMismatch("c_quantity: r must lie in (0,1)");
  if (std::abs(std::abs(w) - r) > 1e-12)
    throw RequirementMismatch("c_quantity: |w| must equal r");

  Jet pj = m.psi_jet(w);
  double via_psi = (1.0 - std::norm(pj.f)) / (r * std::abs(pj.d1));

  // Boundary-data definition at zeta = psi(w), with the effective map r f.
  Complex zeta = pj.f;
  Jet jf = m.map().eval(zeta, 1);
  Complex g = r * jf.f;
  Complex g1 = r * jf.d1;
  double via_boundary =
      std::abs(std::conj(g1) * g - zeta) * (1.0 - std::norm(zeta)) / std::norm(zeta);

  if (std::abs(via_psi - via_boundary) > 1e-9)
    throw InternalCheckError("c_quantity: psi route and boundary route disagree");
  return via_psi;
}

Complex p_of_w(const FixedPointMap& m, Complex w) {
  if (!(std::norm(w) < 1.0))
    throw DomainError("p_of_w: |w| >= 1");
  if (w == Complex{})
    return {1.0, 0.0};

  Jet pj = m.psi_jet(w);
  Complex p = 1.0 + w * pj.d2 / pj.d1 +
              2.0 * w * pj.d1 * std::conj(pj.f) / (1.0 - std::norm(pj.f));

  // Re p(w) must reproduce kh/C at zeta = psi(w); the fixed-point identity
  // places zeta exactly on the |r f(z)| = |z| level curve.
  double r = std::abs(w);
  double c = c_quantity(m, r, w);
  double kh = kh_implicit(LevelProblem::jordan(m.map(), r), pj.f).kh;
  if (std::abs(p.real() - kh / c) > 1e-8)
    throw InternalCheckError("p_of_w: Re p disagrees with the curvature route");
  return p;
}

}  // namespace hyplevel
