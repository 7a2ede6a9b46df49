#include "hyplevel/curvature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "hyplevel/numeric.hpp"

using namespace hyplevel;

namespace {

// counterclockwise circle c + rho e^{it} with exact jets
ParametricPoint circle_point(Complex c, double rho, double t) {
  Complex e = std::polar(1.0, t);
  return {c + rho * e, Complex(0.0, 1.0) * rho * e, -rho * e};
}

HoloMap random_automorphism(std::mt19937& gen) {
  double rho = 0.8 * std::sqrt(uniform01(gen));
  Complex a = std::polar(rho, 2 * kPi * uniform01(gen));
  return HoloMap::compose(HoloMap::rotation(2 * kPi * uniform01(gen)), HoloMap::mobius(a));
}

}  // namespace

TEST_CASE("euclidean circles: kh = (1 - |c|^2 + rho^2)/rho") {
  Complex c(0.3, 0.1);
  double rho = 0.4;
  double expected = (1.0 - std::norm(c) + rho * rho) / rho;
  for (double t = 0.0; t < 2 * kPi; t += 0.37) {
    CurvaturePair k = kh_parametric(circle_point(c, rho, t));
    CHECK(k.ke == doctest::Approx(1.0 / rho).epsilon(1e-13));
    CHECK(k.kh == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("hyperbolic circles: kh = 2 coth(2 r_h)") {
  for (double rh : {0.25, 0.8, 1.5}) {
    double rho = std::tanh(rh);
    double expected = 2.0 / std::tanh(2.0 * rh);
    CurvaturePair k = kh_parametric(circle_point(0.0, rho, 1.1));
    CHECK(k.kh == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("geodesics have zero hyperbolic curvature") {
  // diameters
  for (double phi : {0.0, 0.9, 2.2}) {
    Complex e = std::polar(1.0, phi);
    for (double t : {-0.6, 0.1, 0.7}) {
      CurvaturePair k = kh_parametric({t * e, e, 0.0});
      CHECK(std::abs(k.kh) < 1e-14);
    }
  }
  // circular arc orthogonal to the unit circle: |z - c| = sqrt(|c|^2 - 1)
  Complex c(1.25, 0.0);
  double rho = 0.75;
  for (double t : {kPi - 0.4, kPi, kPi + 0.4}) {
    ParametricPoint pt = circle_point(c, rho, t);
    REQUIRE(std::abs(pt.value) < 1.0);
    CurvaturePair k = kh_parametric(pt);
    CHECK(std::abs(k.kh) < 1e-13);
  }
}

TEST_CASE("automorphism invariance of hyperbolic curvature") {
  std::mt19937 gen(301);
  Complex c(0.2, -0.15);
  double rho = 0.35;
  for (int i = 0; i < 20; ++i) {
    HoloMap phi = random_automorphism(gen);
    for (double t : {0.3, 1.7, 3.9, 5.6}) {
      ParametricPoint g = circle_point(c, rho, t);
      Jet j = phi.eval(g.value, 2);
      ParametricPoint image{j.f, j.d1 * g.d1, j.d2 * g.d1 * g.d1 + j.d1 * g.d2};
      double kh_before = kh_parametric(g).kh;
      double kh_after = kh_parametric(image).kh;
      CHECK(std::abs(kh_before - kh_after) < 1e-9);
    }
  }
}

TEST_CASE("implicit curvature matches the parametric formula on a level arc") {
  double lambda = 1.2;
  LevelProblem p = LevelProblem::with_lambda(HoloMap::mobius(Complex(0.5, 0.0)), lambda);
  Complex center(2.0, 0.0);
  double radius = std::sqrt(2.5);

  // clockwise around the center = increasing polar angle seen from the origin
  for (double t : {kPi - 0.5, kPi - 0.2, kPi, kPi + 0.2, kPi + 0.5}) {
    Complex e = std::polar(1.0, -t);
    Complex z = center + radius * e;
    REQUIRE(std::abs(z) < 1.0);
    CHECK(std::abs(u_value(p, z)) < 1e-12);

    ParametricPoint g{z, Complex(0.0, -1.0) * radius * e, -radius * e};
    CurvaturePair para = kh_parametric(g);
    CurvaturePair impl = kh_implicit(p, z);
    CHECK(std::abs(para.ke - impl.ke) < 1e-12);
    CHECK(std::abs(para.kh - impl.kh) < 1e-12);
    CHECK(std::abs(para.normal - impl.normal) < 1e-12);
  }

  // the closed forms at the real-axis point
  CurvaturePair k0 = kh_implicit(p, Complex(2.0 - radius, 0.0));
  CHECK(k0.ke == doctest::Approx(-1.0 / radius).epsilon(1e-12));
  CHECK(k0.kh == doctest::Approx(radius * (lambda - 1.0)).epsilon(1e-12));
  CHECK(std::abs(k0.normal - Complex(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("implicit curvature rejects off-curve and singular input") {
  LevelProblem p = LevelProblem::jordan(HoloMap::constant(1.0), 0.5);
  CHECK_THROWS_AS(kh_implicit(p, Complex(0.7, 0.0)), OffCurveError);
  CHECK_THROWS_AS(kh_implicit(p, Complex(1.1, 0.0)), DomainError);
  CHECK_THROWS_AS(kh_parametric({Complex(0.2, 0.1), Complex(0.0, 0.0), 1.0}),
                  SingularTangent);
  CHECK_THROWS_AS(kh_parametric({Complex(1.2, 0.0), 1.0, 1.0}), DomainError);

  // gradient vanishes where u == 0 identically
  LevelProblem degenerate = LevelProblem::unchecked(HoloMap::identity(), 1.0);
  CHECK_THROWS_AS(kh_implicit(degenerate, Complex(0.3, 0.0)), SingularGradient);
}

TEST_CASE("finite-difference cross-check of a traced circle") {
  LevelProblem p = LevelProblem::jordan(HoloMap::constant(1.0), 0.5);
  TracedCurve c = trace(p);
  CHECK(cross_validate(p, c) < 1e-7);
}

TEST_CASE("finite-difference cross-check of a traced arc") {
  // arcs carry steeper radial growth near their endpoints, so the stencil
  // truncation is coarser than on closed curves
  LevelProblem p = LevelProblem::with_lambda(HoloMap::mobius(Complex(0.5, 0.0)), 1.2);
  TracedCurve c = trace(p);
  REQUIRE(!c.closed);
  CHECK(cross_validate(p, c) < 1e-4);
}
