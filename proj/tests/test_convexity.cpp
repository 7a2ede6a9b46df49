#include "hyplevel/convexity.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hyplevel/corpus.hpp"
#include "hyplevel/curvature.hpp"
#include "hyplevel/errors.hpp"
#include "hyplevel/holomap.hpp"
#include "hyplevel/levelset.hpp"

using hyplevel::BlaschkeZero;
using hyplevel::certify;
using hyplevel::Complex;
using hyplevel::ConvexityCertificate;
using hyplevel::ConvexityVerdict;
using hyplevel::HoloMap;
using hyplevel::ke_at_pi_closed_form;
using hyplevel::LevelProblem;
using hyplevel::radius_of_convexity;
using hyplevel::radius_of_convexity_report;
using hyplevel::RadiusReport;

namespace {

constexpr double kPi = 3.14159265358979323846;

// cos(pi/8): the member of the f_alpha family whose convexity radius attains
// the family-wide infimum 1/sqrt(2).
constexpr double kAlphaStar = 0.9238795325112867;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double leftmost_point(double alpha, double r) {
  return HoloMap::k_alpha(alpha).eval(Complex(-r, 0.0), 0).f.real();
}

// Small fixed-seed family of Blaschke products with zeros bounded away from
// the origin, so f(0) != 0 holds by construction whatever the stdlib's
// distributions sample.
std::vector<HoloMap> random_blaschke_family() {
  std::mt19937 rng(20260816u);
  std::uniform_real_distribution<double> rad(0.15, 0.6);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> deg(1, 3);
  std::vector<HoloMap> family;
  for (int k = 0; k < 6; ++k) {
    std::vector<BlaschkeZero> zeros;
    int d = deg(rng);
    for (int j = 0; j < d; ++j)
      zeros.push_back({std::polar(rad(rng), ang(rng)), 1});
    HoloMap f = HoloMap::blaschke(std::move(zeros), std::polar(1.0, ang(rng)));
    if (k >= 4)
      f = HoloMap::scalar_mul(Complex(0.9, 0.0), f);
    family.push_back(std::move(f));
  }
  return family;
}

}  // namespace

TEST_CASE("certificates on circles report the circle curvatures") {
  for (double r : {0.3, 0.7}) {
    ConvexityCertificate c = certify(LevelProblem::jordan(HoloMap::constant({0.6, 0.8}), r));
    CHECK(c.verdict == ConvexityVerdict::convex);
    CHECK(c.r == r);
    CHECK(std::abs(c.min_ke * r - 1.0) < 1e-12);
    CHECK(std::abs(c.min_kh - (r + 1.0 / r)) < 1e-12);
    CHECK(std::abs(std::abs(c.argmin_ke) - r) < 1e-9);
  }
}

TEST_CASE("certificate survives a boundary hugging the unit circle") {
  double r = 1.0 - 1e-6;
  ConvexityCertificate c = certify(LevelProblem::jordan(HoloMap::constant({0.6, 0.8}), r));
  CHECK(c.verdict == ConvexityVerdict::convex);
  CHECK(std::abs(c.min_ke * r - 1.0) < 1e-9);
}

TEST_CASE("extremal family member flips verdict at the threshold radius") {
  HoloMap f = HoloMap::f_alpha(kAlphaStar);

  ConvexityCertificate below = certify(LevelProblem::jordan(f, 0.5));
  CHECK(below.verdict == ConvexityVerdict::convex);
  CHECK(std::abs(below.min_ke - ke_at_pi_closed_form(kAlphaStar, 0.5)) < 1e-9);
  CHECK(std::abs(below.argmin_ke - Complex(leftmost_point(kAlphaStar, 0.5), 0.0)) < 1e-7);

  ConvexityCertificate above = certify(LevelProblem::jordan(f, 0.8));
  CHECK(above.verdict == ConvexityVerdict::nonconvex);
  CHECK(above.min_ke < -0.7);
  CHECK(std::abs(above.argmin_ke - Complex(leftmost_point(kAlphaStar, 0.8), 0.0)) < 1e-7);

  // exactly at the threshold the minimum vanishes and the dead band catches it
  ConvexityCertificate at = certify(LevelProblem::jordan(f, kInvSqrt2));
  CHECK(at.verdict == ConvexityVerdict::inconclusive);
  CHECK(std::abs(at.min_ke) < 1e-10);

  ConvexityCertificate just_below = certify(LevelProblem::jordan(f, kInvSqrt2 - 1e-4));
  ConvexityCertificate just_above = certify(LevelProblem::jordan(f, kInvSqrt2 + 1e-4));
  CHECK(just_below.verdict == ConvexityVerdict::convex);
  CHECK(just_below.min_ke > 1e-4);
  CHECK(just_above.verdict == ConvexityVerdict::nonconvex);
  CHECK(just_above.min_ke < -1e-4);
}

TEST_CASE("closed-form leftmost curvature changes sign at the threshold") {
  CHECK(ke_at_pi_closed_form(kAlphaStar, 0.5) > 0.0);
  CHECK(std::abs(ke_at_pi_closed_form(kAlphaStar, kInvSqrt2)) < 1e-9);
  CHECK(ke_at_pi_closed_form(kAlphaStar, 0.9) < 0.0);

  double lo = 0.6;
  double hi = 0.8;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (ke_at_pi_closed_form(kAlphaStar, mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - kInvSqrt2) < 1e-9);
}

TEST_CASE("closed form agrees with the implicit curvature at the leftmost point") {
  for (double alpha : {0.25, 0.5, 0.75, kAlphaStar, 1.0}) {
    for (double r : {0.2, 0.5, 0.8}) {
      LevelProblem p = LevelProblem::jordan(HoloMap::f_alpha(alpha), r);
      double rho = hyplevel::boundary_radius(p, kPi, 0.5 * r);
      CHECK(std::abs(rho + leftmost_point(alpha, r)) < 1e-10);
      double ke = hyplevel::kh_implicit(p, Complex(-rho, 0.0)).ke;
      CHECK(std::abs(ke - ke_at_pi_closed_form(alpha, r)) < 1e-7);
    }
  }
}

TEST_CASE("radius search caps on discs and pins the extremal threshold") {
  RadiusReport disc = radius_of_convexity_report(HoloMap::constant({0.6, 0.8}));
  CHECK(disc.capped);
  CHECK(disc.value >= 1.0 - 1e-6);
  CHECK(disc.upper == 1.0);
  CHECK(disc.witness_r == 0.0);

  RadiusReport star = radius_of_convexity_report(HoloMap::f_alpha(kAlphaStar));
  CHECK(!star.capped);
  CHECK(std::abs(star.value - kInvSqrt2) < 1e-5);
  CHECK(star.upper - star.lower <= 1e-6 * (1.0 + 1e-9));
  CHECK(star.lower <= star.value);
  CHECK(star.value <= star.upper);
  CHECK(star.certificates <= 60);
  // first nonconvex radius seen is the top-of-bracket probe
  CHECK(star.witness_r > 0.9);
  CHECK(star.witness_ke < -2.0);
  CHECK(std::abs(star.witness_z) < 1.0);

  CHECK(radius_of_convexity(HoloMap::f_alpha(kAlphaStar)) == star.value);
}

TEST_CASE("radius decreases along the mobius family") {
  std::vector<double> omegas;
  for (double a : {0.1, 0.35, 0.6, 0.85}) {
    RadiusReport rep = radius_of_convexity_report(HoloMap::mobius(Complex(a, 0.0)));
    CHECK(!rep.capped);
    omegas.push_back(rep.value);
  }
  CHECK(omegas[0] > 0.99);
  for (std::size_t i = 1; i < omegas.size(); ++i)
    CHECK(omegas[i] < omegas[i - 1] - 1e-3);
  CHECK(omegas.back() > kInvSqrt2 - 1e-4);
  CHECK(omegas.back() < 0.73);
}

TEST_CASE("family infimum of the radius is attained at the extremal member") {
  double omega_star = radius_of_convexity(HoloMap::f_alpha(kAlphaStar));
  CHECK(std::abs(omega_star - kInvSqrt2) < 1e-5);

  double family_min = omega_star;
  for (int i = 0; i < 19; ++i) {
    double alpha = 0.1 + 0.9 * i / 18.0;
    double w = radius_of_convexity(HoloMap::f_alpha(alpha));
    CHECK(w >= kInvSqrt2 - 1e-4);
    family_min = std::min(family_min, w);
  }
  for (const HoloMap& f : random_blaschke_family()) {
    double w = radius_of_convexity(f);
    CHECK(w >= kInvSqrt2 - 1e-4);
    family_min = std::min(family_min, w);
  }
  CHECK(family_min >= omega_star - 1e-4);
}

TEST_CASE("verdicts are monotone in the scale across the corpus") {
  int maps_used = 0;
  for (const hyplevel::CorpusEntry& entry : hyplevel::default_corpus()) {
    HoloMap f = entry.problem().base_map();
    if (std::abs(f(Complex(0.0, 0.0))) < 1e-9)
      continue;
    ++maps_used;
    bool seen_nonconvex = false;
    for (int k = 0; k < 20; ++k) {
      double r = 0.05 + 0.9 * k / 19.0;
      ConvexityCertificate c = certify(LevelProblem::jordan(f, r));
      if (c.verdict == ConvexityVerdict::nonconvex)
        seen_nonconvex = true;
      if (seen_nonconvex)
        CHECK(c.verdict != ConvexityVerdict::convex);
      // Euclidean convexity is the stronger property
      if (c.verdict == ConvexityVerdict::convex)
        CHECK(c.min_kh >= -1e-9);
    }
  }
  CHECK(maps_used >= 40);
}

TEST_CASE("scaled corpus entries that certify convex are hyperbolically convex") {
  for (const hyplevel::CorpusEntry& entry : hyplevel::default_corpus()) {
    LevelProblem p = entry.problem();
    if (!p.scale_r())
      continue;
    ConvexityCertificate c = certify(p);
    if (c.verdict == ConvexityVerdict::convex)
      CHECK(c.min_kh >= -1e-9);
  }
}

TEST_CASE("sample curvatures respect the conformal comparison inequality") {
  int curves = 0;
  for (const hyplevel::CorpusEntry& entry : hyplevel::default_corpus()) {
    LevelProblem p = entry.problem();
    if (!p.scale_r())
      continue;
    hyplevel::TracedCurve curve = hyplevel::trace(p);
    for (const hyplevel::CurveSample& s : curve.samples) {
      double rhs = (s.kh - 2.0 * std::abs(s.z)) / (1.0 - std::norm(s.z));
      CHECK(s.ke >= rhs - 1e-9);
    }
    if (++curves == 5)
      break;
  }
  CHECK(curves == 5);
}

TEST_CASE("convexity requires a scaled problem and a nonvanishing center value") {
  LevelProblem lam = LevelProblem::with_lambda(HoloMap::mobius(Complex(0.5, 0.0)), 1.2);
  CHECK_THROWS_AS(certify(lam), hyplevel::RequirementMismatch);
  CHECK_THROWS_AS(radius_of_convexity(HoloMap::identity()), hyplevel::RequirementMismatch);
  CHECK_THROWS_AS(radius_of_convexity(HoloMap::mobius(Complex(0.0, 0.0))),
                  hyplevel::RequirementMismatch);
}
