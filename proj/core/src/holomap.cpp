#include "hyplevel/holomap.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace hyplevel {

namespace {

enum class Kind {
  kConstant,
  kIdentity,
  kRotation,
  kScale,
  kMobius,
  kFAlpha,
  kKAlpha,
  kGAlpha,
  kBlaschke,
  kCompose,
  kProduct,
  kScalarMul,
};

constexpr double kPoleGuard = 1e-12;

}  // namespace

struct HoloMap::Node {
  Kind kind = Kind::kConstant;
  Complex c{};                       // constant value / rotation factor / scalar
  double x = 0.0;                    // real parameter (scale r, alpha)
  std::vector<BlaschkeZero> zeros;   // blaschke only
  std::shared_ptr<const Node> lhs;   // compose outer / product lhs / smul child
  std::shared_ptr<const Node> rhs;   // compose inner / product rhs
};

namespace {

using Node = HoloMap::Node;

Jet jet_mul(const Jet& a, const Jet& b) {
  return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
}

// Blaschke factor (a - z)/(1 - conj(a) z) with its two derivatives.
Jet mobius_jet(Complex a, Complex z) {
  Complex ac = std::conj(a);
  Complex den = 1.0 - ac * z;
  Complex den2 = den * den;
  double am1 = std::norm(a) - 1.0;
  return {(a - z) / den, am1 / den2, 2.0 * ac * am1 / (den2 * den)};
}

Jet eval_node(const Node& n, Complex z) {
  switch (n.kind) {
    case Kind::kConstant:
      return {n.c, 0.0, 0.0};
    case Kind::kIdentity:
      return {z, 1.0, 0.0};
    case Kind::kRotation:
      return {n.c * z, n.c, 0.0};
    case Kind::kScale:
      return {n.x * z, n.x, 0.0};
    case Kind::kMobius:
      return mobius_jet(n.c, z);
    case Kind::kFAlpha: {
      // (alpha + z)/(1 + alpha z) = -phi_{-alpha}(z), alpha real in (0,1].
      double al = n.x;
      Complex den = 1.0 + al * z;
      Complex den2 = den * den;
      double w = 1.0 - al * al;
      return {(al + z) / den, w / den2, -2.0 * al * w / (den2 * den)};
    }
    case Kind::kKAlpha: {
      // 2 alpha z / D, D = 1 - z + S, S = sqrt((1-z)^2 + 4 alpha^2 z).
      // (1-z)^2 + 4 alpha^2 z has its roots on |z| = 1 and avoids (-inf, 0]
      // for |z| < 1, so the principal square root (S(0) = 1) is single-valued
      // on the whole disc.
      double al = n.x;
      double a2 = al * al;
      Complex om = 1.0 - z;
      Complex S = std::sqrt(om * om + 4.0 * a2 * z);
      Complex S1 = (z + 2.0 * a2 - 1.0) / S;
      Complex S2 = 4.0 * a2 * (1.0 - a2) / (S * S * S);
      Complex D = om + S;
      Complex D1 = S1 - 1.0;
      Complex D2 = S2;
      Complex D_2 = D * D;
      Complex num1 = D - z * D1;
      return {2.0 * al * z / D, 2.0 * al * num1 / D_2,
              2.0 * al * (-z * D2 * D - 2.0 * D1 * num1) / (D_2 * D)};
    }
    case Kind::kGAlpha: {
      // z (1 + alpha z)/(alpha + z); pole at -alpha sits inside the disc for
      // alpha < 1, outside the image of k_alpha where this map is used.
      double al = n.x;
      Complex den = al + z;
      if (std::abs(den) < kPoleGuard)
        throw DomainError("g_alpha: z at the pole -alpha");
      Complex den2 = den * den;
      return {z * (1.0 + al * z) / den, al * (1.0 + 2.0 * al * z + z * z) / den2,
              2.0 * al * (al * al - 1.0) / (den2 * den)};
    }
    case Kind::kBlaschke: {
      Jet acc{n.c, 0.0, 0.0};  // sigma
      for (const BlaschkeZero& bz : n.zeros) {
        Jet factor = mobius_jet(bz.zero, z);
        for (int m = 0; m < bz.multiplicity; ++m) acc = jet_mul(acc, factor);
      }
      return acc;
    }
    case Kind::kCompose: {
      Jet g = eval_node(*n.rhs, z);
      Jet f = eval_node(*n.lhs, g.f);
      return {f.f, f.d1 * g.d1, f.d2 * g.d1 * g.d1 + f.d1 * g.d2};
    }
    case Kind::kProduct:
      return jet_mul(eval_node(*n.lhs, z), eval_node(*n.rhs, z));
    case Kind::kScalarMul: {
      Jet f = eval_node(*n.lhs, z);
      return {n.c * f.f, n.c * f.d1, n.c * f.d2};
    }
  }
  throw Error("holomap: corrupt node");
}

std::shared_ptr<const Node> make_node(Node&& n) {
  return std::make_shared<const Node>(std::move(n));
}

using ComplexLD = std::complex<long double>;

ComplexLD value_node_ld(const Node& n, ComplexLD z) {
  switch (n.kind) {
    case Kind::kConstant:
      return ComplexLD(n.c);
    case Kind::kIdentity:
      return z;
    case Kind::kRotation:
      return ComplexLD(n.c) * z;
    case Kind::kScale:
      return static_cast<long double>(n.x) * z;
    case Kind::kMobius: {
      ComplexLD a(n.c);
      return (a - z) / (1.0L - std::conj(a) * z);
    }
    case Kind::kFAlpha: {
      long double al = n.x;
      return (al + z) / (1.0L + al * z);
    }
    case Kind::kKAlpha: {
      long double al = n.x;
      ComplexLD om = 1.0L - z;
      ComplexLD S = std::sqrt(om * om + 4.0L * al * al * z);
      return 2.0L * al * z / (om + S);
    }
    case Kind::kGAlpha: {
      long double al = n.x;
      ComplexLD den = al + z;
      if (std::abs(den) < static_cast<long double>(kPoleGuard))
        throw DomainError("g_alpha: z at the pole -alpha");
      return z * (1.0L + al * z) / den;
    }
    case Kind::kBlaschke: {
      ComplexLD acc(n.c);
      for (const BlaschkeZero& bz : n.zeros) {
        ComplexLD a(bz.zero);
        ComplexLD factor = (a - z) / (1.0L - std::conj(a) * z);
        for (int m = 0; m < bz.multiplicity; ++m) acc *= factor;
      }
      return acc;
    }
    case Kind::kCompose:
      return value_node_ld(*n.lhs, value_node_ld(*n.rhs, z));
    case Kind::kProduct:
      return value_node_ld(*n.lhs, z) * value_node_ld(*n.rhs, z);
    case Kind::kScalarMul:
      return ComplexLD(n.c) * value_node_ld(*n.lhs, z);
  }
  throw Error("holomap: corrupt node");
}

}  // namespace

HoloMap HoloMap::constant(Complex c) {
  if (std::abs(c) > 1.0 + 1e-15)
    throw DomainError("constant: |c| > 1");
  Node n;
  n.c = c;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::identity() {
  Node n;
  n.kind = Kind::kIdentity;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::rotation(double theta) {
  Node n;
  n.kind = Kind::kRotation;
  n.c = std::polar(1.0, theta);
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::scale(double r) {
  if (!(r > 0.0 && r <= 1.0))
    throw DomainError("scale: r must lie in (0, 1]");
  Node n;
  n.kind = Kind::kScale;
  n.x = r;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::mobius(Complex a) {
  if (!(std::abs(a) < 1.0))
    throw DomainError("mobius: |a| >= 1");
  Node n;
  n.kind = Kind::kMobius;
  n.c = a;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::f_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("f_alpha: alpha must lie in (0, 1]");
  Node n;
  n.kind = Kind::kFAlpha;
  n.x = alpha;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::k_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("k_alpha: alpha must lie in (0, 1]");
  Node n;
  n.kind = Kind::kKAlpha;
  n.x = alpha;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::g_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("g_alpha: alpha must lie in (0, 1]");
  Node n;
  n.kind = Kind::kGAlpha;
  n.x = alpha;
  return HoloMap(make_node(std::move(n)));
}

namespace {

// A factor declared unimodular must not make the stored map expansive: the
// components, taken as exact values, decide the extended-precision level
// function, and |sigma|^2 one ulp above 1 shifts the lambda = 1 level sets
// outward by O(ulp / |grad u|), which near the tangential arc tips inflates
// to ~1e-8. The double norm of (0.6, 0.8) rounds to exactly 1, so the test
// has to run in long double. Snap to unit modulus, rounding toward the
// closed disc.
Complex snap_unimodular(Complex sigma) {
  Complex s = sigma / std::abs(sigma);
  auto norm_exact = [](Complex c) {
    long double x = c.real();
    long double y = c.imag();
    return x * x + y * y;
  };
  while (norm_exact(s) > 1.0L)
    s *= 1.0 - std::numeric_limits<double>::epsilon();
  return s;
}

}  // namespace

HoloMap HoloMap::blaschke(std::vector<BlaschkeZero> zeros, Complex sigma) {
  if (std::abs(std::abs(sigma) - 1.0) > 1e-12)
    throw DomainError("blaschke: |sigma| != 1");
  sigma = snap_unimodular(sigma);
  for (const BlaschkeZero& bz : zeros) {
    if (!(std::abs(bz.zero) < 1.0))
      throw DomainError("blaschke: zero outside the open disc");
    if (bz.multiplicity < 1)
      throw DomainError("blaschke: multiplicity < 1");
  }
  Node n;
  n.kind = Kind::kBlaschke;
  n.c = sigma;
  n.zeros = std::move(zeros);
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::compose(HoloMap outer, HoloMap inner) {
  Node n;
  n.kind = Kind::kCompose;
  n.lhs = outer.node_;
  n.rhs = inner.node_;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::product(HoloMap lhs, HoloMap rhs) {
  Node n;
  n.kind = Kind::kProduct;
  n.lhs = lhs.node_;
  n.rhs = rhs.node_;
  return HoloMap(make_node(std::move(n)));
}

HoloMap HoloMap::scalar_mul(Complex sigma, HoloMap f) {
  if (std::abs(sigma) > 1.0 + 1e-15)
    throw DomainError("scalar_mul: |sigma| > 1");
  if (std::abs(std::abs(sigma) - 1.0) <= 1e-12)
    sigma = snap_unimodular(sigma);
  Node n;
  n.kind = Kind::kScalarMul;
  n.c = sigma;
  n.lhs = f.node_;
  return HoloMap(make_node(std::move(n)));
}

Jet HoloMap::eval(Complex z, int order) const {
  if (!(std::norm(z) < 1.0))
    throw DomainError("eval: |z| >= 1");
  if (order < 0 || order > 2)
    throw DomainError("eval: order must be 0, 1 or 2");
  Jet j = eval_node(*node_, z);
  if (order < 2) j.d2 = 0.0;
  if (order < 1) j.d1 = 0.0;
  return j;
}

std::complex<long double> HoloMap::value_ld(std::complex<long double> z) const {
  if (!(std::norm(z) < 1.0L))
    throw DomainError("value_ld: |z| >= 1");
  return value_node_ld(*node_, z);
}

Complex dh1_from_jet(Complex z, Complex f, Complex f1) {
  return (1.0 - std::norm(z)) * f1 / (1.0 - std::norm(f));
}

Complex dh2_from_jet(Complex z, Complex f, Complex f1, Complex f2) {
  double pz = 1.0 - std::norm(z);
  double pf = 1.0 - std::norm(f);
  return pz * pz * f2 / pf + 2.0 * pz * pz * std::conj(f) * f1 * f1 / (pf * pf) -
         2.0 * std::conj(z) * pz * f1 / pf;
}

HyperbolicDerivatives hyperbolic_derivatives(const HoloMap& f, Complex z) {
  Jet j = f.eval(z, 2);
  if (1.0 - std::norm(j.f) < 1e-12)
    throw DomainError("hyperbolic_derivatives: |f(z)| at the unit circle");
  return {dh1_from_jet(z, j.f, j.d1), dh2_from_jet(z, j.f, j.d1, j.d2)};
}

}  // namespace hyplevel
