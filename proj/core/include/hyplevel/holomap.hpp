#pragma once

#include <memory>
#include <vector>

#include "hyplevel/types.hpp"

namespace hyplevel {

/// Value and first two complex derivatives of a map at a point.
struct Jet {
  Complex f{};
  Complex d1{};
  Complex d2{};
};

struct BlaschkeZero {
  Complex zero;
  int multiplicity = 1;
};

/// Immutable expression tree of holomorphic self-maps of the closed unit disc.
/// Every primitive carries closed-form derivatives up to order two; compose,
/// product and scalar multiples propagate them by chain/product rule, so eval
/// never falls back to finite differencing.
///
/// All factories validate their parameters. g_alpha is the one member whose
/// pole (-alpha) lies inside the disc for alpha < 1: it is the inverse of
/// k_alpha and is only meaningful on k_alpha's image, so eval rejects a small
/// neighbourhood of the pole instead of the whole complement.
class HoloMap {
 public:
  static HoloMap constant(Complex c);              // |c| <= 1
  static HoloMap identity();
  static HoloMap rotation(double theta);           // e^{i theta} z
  static HoloMap scale(double r);                  // r z, 0 < r <= 1
  static HoloMap mobius(Complex a);                // (a - z)/(1 - conj(a) z), |a| < 1
  static HoloMap f_alpha(double alpha);            // (alpha + z)/(1 + alpha z), 0 < alpha <= 1
  static HoloMap k_alpha(double alpha);            // 2 alpha z/(1 - z + sqrt((1-z)^2 + 4 alpha^2 z))
  static HoloMap g_alpha(double alpha);            // z (1 + alpha z)/(alpha + z), inverse of k_alpha
  static HoloMap blaschke(std::vector<BlaschkeZero> zeros, Complex sigma);  // |sigma| = 1
  static HoloMap compose(HoloMap outer, HoloMap inner);
  static HoloMap product(HoloMap lhs, HoloMap rhs);
  static HoloMap scalar_mul(Complex sigma, HoloMap f);  // |sigma| <= 1

  /// Value and derivatives at z, |z| < 1. `order` trims the jet: entries above
  /// it are zero-filled. Throws DomainError outside the disc or at a pole.
  Jet eval(Complex z, int order = 2) const;

  Complex operator()(Complex z) const { return eval(z, 0).f; }

  /// Value only, in extended precision. The level-set residual cancels to
  /// ~1e-16 near the unit circle when evaluated in double, which caps the
  /// attainable curvature accuracy at arc endpoints; the tracer's final
  /// Newton polish therefore evaluates the residual through this path.
  std::complex<long double> value_ld(std::complex<long double> z) const;

  struct Node;
  explicit HoloMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

struct HyperbolicDerivatives {
  Complex dh1;
  Complex dh2;
};

/// Hyperbolic derivative from raw jet data: (1-|z|^2) f'/(1-|f|^2).
Complex dh1_from_jet(Complex z, Complex f, Complex f1);

/// Second hyperbolic derivative from raw jet data:
///   (1-|z|^2)^2 f''/(1-|f|^2) + 2 (1-|z|^2)^2 conj(f) f'^2/(1-|f|^2)^2
///   - 2 conj(z) (1-|z|^2) f'/(1-|f|^2).
Complex dh2_from_jet(Complex z, Complex f, Complex f1, Complex f2);

/// Both hyperbolic derivatives of f at z. Throws DomainError when |f(z)| is
/// within 1e-12 of the unit circle (the quantities divide by 1-|f|^2).
HyperbolicDerivatives hyperbolic_derivatives(const HoloMap& f, Complex z);

}  // namespace hyplevel
