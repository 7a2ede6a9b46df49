#pragma once

#include <complex>
#include <numbers>

#include "hyplevel/errors.hpp"

namespace hyplevel {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Density of the hyperbolic metric |dz|/(1-|z|^2) on the unit disc.
inline double hyperbolic_density(Complex z) { return 1.0 / (1.0 - std::norm(z)); }

/// A point with a checked |z| < 1 guarantee.
class DiscPoint {
 public:
  explicit DiscPoint(Complex z) : z_(z) {
    if (!(std::norm(z) < 1.0))
      throw DomainError("DiscPoint: |z| >= 1");
  }

  Complex value() const { return z_; }
  double density() const { return 1.0 / (1.0 - std::norm(z_)); }

 private:
  Complex z_;
};

}  // namespace hyplevel
