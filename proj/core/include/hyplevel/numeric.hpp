#pragma once

#include <cstdint>
#include <random>

namespace hyplevel {

/// Compensated accumulator. Quadrature sums must not depend on how work is
/// partitioned, so every integration loop feeds one of these in index order.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

/// Uniform double in [0,1) from the raw mt19937 stream. The standard pins the
/// mt19937 output sequence but not uniform_real_distribution, so fixtures that
/// must reproduce bit-for-bit across toolchains use this instead.
inline double uniform01(std::mt19937& gen) {
  std::uint64_t hi = gen();
  std::uint64_t lo = gen();
  return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace hyplevel
