#pragma once

#include <cstdint>
#include <random>

namespace statcx {

/// Seeded generator whose output is identical on every platform: the
/// Mersenne Twister engine is fully specified by the standard, and the
/// conversions to uniform and Gaussian variates are done here rather than
/// through the implementation-defined std:: distributions.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace statcx
