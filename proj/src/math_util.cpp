#include "qbasis/math_util.hpp"

#include <cstdint>

namespace qbasis {

double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 62) {
    // Multiply-then-divide stays integral at every step.
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
      r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return static_cast<double>(r);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double sqrt_binomial(int n, int k) { return std::sqrt(binomial(n, k)); }

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can return exactly 2*pi after the correction when phi is a tiny negative.
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

}  // namespace qbasis
