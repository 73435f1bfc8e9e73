#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace qbasis {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Binomial coefficient C(n, k) as a double. Returns 0 for k < 0 or k > n.
/// Exact integer arithmetic up to n = 62, log-gamma evaluation beyond.
double binomial(int n, int k);

/// sqrt(C(n, k)) with the same out-of-range convention.
double sqrt_binomial(int n, int k);

/// Wraps an angle into [0, 2*pi).
double wrap_angle(double phi);

}  // namespace qbasis
