#pragma once

#include <random>

#include "qbasis/types.hpp"

namespace qbasis::testing {

inline SpinState random_state(int two_j, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd z(two_j + 1);
  for (int k = 0; k <= two_j; ++k) z(k) = Complex(gauss(rng), gauss(rng));
  return SpinState(two_j, std::move(z));
}

inline SpinState basis_state(int two_j, int k) {
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(two_j + 1);
  z(k) = 1.0;
  return SpinState(two_j, std::move(z));
}

}  // namespace qbasis::testing
