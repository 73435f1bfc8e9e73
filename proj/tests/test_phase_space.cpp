#include <doctest.h>

#include <random>

#include "qbasis/catalog.hpp"
#include "qbasis/phase_space.hpp"
#include "qbasis/rotations.hpp"
#include "qbasis/stellar.hpp"
#include "test_util.hpp"

using namespace qbasis;
using qbasis::testing::basis_state;
using qbasis::testing::random_state;

namespace {
std::mt19937_64 g_rng(271828);  // NOLINT
}

TEST_CASE("husimi function basics") {
  // Self overlap of a coherent state is one at its own direction.
  CHECK(husimi(coherent_state(4, 1.1, 0.7), 1.1, 0.7) == doctest::Approx(1.0).epsilon(1e-13));
  // |1,0> is orthogonal to the polar coherent states.
  CHECK(husimi(basis_state(2, 1), 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));

  // Zeros of Q sit antipodal to the Majorana stars.
  for (int trial = 0; trial < 50; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 5);
    const SpinState psi = random_state(two_j, g_rng);
    for (const auto& star : stars_from_state(psi).stars()) {
      CHECK(husimi(psi, kPi - star.theta, wrap_angle(star.phi + kPi)) <= 1e-10);
    }
  }
}

TEST_CASE("husimi normalization") {
  for (int trial = 0; trial < 10; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 5);
    const SpinState psi = random_state(two_j, g_rng);
    CHECK(husimi_norm_integral(psi) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("wehrl entropy reference values") {
  // Coherent states achieve the minimum (N-1)/N.
  for (int n = 3; n <= 7; ++n) {
    const SpinState coh = coherent_state(n - 1, 0.9, 2.2);
    CHECK(std::abs(wehrl_entropy(coh) - (n - 1.0) / n) < 1e-8);
  }

  // |1,0>: entropy 5/3 - ln 2.
  CHECK(std::abs(wehrl_entropy(basis_state(2, 1)) - (5.0 / 3.0 - std::log(2.0))) < 1e-8);

  // Lieb bound on random states.
  for (int trial = 0; trial < 100; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 5);
    const SpinState psi = random_state(two_j, g_rng);
    CHECK(wehrl_entropy(psi) >= (two_j) / (two_j + 1.0) - 1e-8);
  }
}

TEST_CASE("wehrl entropy means over reference bases") {
  // |j,m> bases.
  const double expected_jm[5] = {1.0 - std::log(2.0) / 3.0, 1.5 - 0.5 * std::log(3.0),
                                 2.0 - std::log(96.0) / 5.0, 2.5 - std::log(50.0) / 3.0,
                                 3.0 - std::log(162000.0) / 7.0};
  for (int n : {3, 4}) {
    const Basis jm(n - 1, Eigen::MatrixXcd::Identity(n, n));
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += wehrl_entropy(jm.column(i));
    CHECK(std::abs(mean / n - expected_jm[n - 3]) < 1e-6);
  }

  // Haar mean closed form.
  CHECK(mean_wehrl_haar(3) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(mean_wehrl_haar(6) == doctest::Approx(29.0 / 20.0).epsilon(1e-14));
  CHECK(mean_wehrl_haar(2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(mean_wehrl_haar(1), std::domain_error);
}

TEST_CASE("husimi maxima") {
  // Coherent states saturate at one.
  const HusimiExtremum coherent_ext = husimi_max(coherent_state(4, 2.0, 0.3));
  CHECK(coherent_ext.q_max == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(coherent_ext.d_fs == doctest::Approx(0.0).epsilon(1e-5));

  // |1,0> peaks at 1/2 on the equator.
  const HusimiExtremum mid = husimi_max(basis_state(2, 1));
  CHECK(mid.q_max == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(mid.theta == doctest::Approx(kPi / 2).epsilon(1e-6));

  // Octahedral j = 3 state: 2/9.
  Eigen::VectorXcd oct = Eigen::VectorXcd::Zero(7);
  oct(1) = oct(5) = 1.0;
  CHECK(husimi_max(SpinState(6, oct)).q_max == doctest::Approx(2.0 / 9.0).epsilon(1e-8));

  // Closed form for |j,m>: C(2j, j-m) u^(j+m) (1-u)^(j-m) at u = (j+m)/2j.
  for (int two_j : {2, 3, 4, 6}) {
    for (int k = 0; k <= two_j; ++k) {
      const double u = (two_j - k) / static_cast<double>(two_j);
      const double expected =
          binomial(two_j, k) * std::pow(u, two_j - k) * std::pow(1.0 - u, k);
      CHECK(husimi_max(basis_state(two_j, k)).q_max == doctest::Approx(expected).epsilon(1e-8));
    }
  }

  // Every maximum dominates the sphere average 1/N.
  for (int trial = 0; trial < 25; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 5);
    const SpinState psi = random_state(two_j, g_rng);
    const HusimiExtremum ext = husimi_max(psi);
    CHECK(ext.q_max >= 1.0 / (two_j + 1.0));
    CHECK(ext.d_fs == doctest::Approx(std::acos(std::sqrt(ext.q_max))).epsilon(1e-12));
  }
}

TEST_CASE("rotation invariance of phase-space quantities") {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 4);
    const SpinState psi = random_state(two_j, g_rng);
    const EulerAngles g{kTwoPi * u01(g_rng), kPi * u01(g_rng), kTwoPi * u01(g_rng)};
    const SpinState rotated = rotate_state(psi, g);
    CHECK(std::abs(wehrl_entropy(psi) - wehrl_entropy(rotated)) < 1e-8);
    CHECK(std::abs(husimi_max(psi).q_max - husimi_max(rotated).q_max) < 1e-8);
  }
}

TEST_CASE("basis phase-space statistics") {
  const PhaseSpaceStats f3 = basis_phase_space_stats(catalog_get("u3_classical").basis);
  CHECK(std::abs(f3.mean_qmax - (3.0 + 2.0 * std::sqrt(2.0)) / 6.0) < 1e-6);

  const PhaseSpaceStats jm3 = basis_phase_space_stats(catalog_get("jm_basis_3").basis);
  CHECK(std::abs(jm3.mean_wehrl - (1.0 - std::log(2.0) / 3.0)) < 1e-6);

  const PhaseSpaceStats u3q = basis_phase_space_stats(catalog_get("u3_quantum").basis);
  CHECK(std::abs(u3q.mean_wehrl - (5.0 / 3.0 - std::log(2.0))) < 1e-6);
  CHECK(std::abs(u3q.mean_qmax - 0.5) < 1e-6);
}
