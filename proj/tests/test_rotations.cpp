#include <doctest.h>

#include <random>

#include "qbasis/catalog.hpp"
#include "qbasis/measures.hpp"
#include "qbasis/rotations.hpp"
#include "qbasis/stellar.hpp"
#include "test_util.hpp"

using namespace qbasis;
using qbasis::testing::basis_state;
using qbasis::testing::random_state;

namespace {

std::mt19937_64 g_rng(60601);  // NOLINT

EulerAngles random_angles() {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  return {kTwoPi * u01(g_rng), kPi * u01(g_rng), kTwoPi * u01(g_rng)};
}

}  // namespace

TEST_CASE("angular momentum algebra") {
  for (int two_j : {1, 2, 3, 5, 6}) {
    const auto [jx, jy, jz] = angular_momentum_matrices(two_j);
    const double j = 0.5 * two_j;
    const Complex i(0.0, 1.0);
    CHECK((jx * jy - jy * jx - i * jz).norm() < 1e-12);
    CHECK((jz * jx - jx * jz - i * jy).norm() < 1e-12);
    CHECK((jy * jz - jz * jy - i * jx).norm() < 1e-12);
    const Eigen::MatrixXcd casimir = jx * jx + jy * jy + jz * jz;
    CHECK((casimir - j * (j + 1) * Eigen::MatrixXcd::Identity(two_j + 1, two_j + 1)).norm() < 1e-12);
  }

  // Spin 1/2 gives the Pauli matrices over two.
  const auto [sx, sy, sz] = angular_momentum_matrices(1);
  CHECK(std::abs(sx(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(sy(0, 1) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(sz(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(sz(1, 1) + 0.5) < 1e-15);
}

TEST_CASE("wigner matrices against explicit forms") {
  const EulerAngles g{0.7, 1.2, -0.4};

  // j = 1/2.
  const Eigen::MatrixXcd d_half = wigner_d(1, g);
  const double cb = std::cos(0.5 * g.beta), sb = std::sin(0.5 * g.beta);
  Eigen::MatrixXcd ref(2, 2);
  ref(0, 0) = cb * std::exp(Complex(0, -0.5 * (g.alpha + g.gamma)));
  ref(0, 1) = -sb * std::exp(Complex(0, -0.5 * (g.alpha - g.gamma)));
  ref(1, 0) = sb * std::exp(Complex(0, 0.5 * (g.alpha - g.gamma)));
  ref(1, 1) = cb * std::exp(Complex(0, 0.5 * (g.alpha + g.gamma)));
  CHECK((d_half - ref).norm() < 1e-13);

  // j = 1.
  const Eigen::MatrixXcd d_one = wigner_d(2, g);
  Eigen::MatrixXcd ref1(3, 3);
  const double c2 = cb * cb, s2 = sb * sb, cs = cb * sb;
  const Complex ia(0, g.alpha), ig(0, g.gamma);
  ref1(0, 0) = c2 * std::exp(-ia - ig);
  ref1(0, 1) = -std::sqrt(2.0) * cs * std::exp(-ia);
  ref1(0, 2) = s2 * std::exp(-ia + ig);
  ref1(1, 0) = std::sqrt(2.0) * cs * std::exp(-ig);
  ref1(1, 1) = std::cos(g.beta);
  ref1(1, 2) = -std::sqrt(2.0) * cs * std::exp(ig);
  ref1(2, 0) = s2 * std::exp(ia - ig);
  ref1(2, 1) = std::sqrt(2.0) * cs * std::exp(ia);
  ref1(2, 2) = c2 * std::exp(ia + ig);
  CHECK((d_one - ref1).norm() < 1e-13);

  // Null rotation and unitarity.
  CHECK((wigner_d(5, {0, 0, 0}) - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-14);
  for (int two_j : {1, 3, 6}) {
    CHECK(orthonormality_residual(wigner_d(two_j, random_angles())) < 1e-12);
  }
}

TEST_CASE("wigner homomorphism up to phase") {
  for (int trial = 0; trial < 12; ++trial) {
    const int two_j = 1 + static_cast<int>(g_rng() % 6);
    const EulerAngles g1 = random_angles();
    const EulerAngles g2 = random_angles();
    const Eigen::MatrixXcd lhs = wigner_d(two_j, g1) * wigner_d(two_j, g2);
    const Eigen::MatrixXcd rhs = wigner_d(two_j, compose(g1, g2));
    // Strip the global phase via the largest entry.
    Eigen::Index r, c;
    lhs.cwiseAbs().maxCoeff(&r, &c);
    const Complex phase = lhs(r, c) / rhs(r, c);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
    CHECK((lhs - phase * rhs).norm() < 1e-10);
  }
}

TEST_CASE("euler canonicalization and composition") {
  const EulerAngles raw{-1.0, 4.5, 9.0};
  const EulerAngles canon = raw.canonical();
  CHECK(canon.beta >= 0.0);
  CHECK(canon.beta <= kPi);
  CHECK((rotation_matrix(raw) - rotation_matrix(canon)).norm() < 1e-12);

  const EulerAngles g1 = random_angles(), g2 = random_angles();
  CHECK((rotation_matrix(compose(g1, g2)) - rotation_matrix(g1) * rotation_matrix(g2)).norm() < 1e-12);
}

TEST_CASE("rotating states and bases") {
  // North pole to south pole.
  for (int two_j : {2, 5}) {
    const SpinState flipped = rotate_state(basis_state(two_j, 0), {0.0, kPi, 0.0});
    CHECK(fidelity(flipped, basis_state(two_j, two_j)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // B_t is rotation invariant on bases.
  const Basis f3 = catalog_get("u3_classical").basis;
  const Basis rotated = rotate_basis(f3, random_angles());
  CHECK(std::abs(basis_quantumness(rotated, 1) - basis_quantumness(f3, 1)) < 1e-12);

  // Scalar products are preserved.
  for (int trial = 0; trial < 10; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 4);
    const SpinState a = random_state(two_j, g_rng);
    const SpinState b = random_state(two_j, g_rng);
    const EulerAngles g = random_angles();
    CHECK(std::abs(overlap(rotate_state(a, g), rotate_state(b, g)) - overlap(a, b)) < 1e-12);
  }
}

TEST_CASE("stellar equivariance") {
  for (int trial = 0; trial < 100; ++trial) {
    const int two_j = 2 + static_cast<int>(g_rng() % 5);
    const SpinState psi = random_state(two_j, g_rng);
    const EulerAngles g = random_angles();
    const StarConstellation direct = stars_from_state(rotate_state(psi, g));
    const StarConstellation moved = rotate_constellation(stars_from_state(psi), g);
    CHECK(fingerprint_distance(fingerprint(direct), fingerprint(moved)) < 1e-8);
    // Pointwise multiset agreement.
    auto a = direct.unit_vectors();
    auto b = moved.unit_vectors();
    std::vector<char> used(b.size(), 0);
    for (const auto& p : a) {
      bool matched = false;
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (!used[k] && (p - b[k]).norm() < 1e-8) {
          used[k] = 1;
          matched = true;
          break;
        }
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("tetrahedral state keeps its fingerprint under its symmetry rotation") {
  Eigen::VectorXcd tz = Eigen::VectorXcd::Zero(5);
  tz(0) = 1.0;
  tz(3) = std::sqrt(2.0);
  const SpinState tetra(4, tz);
  const SpinState turned = rotate_state(tetra, {kTwoPi / 3.0, 0.0, 0.0});
  CHECK(fingerprint_distance(fingerprint(stars_from_state(tetra)), fingerprint(stars_from_state(turned))) <
        1e-10);
  // The rotation about the tetrahedron axis maps the state to itself up to phase.
  CHECK(fidelity(tetra, turned) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("generate bases by rotation") {
  // The staircase basis of dimension 3 from |1,0> and octahedron-axis rotations.
  const std::vector<EulerAngles> gens{{0, 0, 0}, {0, kPi / 2, 0}, {kPi / 2, kPi / 2, 0}};
  const Basis u3q = generate_by_rotation(basis_state(2, 1), gens, 1e-9);
  const Basis expected = catalog_get("u3_quantum").basis;
  // Same basis up to column order and phases: compare overlaps.
  for (int i = 0; i < 3; ++i) {
    double best = 0.0;
    for (int k = 0; k < 3; ++k) best = std::max(best, fidelity(u3q.column(i), expected.column(k)));
    CHECK(best == doctest::Approx(1.0).epsilon(1e-10));
  }

  // Non-orthogonal families are rejected with the largest overlap reported.
  const std::vector<EulerAngles> bad{{0, 0, 0}, {0, 0.3, 0}, {0, 0.6, 0}};
  CHECK_THROWS_AS(generate_by_rotation(coherent_state(2, 0.4, 0.2), bad), UnitarityError);
}

TEST_CASE("fingerprints and alignment") {
  const StarConstellation oct = octahedron_vertices();
  // Rotation invariance of the fingerprint.
  for (int trial = 0; trial < 20; ++trial) {
    const StarConstellation moved = rotate_constellation(oct, random_angles());
    CHECK(fingerprint_distance(fingerprint(oct), fingerprint(moved)) < 1e-8);
    const auto rot = align_constellations(oct, moved, 1e-8);
    REQUIRE(rot.has_value());
  }
  // Octahedron fingerprint: 12 edges of chord sqrt(2), 3 diameters of 2.
  const ConstellationFingerprint f = fingerprint(oct);
  REQUIRE(f.size() == 15);
  for (int i = 0; i < 12; ++i) CHECK(f[i] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (int i = 12; i < 15; ++i) CHECK(f[i] == doctest::Approx(2.0).epsilon(1e-12));

  // Different shapes must not align (sizes differ here, and the distance
  // spectra differ for equal sizes).
  CHECK(!align_constellations(tetrahedron_vertices(), octahedron_vertices(), 1e-8).has_value());
  const StarConstellation square({{kPi / 2, 0.0}, {kPi / 2, kPi / 2}, {kPi / 2, kPi}, {kPi / 2, 3 * kPi / 2}});
  CHECK(!align_constellations(tetrahedron_vertices(), square, 1e-8).has_value());
}

TEST_CASE("iso-coherence classification") {
  CHECK(is_isocoherent(catalog_get("u4_quantum").basis, 1e-6).iso_coherent);
  CHECK(is_isocoherent(catalog_get("u3_classical").basis, 1e-6).iso_coherent);

  const IsoCoherence u5c = is_isocoherent(catalog_get("u5_classical").basis, 1e-6);
  CHECK(!u5c.iso_coherent);
  REQUIRE(u5c.classes.size() == 2);
  std::vector<std::size_t> sizes{u5c.classes[0].size(), u5c.classes[1].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes[0] == 2);
  CHECK(sizes[1] == 3);
}
