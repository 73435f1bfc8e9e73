#pragma once

#include <optional>

#include "qbasis/types.hpp"

namespace qbasis {

/// z-y-z Euler angles of a rotation.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  /// Equivalent angles with beta in [0, pi] and alpha, gamma in [0, 2*pi).
  /// For half-integer spins the canonical form may differ by a global phase.
  EulerAngles canonical() const;
};

struct AngularMomentum {
  Eigen::MatrixXcd jx, jy, jz;
};

/// Spin operators in the |j,m> basis ordered by descending m, from the
/// standard ladder matrix elements. Satisfy [Jx,Jy] = i Jz and
/// Jx^2+Jy^2+Jz^2 = j(j+1) I.
AngularMomentum angular_momentum_matrices(int two_j);

/// D^j(alpha,beta,gamma) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz).
Eigen::MatrixXcd wigner_d(int two_j, const EulerAngles& angles);

SpinState rotate_state(const SpinState& state, const EulerAngles& angles);
Basis rotate_basis(const Basis& basis, const EulerAngles& angles);

/// SO(3) matrix Rz(alpha) Ry(beta) Rz(gamma) acting on star positions.
Eigen::Matrix3d rotation_matrix(const EulerAngles& angles);

/// Euler angles of an SO(3) matrix (inverse of rotation_matrix).
EulerAngles euler_from_rotation(const Eigen::Matrix3d& r);

/// Euler composition: rotation_matrix(result) = rotation_matrix(a) * rotation_matrix(b).
EulerAngles compose(const EulerAngles& a, const EulerAngles& b);

StarConstellation rotate_constellation(const StarConstellation& c, const EulerAngles& angles);
StarConstellation rotate_constellation(const StarConstellation& c, const Eigen::Matrix3d& r);

/// Basis whose columns are D^j(g_i) |fiducial>. Throws UnitarityError with
/// the largest pairwise overlap when the generated family is not orthogonal
/// within tol.
Basis generate_by_rotation(const SpinState& fiducial, const std::vector<EulerAngles>& generators,
                           double tol = 1e-6);

/// Sorted pairwise chordal distances between stars; invariant under
/// rotations of the constellation.
using ConstellationFingerprint = std::vector<double>;

ConstellationFingerprint fingerprint(const StarConstellation& c);

/// Largest absolute difference of two sorted fingerprints (infinity when the
/// sizes differ).
double fingerprint_distance(const ConstellationFingerprint& a, const ConstellationFingerprint& b);

/// Rotation carrying constellation a onto constellation b as multisets of
/// points (within tol), when one exists.
std::optional<Eigen::Matrix3d> align_constellations(const StarConstellation& a, const StarConstellation& b,
                                                    double tol = 1e-8);

struct IsoCoherence {
  bool iso_coherent = false;
  std::vector<std::vector<int>> classes;  // column indices grouped by SU(2) equivalence
};

/// Partitions basis columns into SU(2) equivalence classes: equal star
/// fingerprints filtered by an explicit aligning rotation.
IsoCoherence is_isocoherent(const Basis& basis, double tol = 1e-6);

}  // namespace qbasis
