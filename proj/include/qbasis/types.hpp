#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qbasis/math_util.hpp"

namespace qbasis {

/// Thrown when a matrix fails the orthonormality requirement of an operation.
class UnitarityError : public std::runtime_error {
 public:
  UnitarityError(std::string what, double residual)
      : std::runtime_error(std::move(what)), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Sum of |(U^dag U - I)_{jk}| over all entries.
double orthonormality_residual(const Eigen::MatrixXcd& u);

/// Pure state of a spin-j system in the J_z eigenbasis.
///
/// Amplitudes are ordered by descending magnetic number: entry k holds
/// Z_k = <j, j-k|psi>, so entry 0 belongs to m = +j. The vector is
/// normalized on construction. Spin is carried as two_j to keep
/// half-integer values exact.
class SpinState {
 public:
  SpinState(int two_j, Eigen::VectorXcd amplitudes);

  int two_j() const { return two_j_; }
  double j() const { return 0.5 * two_j_; }
  int dim() const { return two_j_ + 1; }
  const Eigen::VectorXcd& amplitudes() const { return z_; }
  Complex amplitude(int k) const { return z_(k); }

 private:
  int two_j_;
  Eigen::VectorXcd z_;
};

/// <a|b> with the ordering convention of SpinState.
Complex overlap(const SpinState& a, const SpinState& b);

/// |<a|b>|, the phase-insensitive comparison used throughout.
double fidelity(const SpinState& a, const SpinState& b);

/// Orthonormal basis of N = 2j+1 spin states; column i of the matrix is
/// the amplitude vector of the i-th basis state.
class Basis {
 public:
  Basis(int two_j, Eigen::MatrixXcd matrix, double tol = 1e-10);

  int two_j() const { return two_j_; }
  int dim() const { return two_j_ + 1; }
  const Eigen::MatrixXcd& matrix() const { return u_; }
  SpinState column(int i) const;
  double residual() const { return residual_; }

 private:
  int two_j_;
  Eigen::MatrixXcd u_;
  double residual_;
};

struct Star {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2*pi)
};

Eigen::Vector3d to_unit_vector(const Star& s);
Star star_from_unit_vector(const Eigen::Vector3d& v);

/// Multiset of points on the unit sphere. Stored sorted by (theta, phi);
/// phi is wrapped into [0, 2*pi) and canonicalized to 0 at the poles.
class StarConstellation {
 public:
  StarConstellation() = default;
  explicit StarConstellation(std::vector<Star> stars);

  int size() const { return static_cast<int>(stars_.size()); }
  const std::vector<Star>& stars() const& { return stars_; }
  std::vector<Star> stars() && { return std::move(stars_); }
  std::vector<Eigen::Vector3d> unit_vectors() const;

 private:
  std::vector<Star> stars_;
};

/// Polynomial sum_k c_k z^(d-k) where d is the nominal degree; leading
/// coefficients may vanish, in which case roots escape to infinity.
struct ComplexPolynomial {
  Eigen::VectorXcd coefficients;  // c_0 .. c_d
  int nominal_degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// State of num_qubits spin-1/2 systems supported on the symmetric subspace.
struct SymmetricState {
  int num_qubits = 0;
  Eigen::VectorXcd amplitudes;  // length 2^num_qubits, basis ordered by bits
};

Complex overlap(const SymmetricState& a, const SymmetricState& b);

}  // namespace qbasis
