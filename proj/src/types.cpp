#include "qbasis/types.hpp"

#include <algorithm>
#include <cmath>

namespace qbasis {

double orthonormality_residual(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd g = u.adjoint() * u;
  const int n = static_cast<int>(g.rows());
  return (g - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().sum();
}

SpinState::SpinState(int two_j, Eigen::VectorXcd amplitudes) : two_j_(two_j), z_(std::move(amplitudes)) {
  if (two_j_ < 1) throw std::invalid_argument("SpinState: two_j must be >= 1");
  if (z_.size() != two_j_ + 1) {
    throw std::invalid_argument("SpinState: expected " + std::to_string(two_j_ + 1) + " amplitudes, got " +
                                std::to_string(z_.size()));
  }
  const double norm = z_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("SpinState: amplitude vector must be finite and nonzero");
  }
  z_ /= norm;
}

Complex overlap(const SpinState& a, const SpinState& b) {
  if (a.two_j() != b.two_j()) throw std::invalid_argument("overlap: spin mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const SpinState& a, const SpinState& b) { return std::abs(overlap(a, b)); }

Basis::Basis(int two_j, Eigen::MatrixXcd matrix, double tol) : two_j_(two_j), u_(std::move(matrix)) {
  const int n = two_j_ + 1;
  if (u_.rows() != n || u_.cols() != n) throw std::invalid_argument("Basis: matrix must be (2j+1) x (2j+1)");
  residual_ = orthonormality_residual(u_);
  if (!(residual_ <= tol)) {
    throw UnitarityError("Basis: orthonormality residual " + std::to_string(residual_) + " exceeds tolerance " +
                             std::to_string(tol),
                         residual_);
  }
}

SpinState Basis::column(int i) const { return SpinState(two_j_, u_.col(i)); }

Eigen::Vector3d to_unit_vector(const Star& s) {
  return {std::sin(s.theta) * std::cos(s.phi), std::sin(s.theta) * std::sin(s.phi), std::cos(s.theta)};
}

Star star_from_unit_vector(const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  Star s;
  s.theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  s.phi = (std::abs(u.x()) + std::abs(u.y()) > 0.0) ? wrap_angle(std::atan2(u.y(), u.x())) : 0.0;
  return s;
}

StarConstellation::StarConstellation(std::vector<Star> stars) : stars_(std::move(stars)) {
  for (auto& s : stars_) {
    s.phi = wrap_angle(s.phi);
    if (s.theta <= 0.0 || s.theta >= kPi) s.phi = 0.0;
    s.theta = std::clamp(s.theta, 0.0, kPi);
  }
  std::sort(stars_.begin(), stars_.end(), [](const Star& a, const Star& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
  });
}

std::vector<Eigen::Vector3d> StarConstellation::unit_vectors() const {
  std::vector<Eigen::Vector3d> v;
  v.reserve(stars_.size());
  for (const auto& s : stars_) v.push_back(to_unit_vector(s));
  return v;
}

Complex overlap(const SymmetricState& a, const SymmetricState& b) {
  if (a.num_qubits != b.num_qubits) throw std::invalid_argument("overlap: qubit count mismatch");
  return a.amplitudes.dot(b.amplitudes);
}

}  // namespace qbasis
