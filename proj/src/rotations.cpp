#include "qbasis/rotations.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qbasis/stellar.hpp"

namespace qbasis {

EulerAngles EulerAngles::canonical() const {
  double a = wrap_angle(alpha), b = wrap_angle(beta), g = wrap_angle(gamma);
  if (b > kPi) {
    // R(a, b, g) = R(a+pi, 2*pi-b, g-pi) as SO(3) rotations.
    b = kTwoPi - b;
    a = wrap_angle(a + kPi);
    g = wrap_angle(g - kPi);
  }
  return {a, b, g};
}

AngularMomentum angular_momentum_matrices(int two_j) {
  if (two_j < 1) throw std::invalid_argument("angular_momentum_matrices: two_j must be >= 1");
  const int n = two_j + 1;
  const double j = 0.5 * two_j;
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    jz(k, k) = m;
    if (k >= 1) jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  AngularMomentum ops;
  ops.jz = jz;
  ops.jx = 0.5 * (jp + jp.adjoint());
  ops.jy = Complex(0.0, -0.5) * (jp - jp.adjoint());
  return ops;
}

Eigen::MatrixXcd wigner_d(int two_j, const EulerAngles& angles) {
  const int n = two_j + 1;
  const double j = 0.5 * two_j;
  const AngularMomentum ops = angular_momentum_matrices(two_j);
  const Eigen::MatrixXcd mid = (Complex(0.0, -angles.beta) * ops.jy).exp();
  Eigen::VectorXcd left(n), right(n);
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    left(k) = std::exp(Complex(0.0, -angles.alpha * m));
    right(k) = std::exp(Complex(0.0, -angles.gamma * m));
  }
  return left.asDiagonal() * mid * right.asDiagonal();
}

SpinState rotate_state(const SpinState& state, const EulerAngles& angles) {
  return SpinState(state.two_j(), wigner_d(state.two_j(), angles) * state.amplitudes());
}

Basis rotate_basis(const Basis& basis, const EulerAngles& angles) {
  const Eigen::MatrixXcd rotated = wigner_d(basis.two_j(), angles) * basis.matrix();
  return Basis(basis.two_j(), rotated, std::max(1e-10, 2.0 * basis.residual() + 1e-12));
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& angles) {
  const auto rz = [](double a) {
    Eigen::Matrix3d m;
    m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return m;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(angles.beta), 0, std::sin(angles.beta), 0, 1, 0, -std::sin(angles.beta), 0,
      std::cos(angles.beta);
  return rz(angles.alpha) * ry * rz(angles.gamma);
}

EulerAngles euler_from_rotation(const Eigen::Matrix3d& r) {
  EulerAngles e;
  const double cb = std::clamp(r(2, 2), -1.0, 1.0);
  e.beta = std::acos(cb);
  const double sb = std::sin(e.beta);
  if (sb > 1e-12) {
    e.alpha = wrap_angle(std::atan2(r(1, 2), r(0, 2)));
    e.gamma = wrap_angle(std::atan2(r(2, 1), -r(2, 0)));
  } else if (cb > 0.0) {
    e.alpha = wrap_angle(std::atan2(r(1, 0), r(0, 0)));
    e.gamma = 0.0;
  } else {
    e.alpha = wrap_angle(std::atan2(-r(0, 1), -r(0, 0)));
    e.gamma = 0.0;
  }
  return e;
}

EulerAngles compose(const EulerAngles& a, const EulerAngles& b) {
  return euler_from_rotation(rotation_matrix(a) * rotation_matrix(b));
}

StarConstellation rotate_constellation(const StarConstellation& c, const Eigen::Matrix3d& r) {
  std::vector<Star> stars;
  stars.reserve(c.size());
  for (const auto& v : c.unit_vectors()) stars.push_back(star_from_unit_vector(r * v));
  return StarConstellation(std::move(stars));
}

StarConstellation rotate_constellation(const StarConstellation& c, const EulerAngles& angles) {
  return rotate_constellation(c, rotation_matrix(angles));
}

Basis generate_by_rotation(const SpinState& fiducial, const std::vector<EulerAngles>& generators,
                           double tol) {
  const int n = fiducial.dim();
  if (static_cast<int>(generators.size()) != n) {
    throw std::invalid_argument("generate_by_rotation: need exactly 2j+1 generators");
  }
  Eigen::MatrixXcd u(n, n);
  for (int i = 0; i < n; ++i) {
    u.col(i) = wigner_d(fiducial.two_j(), generators[i]) * fiducial.amplitudes();
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) worst = std::max(worst, std::abs(u.col(i).dot(u.col(k))));
  }
  if (worst > tol) {
    throw UnitarityError(
        "generate_by_rotation: rotated family is not orthogonal, max overlap " + std::to_string(worst),
        worst);
  }
  return Basis(fiducial.two_j(), std::move(u), std::max(1e-10, 4.0 * n * n * tol));
}

ConstellationFingerprint fingerprint(const StarConstellation& c) {
  const auto v = c.unit_vectors();
  ConstellationFingerprint f;
  f.reserve(v.size() * (v.size() - 1) / 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t k = i + 1; k < v.size(); ++k) f.push_back((v[i] - v[k]).norm());
  }
  std::sort(f.begin(), f.end());
  return f;
}

double fingerprint_distance(const ConstellationFingerprint& a, const ConstellationFingerprint& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

namespace {

bool multiset_match(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b,
                    const Eigen::Matrix3d& r, double tol) {
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a) {
    const Eigen::Vector3d q = r * p;
    bool found = false;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!used[k] && (q - b[k]).norm() <= tol) {
        used[k] = 1;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Eigen::Matrix3d rotation_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const Eigen::Vector3d axis = a.cross(b);
  const double s = axis.norm();
  const double c = std::clamp(a.dot(b), -1.0, 1.0);
  if (s < 1e-14) {
    if (c > 0.0) return Eigen::Matrix3d::Identity();
    // Antipodal: rotate by pi about any axis orthogonal to a.
    Eigen::Vector3d ortho = std::abs(a.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    ortho = (ortho - ortho.dot(a) * a).normalized();
    return Eigen::AngleAxisd(kPi, ortho).toRotationMatrix();
  }
  return Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
}

Eigen::Matrix3d frame_from_pair(const Eigen::Vector3d& p1, const Eigen::Vector3d& p2) {
  const Eigen::Vector3d e1 = p1.normalized();
  const Eigen::Vector3d e2 = (p2 - p2.dot(e1) * e1).normalized();
  Eigen::Matrix3d f;
  f.col(0) = e1;
  f.col(1) = e2;
  f.col(2) = e1.cross(e2);
  return f;
}

}  // namespace

std::optional<Eigen::Matrix3d> align_constellations(const StarConstellation& ca, const StarConstellation& cb,
                                                    double tol) {
  if (ca.size() != cb.size()) return std::nullopt;
  if (ca.size() == 0) return Eigen::Matrix3d::Identity();
  const auto a = ca.unit_vectors();
  const auto b = cb.unit_vectors();

  // Most spread-out partner of a[0]; degenerate geometries fall through.
  std::size_t best = 0;
  double spread = -1.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double s = a[0].cross(a[k]).norm();
    if (s > spread) {
      spread = s;
      best = k;
    }
  }

  if (a.size() == 1 || spread < 1e-9) {
    // Coincident or collinear constellation: align the common axis, trying
    // both orientations.
    for (const auto& q : b) {
      for (const double sign : {1.0, -1.0}) {
        const Eigen::Matrix3d r = rotation_between(a[0], sign * q);
        if (multiset_match(a, b, r, tol)) return r;
      }
    }
    return std::nullopt;
  }

  const Eigen::Matrix3d fa = frame_from_pair(a[0], a[best]);
  const double dot_ref = a[0].dot(a[best]);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (i == k) continue;
      if (std::abs(b[i].dot(b[k]) - dot_ref) > 8.0 * tol + 1e-12) continue;
      if (b[i].cross(b[k]).norm() < 1e-9) continue;
      const Eigen::Matrix3d r = frame_from_pair(b[i], b[k]) * fa.transpose();
      if (multiset_match(a, b, r, tol)) return r;
    }
  }
  return std::nullopt;
}

IsoCoherence is_isocoherent(const Basis& basis, double tol) {
  const int n = basis.dim();
  std::vector<StarConstellation> constellations;
  std::vector<ConstellationFingerprint> prints;
  constellations.reserve(n);
  for (int i = 0; i < n; ++i) {
    constellations.push_back(stars_from_state(basis.column(i)));
    prints.push_back(fingerprint(constellations.back()));
  }
  IsoCoherence result;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (auto& cls : result.classes) {
      const int rep = cls.front();
      if (fingerprint_distance(prints[i], prints[rep]) > tol) continue;
      if (align_constellations(constellations[rep], constellations[i], tol).has_value()) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) result.classes.push_back({i});
  }
  result.iso_coherent = result.classes.size() == 1;
  return result;
}

}  // namespace qbasis
