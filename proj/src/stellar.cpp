#include "qbasis/stellar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qbasis {
namespace {

// Value of sum_k c_k z^(d-k) together with the derivative.
std::pair<Complex, Complex> horner2(const Eigen::VectorXcd& c, Complex z) {
  Complex p = c(0), dp = 0.0;
  for (int k = 1; k < c.size(); ++k) {
    dp = dp * z + p;
    p = p * z + c(k);
  }
  return {p, dp};
}

Complex horner(const Eigen::VectorXcd& c, Complex z) {
  Complex p = c(0);
  for (int k = 1; k < c.size(); ++k) p = p * z + c(k);
  return p;
}

// Bound on the evaluation magnitude, used for relative residual tests.
double eval_scale(const Eigen::VectorXcd& c, Complex z) {
  double s = std::abs(c(0));
  const double az = std::abs(z);
  for (int k = 1; k < c.size(); ++k) s = s * az + std::abs(c(k));
  return s;
}

// Magnitude reached at z when every coefficient is perturbed by one unit of
// the dominant coefficient; the residual floor for roundoff-level agreement.
double perturbation_scale(int degree, Complex z) {
  const double az = std::abs(z);
  double s = 1.0;
  for (int k = 1; k <= degree; ++k) s = s * az + 1.0;
  return s;
}

// Coefficients of the m-th derivative, highest power first.
Eigen::VectorXcd derivative_coeffs(const Eigen::VectorXcd& c, int order) {
  Eigen::VectorXcd d = c;
  for (int m = 0; m < order; ++m) {
    const int deg = static_cast<int>(d.size()) - 1;
    if (deg == 0) return Eigen::VectorXcd::Zero(1);
    Eigen::VectorXcd nd(deg);
    for (int k = 0; k < deg; ++k) nd(k) = d(k) * static_cast<double>(deg - k);
    d.swap(nd);
  }
  return d;
}

// Simultaneous Aberth-Ehrlich iteration; returns false when it stalls.
// A point counts as converged only when its residual reaches the
// evaluation-roundoff floor; step size alone is no criterion (colliding
// iterates produce vanishing corrections away from any root).
bool aberth(const Eigen::VectorXcd& c, std::vector<Complex>& roots) {
  const int d = static_cast<int>(c.size()) - 1;
  roots.resize(d);
  const double r0 = std::pow(std::abs(c(d) / c(0)), 1.0 / d);
  for (int i = 0; i < d; ++i) {
    // Slight radius stagger breaks the symmetric stagnation configurations.
    const double ang = kTwoPi * i / d + 0.37;
    const double radius = (r0 > 0 ? r0 : 1.0) * (1.0 + 0.05 * i / std::max(1, d));
    roots[i] = radius * Complex(std::cos(ang), std::sin(ang));
  }
  const auto at_floor = [&](Complex p, Complex z) {
    return std::abs(p) <= 1e-13 * std::max(eval_scale(c, z) * 1e-2, perturbation_scale(d, z));
  };
  for (int iter = 0; iter < 300; ++iter) {
    bool all_done = true;
    for (int i = 0; i < d; ++i) {
      const auto [p, dp] = horner2(c, roots[i]);
      if (at_floor(p, roots[i])) continue;
      all_done = false;
      const Complex w = (dp != Complex(0.0)) ? p / dp : p;
      Complex s = 0.0;
      for (int k = 0; k < d; ++k) {
        if (k != i) s += 1.0 / (roots[i] - roots[k]);
      }
      const Complex denom = 1.0 - w * s;
      Complex delta = (std::abs(denom) > 1e-300) ? w / denom : w;
      if (std::abs(delta) < 1e-15 * (1.0 + std::abs(roots[i]))) {
        // Stalled without converging (collision with another iterate);
        // kick the point off the degenerate configuration.
        delta = Complex(0.013, 0.007) * (1.0 + std::abs(roots[i]));
      }
      roots[i] -= delta;
    }
    if (all_done) return true;
  }
  return false;
}

std::vector<Complex> companion_roots(const Eigen::VectorXcd& c) {
  const int d = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c(d - i) / c(0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(d);
  for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

void newton_polish(const Eigen::VectorXcd& c, Complex& z, int steps) {
  for (int s = 0; s < steps; ++s) {
    const auto [p, dp] = horner2(c, z);
    if (std::abs(dp) < 1e-300) return;
    const Complex delta = p / dp;
    if (!std::isfinite(std::abs(delta))) return;
    z -= delta;
    if (std::abs(delta) < 1e-16 * (1.0 + std::abs(z))) return;
  }
}

double chordal(Complex a, Complex b) {
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

constexpr double kClusterLinkRadius = 0.15;  // chordal metric

// An m-fold root of p is a root of p^(i) for every i < m. A candidate center
// is accepted as an m-fold root only when all those derivatives vanish at
// the coefficient-roundoff floor, which genuinely distinct nearby roots
// cannot satisfy. c is normalized to unit dominant coefficient.
bool validate_multiplicity(const Eigen::VectorXcd& c, Complex z, int m) {
  const int d = static_cast<int>(c.size()) - 1;
  double falling = 1.0;
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXcd di = derivative_coeffs(c, i);
    const double floor = 64.0 * 1e-16 * falling * perturbation_scale(d - i, z);
    if (std::abs(horner(di, z)) > floor) return false;
    falling *= static_cast<double>(d - i);
  }
  return true;
}

void resolve_cluster(const Eigen::VectorXcd& c, std::vector<Complex> members, std::vector<Complex>& out);

void link_and_resolve(const Eigen::VectorXcd& c, const std::vector<Complex>& roots,
                      std::vector<Complex>& out) {
  std::vector<char> used(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<Complex> cluster{roots[i]};
    used[i] = 1;
    for (std::size_t a = 0; a < cluster.size(); ++a) {
      for (std::size_t k = 0; k < roots.size(); ++k) {
        if (!used[k] && chordal(cluster[a], roots[k]) < kClusterLinkRadius) {
          used[k] = 1;
          cluster.push_back(roots[k]);
        }
      }
    }
    resolve_cluster(c, std::move(cluster), out);
  }
}

// Splits a linked cluster into validated multiple roots plus leftovers.
// Multiplicities are tried from the cluster size downwards; the surviving
// members are re-linked at the same radius and resolved recursively.
void resolve_cluster(const Eigen::VectorXcd& c, std::vector<Complex> members, std::vector<Complex>& out) {
  const int n_c = static_cast<int>(members.size());
  if (n_c == 1) {
    out.push_back(members[0]);
    return;
  }
  for (int m = n_c; m >= 2; --m) {
    Complex center = 0.0;
    for (const auto& z : members) center += z;
    center /= static_cast<double>(n_c);
    Complex z = center;
    newton_polish(derivative_coeffs(c, m - 1), z, 60);
    if (chordal(z, center) > 3.0 * kClusterLinkRadius) continue;
    // Recenter once on the m nearest members.
    std::vector<Complex> sorted = members;
    std::sort(sorted.begin(), sorted.end(),
              [&](Complex a, Complex b) { return std::abs(a - z) < std::abs(b - z); });
    Complex center_m = 0.0;
    for (int k = 0; k < m; ++k) center_m += sorted[k];
    Complex z2 = center_m / static_cast<double>(m);
    newton_polish(derivative_coeffs(c, m - 1), z2, 60);
    for (const Complex candidate : {z2, z}) {
      if (!validate_multiplicity(c, candidate, m)) continue;
      std::sort(sorted.begin(), sorted.end(), [&](Complex a, Complex b) {
        return std::abs(a - candidate) < std::abs(b - candidate);
      });
      for (int k = 0; k < m; ++k) out.push_back(candidate);
      const std::vector<Complex> rest(sorted.begin() + m, sorted.end());
      if (!rest.empty()) link_and_resolve(c, rest, out);
      return;
    }
  }
  for (const auto& z : members) out.push_back(z);
}

std::vector<Complex> merge_multiple_roots(const Eigen::VectorXcd& c, std::vector<Complex> roots) {
  std::vector<Complex> out;
  out.reserve(roots.size());
  link_and_resolve(c, roots, out);
  return out;
}

}  // namespace

ComplexPolynomial majorana_polynomial(const SpinState& state) {
  const int n = state.two_j();
  ComplexPolynomial poly;
  poly.coefficients.resize(n + 1);
  double sign = 1.0;
  for (int k = 0; k <= n; ++k) {
    poly.coefficients(k) = sign * state.amplitude(k) * sqrt_binomial(n, k);
    sign = -sign;
  }
  return poly;
}

RootSet polynomial_roots(const ComplexPolynomial& poly) {
  const Eigen::VectorXcd& c = poly.coefficients;
  const int n = poly.nominal_degree();
  const double scale = c.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw std::invalid_argument("polynomial_roots: zero polynomial");

  RootSet result;
  int lead = 0;
  while (lead <= n && std::abs(c(lead)) < 1e-13 * scale) ++lead;
  result.at_infinity = lead;

  int tail = n;
  while (tail > lead && std::abs(c(tail)) < 1e-13 * scale) --tail;
  const int zeros_at_origin = n - tail;
  for (int k = 0; k < zeros_at_origin; ++k) result.finite.push_back(0.0);

  const int d = tail - lead;
  if (d > 0) {
    const Eigen::VectorXcd core = c.segment(lead, d + 1) / scale;
    std::vector<Complex> roots;
    if (!aberth(core, roots)) roots = companion_roots(core);
    for (auto& z : roots) newton_polish(core, z, 3);
    roots = merge_multiple_roots(core, std::move(roots));
    for (const auto& z : roots) {
      // Residual relative to the coefficient scale; core is normalized so the
      // dominant coefficient has unit magnitude.
      if (std::abs(horner(core, z)) > 1e-9 * perturbation_scale(d, z)) {
        if (std::getenv("QBASIS_ROOT_DEBUG")) {
          std::fprintf(stderr, "root %.15f %+.15fi |p| = %.3e allowed = %.3e (d = %d)\n", z.real(),
                       z.imag(), std::abs(horner(core, z)), 1e-9 * perturbation_scale(d, z), d);
        }
        throw std::runtime_error("polynomial_roots: residual check failed");
      }
      result.finite.push_back(z);
    }
  }
  return result;
}

StarConstellation stars_from_state(const SpinState& state) {
  const RootSet roots = polynomial_roots(majorana_polynomial(state));
  std::vector<Star> stars;
  stars.reserve(roots.total());
  for (const auto& z : roots.finite) {
    Star s;
    s.theta = 2.0 * std::atan(std::abs(z));
    s.phi = (z == Complex(0.0)) ? 0.0 : wrap_angle(std::arg(z));
    stars.push_back(s);
  }
  for (int k = 0; k < roots.at_infinity; ++k) stars.push_back({kPi, 0.0});
  return StarConstellation(std::move(stars));
}

SpinState state_from_stars(const StarConstellation& constellation) {
  const int n = constellation.size();
  if (n == 0) throw std::invalid_argument("state_from_stars: empty constellation");

  // Stars indistinguishable from the south pole become roots at infinity;
  // the remaining error on the state is quadratic in the angular cutoff.
  int at_infinity = 0;
  std::vector<Complex> roots;
  for (const auto& s : constellation.stars()) {
    if (s.theta > kPi - 1e-11) {
      ++at_infinity;
    } else {
      roots.push_back(std::tan(0.5 * s.theta) * Complex(std::cos(s.phi), std::sin(s.phi)));
    }
  }

  const int d = n - at_infinity;
  Eigen::VectorXcd monic = Eigen::VectorXcd::Zero(d + 1);
  monic(0) = 1.0;
  for (int k = 0; k < d; ++k) {
    for (int i = k + 1; i >= 1; --i) monic(i) -= roots[k] * monic(i - 1);
  }

  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n + 1);
  double sign = (at_infinity % 2 == 0) ? 1.0 : -1.0;
  for (int i = 0; i <= d; ++i) {
    const int k = at_infinity + i;
    z(k) = sign * monic(i) / sqrt_binomial(n, k);
    sign = -sign;
  }
  return SpinState(n, std::move(z));
}

SpinState coherent_state(int two_j, double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = Complex(std::cos(phi), std::sin(phi));
  Eigen::VectorXcd z(two_j + 1);
  Complex phase = 1.0;
  for (int k = 0; k <= two_j; ++k) {
    z(k) = sqrt_binomial(two_j, k) * std::pow(c, two_j - k) * std::pow(s, k) * phase;
    phase *= e;
  }
  return SpinState(two_j, std::move(z));
}

SymmetricState dicke_embed(const SpinState& state, int max_qubits) {
  const int n = state.two_j();
  if (n > max_qubits) {
    throw std::domain_error("dicke_embed: " + std::to_string(n) + " qubits exceeds cap of " +
                            std::to_string(max_qubits));
  }
  SymmetricState sym;
  sym.num_qubits = n;
  sym.amplitudes.resize(std::size_t{1} << n);
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    const int k = std::popcount(b);
    sym.amplitudes(b) = state.amplitude(k) / sqrt_binomial(n, k);
  }
  return sym;
}

SpinState spin_state_from_symmetric(const SymmetricState& sym, double symmetry_tol) {
  const int n = sym.num_qubits;
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n + 1);
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    z(std::popcount(b)) += sym.amplitudes(b);
  }
  for (int k = 0; k <= n; ++k) z(k) /= sqrt_binomial(n, k);
  // Check the input really lives in the symmetric subspace.
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    const int k = std::popcount(b);
    if (std::abs(sym.amplitudes(b) - z(k) / sqrt_binomial(n, k)) > symmetry_tol) {
      throw std::invalid_argument("spin_state_from_symmetric: state is not permutation symmetric");
    }
  }
  return SpinState(n, std::move(z));
}

Basis parametrize_basis_h3(double theta1, double theta2, double phi) {
  if (theta1 < 1e-9 || theta1 > kPi - 1e-9) {
    throw std::domain_error("parametrize_basis_h3: Theta1 at a pole degenerates the family");
  }
  const double t1 = std::tan(0.5 * theta1);
  const double cot1_sq = 1.0 / (t1 * t1);
  const double tan2 = std::tan(0.5 * theta2);
  const double cot2 = 1.0 / tan2;
  const Complex em = Complex(std::cos(phi), -std::sin(phi));
  const Complex ep = std::conj(em);
  const Complex upsilon = (em * cot2 * cot1_sq + ep * tan2) / std::sqrt(2.0);
  if (!(std::abs(upsilon) > 1e-12) || !std::isfinite(std::abs(upsilon))) {
    throw std::domain_error("parametrize_basis_h3: degenerate parameters (vanishing Upsilon)");
  }

  Eigen::MatrixXcd u(3, 3);
  u.col(0) << 1.0, 0.0, -t1 * t1;
  u.col(1) << 1.0, upsilon, cot1_sq;
  u.col(2) << 1.0, -(1.0 + cot1_sq * cot1_sq) / std::conj(upsilon), cot1_sq;
  for (int i = 0; i < 3; ++i) u.col(i).normalize();
  return Basis(2, std::move(u));
}

StarConstellation basis_constellation(const Basis& basis) {
  std::vector<Star> all;
  for (int i = 0; i < basis.dim(); ++i) {
    const auto stars = stars_from_state(basis.column(i)).stars();
    all.insert(all.end(), stars.begin(), stars.end());
  }
  return StarConstellation(std::move(all));
}

}  // namespace qbasis
