#pragma once

#include "qbasis/types.hpp"

namespace qbasis {

/// Roots of a polynomial on the extended complex plane, with multiplicity.
struct RootSet {
  std::vector<Complex> finite;
  int at_infinity = 0;
  int total() const { return static_cast<int>(finite.size()) + at_infinity; }
};

/// Coefficients c_k = (-1)^k Z_k sqrt(C(2j,k)) of w(z) = sum_k c_k z^(2j-k).
ComplexPolynomial majorana_polynomial(const SpinState& state);

/// All nominal_degree roots, counting multiplicity. Vanishing leading
/// coefficients (relative threshold 1e-13) are reported as roots at
/// infinity. Throws std::invalid_argument on the zero polynomial.
RootSet polynomial_roots(const ComplexPolynomial& poly);

/// Stereographic image of the Majorana roots: theta = 2*atan|z|, phi = arg z.
StarConstellation stars_from_state(const SpinState& state);

/// Inverse of stars_from_state up to global phase, via elementary symmetric
/// polynomials of the finite roots; stars at theta = pi reduce the degree.
SpinState state_from_stars(const StarConstellation& constellation);

/// State whose 2j stars coincide at (theta, phi). Amplitudes follow the
/// symmetrized product of qubit states cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>:
/// Z_k = sqrt(C(2j,k)) cos^{2j-k}(theta/2) (e^{i phi} sin(theta/2))^k.
SpinState coherent_state(int two_j, double theta, double phi);

/// Embeds |j,m> -> |D_{2j, j-m}> linearly into the 2j-qubit space.
/// Throws std::domain_error when 2j exceeds max_qubits (cost is 2^{2j}).
SymmetricState dicke_embed(const SpinState& state, int max_qubits = 12);

/// Inverse of dicke_embed on symmetric inputs.
SpinState spin_state_from_symmetric(const SymmetricState& sym, double symmetry_tol = 1e-12);

/// Three-parameter family of orthonormal bases for two_j = 2 (N = 3).
/// Theta1, Theta2 in (0, pi), Phi in [0, 2*pi). Throws std::domain_error for
/// degenerate members (Theta1 at the poles or vanishing off-diagonal factor).
Basis parametrize_basis_h3(double theta1, double theta2, double phi);

/// Constellation of all columns of a basis merged into one multiset.
StarConstellation basis_constellation(const Basis& basis);

}  // namespace qbasis
