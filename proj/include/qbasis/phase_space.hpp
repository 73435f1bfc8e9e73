#pragma once

#include "qbasis/types.hpp"

namespace qbasis {

/// Product quadrature on the sphere: Gauss-Legendre nodes in cos(theta)
/// crossed with a uniform periodic grid in phi, refined by simultaneous
/// node doubling until the integral changes by less than tol.
struct QuadratureSpec {
  int n_theta = 64;        // >= 16
  int n_phi = 128;         // >= 32
  double tol = 1e-9;
  int max_doublings = 6;
};

/// Q_psi(theta, phi) = |<psi|theta,phi>|^2 in [0, 1].
double husimi(const SpinState& state, double theta, double phi);

/// Wehrl entropy -(N/4pi) Int Q ln Q dOmega with 0 ln 0 := 0.
/// Throws std::runtime_error when the refinement does not converge.
double wehrl_entropy(const SpinState& state, const QuadratureSpec& quad = {});

/// (N/4pi) Int Q dOmega; equals 1 for normalized states and serves as the
/// quadrature self-check.
double husimi_norm_integral(const SpinState& state, const QuadratureSpec& quad = {});

/// Wehrl entropy on a fixed grid without refinement; the cheap variant used
/// as an optimization objective.
double wehrl_entropy_fixed(const SpinState& state, int n_theta, int n_phi);

struct HusimiExtremum {
  double q_max = 0.0;   // in (0, 1]
  double theta = 0.0;
  double phi = 0.0;
  double d_fs = 0.0;    // arccos(sqrt(q_max))
};

/// Global maximum of the Husimi function: coarse grid scan followed by
/// Newton refinement in the stereographic plane from the best cells.
HusimiExtremum husimi_max(const SpinState& state, int grid_theta = 90, int grid_phi = 180);

struct PhaseSpaceStats {
  double mean_wehrl = 0.0;
  double mean_qmax = 0.0;
  std::vector<double> wehrl;
  std::vector<double> qmax;
};

PhaseSpaceStats basis_phase_space_stats(const Basis& basis, const QuadratureSpec& quad = {});

/// Haar mean of the Wehrl entropy of a random pure state: sum_{k=2}^N 1/k.
double mean_wehrl_haar(int n);

}  // namespace qbasis
