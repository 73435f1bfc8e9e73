#pragma once

#include <map>
#include <random>

#include "qbasis/types.hpp"

namespace qbasis {

/// Precomputed Gamma coefficients entering the closed form of the reduced
/// purity of order t for spin j. Valid index ranges: k in [0, 2j-t],
/// k1, k2 in [0, t]. The table is symmetric in (k1, k2) and nonnegative.
class PurityContext {
 public:
  PurityContext(int two_j, int t);

  int two_j() const { return two_j_; }
  int t() const { return t_; }
  double gamma(int k, int k1, int k2) const {
    return table_[(static_cast<std::size_t>(k) * (t_ + 1) + k1) * (t_ + 1) + k2];
  }

 private:
  int two_j_;
  int t_;
  std::vector<double> table_;
};

/// Gamma_k^{k1 k2} = sqrt(C(k+k1,k) C(2j-k-k1,t-k1) C(k+k2,k) C(2j-k-k2,t-k2)) / C(2j,t),
/// with out-of-range binomials equal to zero.
double gamma_coefficient(const PurityContext& ctx, int k, int k1, int k2);

/// Purity of the t-qubit reduction of the symmetric embedding of `state`,
/// evaluated from the amplitudes through the Gamma table. Lies in [1/(t+1), 1].
double reduced_purity(const SpinState& state, int t);

/// Same quantity by explicit embedding and partial trace; exponential in 2j
/// and therefore capped (default 12 qubits). Serves as the independent check
/// of reduced_purity.
double reduced_purity_oracle(const SpinState& state, int t, int max_qubits = 12);

/// Anticoherence measure A_t = ((t+1)/t) (1 - R_t), in [0, 1].
double anticoherence(const SpinState& state, int t);

/// Mean of A_t over the columns. Throws UnitarityError when the stored
/// residual exceeds residual_tol.
double basis_quantumness(const Basis& basis, int t, double residual_tol = 1e-8);

/// Same mean without any unitarity validation; columns are normalized
/// individually. Used in optimization loops where the matrix is kept
/// unitary by construction.
double basis_quantumness_raw(const Eigen::MatrixXcd& u, const PurityContext& ctx);

/// Per-vector and averaged quantumness of a basis for a set of orders.
struct QuantumnessReport {
  std::map<int, std::vector<double>> per_vector_a;
  std::map<int, double> b;
  double orthonormality_residual = 0.0;
};

QuantumnessReport measure_basis(const Basis& basis, const std::vector<int>& t_list,
                                double residual_tol = 1e-8);

/// Haar average of B_t over U(N): (N-t-1)/(N-t), for 1 <= t <= N-1.
double haar_average_exact(int n, int t);

struct CueEstimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  int samples = 0;
};

/// Monte Carlo mean of B_t over unitaries drawn from the circular unitary
/// ensemble; deterministic for a given seed, summed in sample order.
CueEstimate cue_average_estimate(int n, int t, int samples, std::uint64_t seed);

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// R-diagonal phase correction.
Eigen::MatrixXcd sample_cue(int n, std::mt19937_64& rng);

/// Gaussian unitary ensemble draw H = (G + G^dag)/2 with standard complex
/// Gaussian entries; Hermitian by construction. Off-diagonal real and
/// imaginary parts have variance 1/2, diagonal entries variance 1.
Eigen::MatrixXcd sample_gue(int n, std::mt19937_64& rng);

}  // namespace qbasis
