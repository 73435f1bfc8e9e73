#include "qbasis/measures.hpp"

#include <cmath>

#include "qbasis/stellar.hpp"

namespace qbasis {

PurityContext::PurityContext(int two_j, int t) : two_j_(two_j), t_(t) {
  if (t < 1 || t > two_j) throw std::domain_error("PurityContext: t must satisfy 1 <= t <= 2j");
  const int kmax = two_j - t;
  table_.resize(static_cast<std::size_t>(kmax + 1) * (t + 1) * (t + 1));
  const double norm = binomial(two_j, t);
  for (int k = 0; k <= kmax; ++k) {
    for (int k1 = 0; k1 <= t; ++k1) {
      const double f1 = binomial(k + k1, k) * binomial(two_j - k - k1, t - k1);
      for (int k2 = 0; k2 <= t; ++k2) {
        const double f2 = binomial(k + k2, k) * binomial(two_j - k - k2, t - k2);
        table_[(static_cast<std::size_t>(k) * (t + 1) + k1) * (t + 1) + k2] = std::sqrt(f1 * f2) / norm;
      }
    }
  }
}

double gamma_coefficient(const PurityContext& ctx, int k, int k1, int k2) {
  if (k < 0 || k > ctx.two_j() - ctx.t() || k1 < 0 || k1 > ctx.t() || k2 < 0 || k2 > ctx.t()) {
    throw std::out_of_range("gamma_coefficient: index outside the context ranges");
  }
  return ctx.gamma(k, k1, k2);
}

namespace {

double reduced_purity_ctx(const Eigen::VectorXcd& z, const PurityContext& ctx) {
  const int two_j = ctx.two_j();
  const int t = ctx.t();
  double purity = 0.0;
  for (int k1 = 0; k1 <= t; ++k1) {
    for (int k2 = 0; k2 <= t; ++k2) {
      Complex s = 0.0;
      for (int k = 0; k <= two_j - t; ++k) {
        // Amplitude indices 2j-k-k1 and 2j-k-k2 both stay in [0, 2j].
        s += std::conj(z(two_j - k - k1)) * z(two_j - k - k2) * ctx.gamma(k, k1, k2);
      }
      purity += std::norm(s);
    }
  }
  return purity;
}

}  // namespace

double reduced_purity(const SpinState& state, int t) {
  const PurityContext ctx(state.two_j(), t);
  return reduced_purity_ctx(state.amplitudes(), ctx);
}

double reduced_purity_oracle(const SpinState& state, int t, int max_qubits) {
  const int n = state.two_j();
  if (t < 1 || t > n) throw std::domain_error("reduced_purity_oracle: t must satisfy 1 <= t <= 2j");
  const SymmetricState sym = dicke_embed(state, max_qubits);
  // Rows index the traced-out qubits, columns the kept ones.
  const Eigen::Index kept = Eigen::Index{1} << t;
  const Eigen::Index traced = Eigen::Index{1} << (n - t);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      sym.amplitudes.data(), traced, kept);
  const Eigen::MatrixXcd rho = a.adjoint() * a;
  return rho.squaredNorm();
}

double anticoherence(const SpinState& state, int t) {
  if (t < 1 || t > state.two_j()) throw std::domain_error("anticoherence: t must satisfy 1 <= t <= 2j");
  const double r = reduced_purity(state, t);
  return (t + 1.0) / t * (1.0 - r);
}

double basis_quantumness_raw(const Eigen::MatrixXcd& u, const PurityContext& ctx) {
  const int n = static_cast<int>(u.cols());
  const double t = ctx.t();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd col = u.col(i).normalized();
    sum += (t + 1.0) / t * (1.0 - reduced_purity_ctx(col, ctx));
  }
  return sum / n;
}

double basis_quantumness(const Basis& basis, int t, double residual_tol) {
  if (basis.residual() > residual_tol) {
    throw UnitarityError("basis_quantumness: residual exceeds tolerance", basis.residual());
  }
  const PurityContext ctx(basis.two_j(), t);
  const int n = basis.dim();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd col = basis.matrix().col(i).normalized();
    sum += (t + 1.0) / t * (1.0 - reduced_purity_ctx(col, ctx));
  }
  return sum / n;
}

QuantumnessReport measure_basis(const Basis& basis, const std::vector<int>& t_list, double residual_tol) {
  if (basis.residual() > residual_tol) {
    throw UnitarityError("measure_basis: residual exceeds tolerance", basis.residual());
  }
  QuantumnessReport report;
  report.orthonormality_residual = basis.residual();
  const int n = basis.dim();
  for (int t : t_list) {
    const PurityContext ctx(basis.two_j(), t);
    std::vector<double> a(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXcd col = basis.matrix().col(i).normalized();
      a[i] = (t + 1.0) / t * (1.0 - reduced_purity_ctx(col, ctx));
      sum += a[i];
    }
    report.per_vector_a[t] = std::move(a);
    report.b[t] = sum / n;
  }
  return report;
}

double haar_average_exact(int n, int t) {
  if (t < 1 || t > n - 1) throw std::domain_error("haar_average_exact: t must satisfy 1 <= t <= N-1");
  return static_cast<double>(n - t - 1) / static_cast<double>(n - t);
}

Eigen::MatrixXcd sample_cue(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) g(i, k) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so that Q follows the Haar measure.
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0);
  }
  return q;
}

Eigen::MatrixXcd sample_gue(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) g(i, k) = Complex(gauss(rng), gauss(rng));
  }
  return 0.5 * (g + g.adjoint());
}

CueEstimate cue_average_estimate(int n, int t, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("cue_average_estimate: samples must be >= 1");
  std::mt19937_64 rng(seed);
  const PurityContext ctx(n - 1, t);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXcd u = sample_cue(n, rng);
    double b = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXcd col = u.col(i).normalized();
      b += (t + 1.0) / t * (1.0 - reduced_purity_ctx(col, ctx));
    }
    b /= n;
    sum += b;
    sum_sq += b * b;
  }
  CueEstimate est;
  est.samples = samples;
  est.mean = sum / samples;
  const double var = std::max(0.0, sum_sq / samples - est.mean * est.mean);
  est.stderr_mean = std::sqrt(var / samples);
  return est;
}

}  // namespace qbasis
