#include <doctest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "qbasis/catalog.hpp"
#include "qbasis/measures.hpp"
#include "qbasis/optimizer.hpp"
#include "qbasis/rotations.hpp"
#include "qbasis/stellar.hpp"

using namespace qbasis;

namespace {

std::mt19937_64 g_rng(140914);  // NOLINT

double bt_at(const Eigen::MatrixXcd& u, int t) {
  const PurityContext ctx(static_cast<int>(u.rows()) - 1, t);
  return basis_quantumness_raw(u, ctx);
}

Eigen::VectorXd fd_gradient(const Eigen::MatrixXcd& u, int t, double eps) {
  const int n = static_cast<int>(u.rows());
  const LieBasis lie(n);
  Eigen::VectorXd g(n * n);
  for (int r = 0; r < n * n; ++r) {
    const Eigen::MatrixXcd h = lie.matrix(r);
    const Eigen::MatrixXcd up = u * (Complex(0, eps) * h).exp();
    const Eigen::MatrixXcd um = u * (Complex(0, -eps) * h).exp();
    g(r) = (bt_at(up, t) - bt_at(um, t)) / (2.0 * eps);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const Basis& basis, int t, double eps) {
  const int n = basis.dim();
  const LieBasis lie(n);
  Eigen::MatrixXd h(n * n, n * n);
  for (int s = 0; s < n * n; ++s) {
    const Eigen::MatrixXcd hs = lie.matrix(s);
    const Basis up(basis.two_j(), basis.matrix() * (Complex(0, eps) * hs).exp(), 1e-6);
    const Basis um(basis.two_j(), basis.matrix() * (Complex(0, -eps) * hs).exp(), 1e-6);
    h.col(s) = (gradient_bt(up, t) - gradient_bt(um, t)) / (2.0 * eps);
  }
  return 0.5 * (h + h.transpose());
}

}  // namespace

TEST_CASE("lie basis structure") {
  const LieBasis lie(4);
  CHECK(lie.size() == 16);
  // Hermitian, and action matches the explicit matrices.
  for (int r = 0; r < lie.size(); ++r) {
    const Eigen::MatrixXcd h = lie.matrix(r);
    CHECK((h - h.adjoint()).norm() == 0.0);
    for (int m = 0; m < 4; ++m) {
      Complex s;
      int q;
      const Eigen::VectorXcd col = h.col(m);
      if (lie.action(r, m, s, q)) {
        Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
        expected(q) = s;
        CHECK((col - expected).norm() < 1e-15);
      } else {
        CHECK(col.norm() == 0.0);
      }
    }
  }
  // The coordinates invert the span.
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) a(i, k) = Complex(gauss(g_rng), gauss(g_rng));
  a = 0.5 * (a + a.adjoint()).eval();
  const Eigen::VectorXd v = lie_coordinates(a);
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(4, 4);
  for (int r = 0; r < 16; ++r) rebuilt += v(r) * lie.matrix(r);
  CHECK((rebuilt - a).norm() < 1e-13);
}

TEST_CASE("analytic gradient matches finite differences") {
  for (int n : {3, 4, 6}) {
    for (int t : {1, 2}) {
      for (int rep = 0; rep < 4; ++rep) {
        const Eigen::MatrixXcd u = sample_cue(n, g_rng);
        const Eigen::VectorXd g = gradient_bt(Basis(n - 1, u), t);
        const Eigen::VectorXd g_fd = fd_gradient(u, t, 1e-5);
        CHECK((g - g_fd).norm() / g_fd.norm() < 1e-6);
        // Column-phase directions are exact zeros of the gradient.
        for (int i = 0; i < n; ++i) CHECK(std::abs(g(i)) < 1e-14);
      }
    }
  }
}

TEST_CASE("analytic hessian matches finite differences") {
  for (int n : {3, 4}) {
    for (int t : {1, 2}) {
      const Eigen::MatrixXcd u = sample_cue(n, g_rng);
      const Basis basis(n - 1, u);
      const Eigen::MatrixXd h = hessian_bt(basis, t);
      const Eigen::MatrixXd h_fd = fd_hessian(basis, t, 1e-5);
      CHECK((h - h_fd).norm() / h_fd.norm() < 1e-4);
    }
  }
}

TEST_CASE("gradient vanishes at catalog extrema") {
  CHECK(gradient_bt(catalog_get("u3_quantum").basis, 1).norm() < 1e-8);
  CHECK(gradient_bt(catalog_get("u4_quantum").basis, 1).norm() < 1e-8);
  CHECK(gradient_bt(catalog_get("u5_quantum").basis, 1).norm() < 1e-8);
  CHECK(gradient_bt(catalog_get("u5_quantum").basis, 2).norm() < 1e-8);
}

TEST_CASE("certification of extrema") {
  const ExtremumCertificate max3 = certify_extremum(catalog_get("u3_quantum").basis, {1});
  CHECK(max3.classification == ExtremumClass::kLocalMax);
  CHECK(max3.gauge_null_count >= 4);

  const ExtremumCertificate min6 = certify_extremum(catalog_get("u6_classical").basis, {1});
  CHECK(min6.classification == ExtremumClass::kLocalMin);
  CHECK(basis_quantumness(catalog_get("u6_classical").basis, 1) ==
        doctest::Approx(8.0 * (137.0 - 34.0 * std::sqrt(10.0)) / 2025.0).epsilon(1e-12));

  // A generic unitary is no extremum.
  const ExtremumCertificate generic = certify_extremum(Basis(3, sample_cue(4, g_rng)), {1});
  CHECK(generic.classification == ExtremumClass::kInconclusive);
  CHECK(generic.gradient_norm > 1e-3);
}

TEST_CASE("hessian annihilates gauge directions at extrema") {
  for (const char* name : {"u3_quantum", "u4_quantum"}) {
    const Basis& basis = catalog_get(name).basis;
    const Eigen::MatrixXd h = hessian_bt(basis, 1);
    const auto ops = angular_momentum_matrices(basis.two_j());
    const Eigen::MatrixXcd& u = basis.matrix();
    std::vector<Eigen::MatrixXcd> gauge{Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()),
                                        u.adjoint() * ops.jx * u, u.adjoint() * ops.jy * u,
                                        u.adjoint() * ops.jz * u};
    for (const auto& a : gauge) {
      const Eigen::VectorXd v = lie_coordinates(a).normalized();
      CHECK((h * v).norm() < 1e-6);
    }
  }
}

TEST_CASE("random walk search finds the dimension-3 extrema") {
  SearchConfig config;
  config.n = 3;
  config.objective = Objective::kMaxB1;
  config.inner_steps = 200;
  config.halvings = 30;
  config.seed = 42;
  const SearchResult result = random_walk_search(config);
  CHECK(result.b1 >= 1.0 - 1e-6);

  // The accepted trace is strictly increasing and the walk stays unitary.
  for (std::size_t i = 1; i < result.trace.size(); ++i) CHECK(result.trace[i] > result.trace[i - 1]);
  CHECK(orthonormality_residual(result.basis) < 1e-10);

  // The final constellation is the regular octahedron.
  const Basis best(2, result.basis, 1e-8);
  CHECK(fingerprint_distance(fingerprint(basis_constellation(best)), fingerprint(octahedron_vertices())) <
        1e-4);

  // Determinism: identical config and seed reproduce the result bit for bit.
  const SearchResult again = random_walk_search(config);
  CHECK(again.objective_value == result.objective_value);
  CHECK((again.basis - result.basis).norm() == 0.0);
}

TEST_CASE("random walk search minimizes in dimension 4") {
  SearchConfig config;
  config.n = 4;
  config.objective = Objective::kMinB1;
  config.inner_steps = 250;
  config.halvings = 32;
  config.seed = 7;
  const SearchResult result = multi_start_search(config, 2);
  CHECK(result.b1 <= 1.0 / 9.0 + 1e-6);
  // Minimization trace decreases.
  for (std::size_t i = 1; i < result.trace.size(); ++i) CHECK(result.trace[i] < result.trace[i - 1]);
}

TEST_CASE("objective names round trip") {
  for (Objective o : {Objective::kMaxB1, Objective::kMinB1, Objective::kMaxB1PlusB2,
                      Objective::kLexB1ThenB2, Objective::kMaxMeanWehrl, Objective::kMinMeanWehrl}) {
    const auto parsed = objective_from_name(objective_name(o));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == o);
  }
  CHECK(!objective_from_name("maximize-hope").has_value());
}
