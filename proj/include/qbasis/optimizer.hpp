#pragma once

#include <functional>
#include <optional>
#include <random>

#include "qbasis/types.hpp"

namespace qbasis {

/// Hermitian direction basis of u(N): the N projectors |i><i|, then for each
/// pair k < l (lexicographic) the symmetric |k><l| + |l><k| followed by the
/// antisymmetric i(|k><l| - |l><k|). N^2 directions in total.
class LieBasis {
 public:
  explicit LieBasis(int n);

  int n() const { return n_; }
  int size() const { return n_ * n_; }
  Eigen::MatrixXcd matrix(int r) const;

  /// H^r e_m = scalar * e_q; returns false when the product vanishes.
  bool action(int r, int m, Complex& scalar, int& q) const;

 private:
  int n_;
};

enum class Objective {
  kMaxB1,
  kMinB1,
  kMaxB1PlusB2,
  kLexB1ThenB2,
  kMaxMeanWehrl,
  kMinMeanWehrl,
};

const char* objective_name(Objective o);
std::optional<Objective> objective_from_name(const std::string& name);

struct SearchConfig {
  int n = 3;
  Objective objective = Objective::kMaxB1;
  double initial_step = 0.1;   // a0
  int inner_steps = 500;       // proposals per step size
  int halvings = 47;           // a -> a/2 after each block
  double min_step = 1e-15;
  std::uint64_t seed = 1;
  int max_stall = 0;           // 0 disables early stop on rejected streaks
  double lex_slack = 1e-9;     // tolerated B1 loss per accepted lexicographic step
  /// Optional replacement objective (maximized); overrides `objective`.
  std::function<double(const Eigen::MatrixXcd&)> custom;
};

enum class ExtremumClass { kLocalMax, kLocalMin, kSaddle, kInconclusive };

const char* extremum_class_name(ExtremumClass c);

struct ExtremumCertificate {
  double gradient_norm = 0.0;
  Eigen::VectorXd hessian_spectrum;  // ascending
  int gauge_null_count = 0;
  ExtremumClass classification = ExtremumClass::kInconclusive;
  double null_tol = 0.0;
  double grad_tol = 0.0;
};

struct SearchResult {
  Eigen::MatrixXcd basis;
  double objective_value = 0.0;          // scalar objective of `basis`
  double b1 = 0.0;                       // populated for B-type objectives
  double b2 = 0.0;                       // populated when order 2 exists
  std::vector<double> trace;             // accepted scalar objective values
  std::uint64_t seed = 0;
  long proposals = 0;
  long accepted = 0;
  double final_step = 0.0;
  std::optional<ExtremumCertificate> certificate;
};

/// Directional derivatives of B_t at U along the LieBasis directions,
/// d/de B_t(U exp(i e H^r)) at e = 0.
Eigen::VectorXd gradient_bt(const Basis& basis, int t);

/// Second directional derivatives, symmetrized. Entry (r,s) approximates
/// the s-then-r mixed derivative; the antisymmetric part vanishes at
/// critical points.
Eigen::MatrixXd hessian_bt(const Basis& basis, int t);

/// Gradient and Hessian of sum_t B_t over t_list.
Eigen::VectorXd gradient_bt_sum(const Basis& basis, const std::vector<int>& t_list);
Eigen::MatrixXd hessian_bt_sum(const Basis& basis, const std::vector<int>& t_list);

/// Classifies U as an extremum of sum_t B_t over t_list. Eigenvalues with
/// |lambda| < null_tol are treated as gauge directions (column phases and
/// rigid rotations leave B_t unchanged).
ExtremumCertificate certify_extremum(const Basis& basis, const std::vector<int>& t_list,
                                     double null_tol = 1e-6, double grad_tol = 1e-6);

/// Coordinates of a Hermitian matrix in the LieBasis: A = sum_r v_r H^r.
Eigen::VectorXd lie_coordinates(const Eigen::MatrixXcd& a);

/// Random walk over U(N): proposals U exp(i H a) with H drawn from the GUE,
/// accepted on strict improvement, step size halved after every block of
/// inner_steps proposals. Deterministic for a given seed.
SearchResult random_walk_search(const SearchConfig& config);

/// Best result over independently seeded restarts (seed, seed+1, ...).
SearchResult multi_start_search(const SearchConfig& config, int restarts);

}  // namespace qbasis
