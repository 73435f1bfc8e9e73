#include "qbasis/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "qbasis/measures.hpp"
#include "qbasis/phase_space.hpp"

namespace qbasis {

LieBasis::LieBasis(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("LieBasis: N must be >= 2");
}

namespace {

// Pair (k, l), k < l, for a lexicographic pair index.
void pair_of(int n, int idx, int& k, int& l) {
  k = 0;
  while (idx >= n - 1 - k) {
    idx -= n - 1 - k;
    ++k;
  }
  l = k + 1 + idx;
}

int pair_index(int n, int k, int l) {
  int idx = 0;
  for (int row = 0; row < k; ++row) idx += n - 1 - row;
  return idx + (l - k - 1);
}

}  // namespace

Eigen::MatrixXcd LieBasis::matrix(int r) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_, n_);
  if (r < n_) {
    h(r, r) = 1.0;
    return h;
  }
  int k, l;
  const int p = (r - n_) / 2;
  pair_of(n_, p, k, l);
  if ((r - n_) % 2 == 0) {
    h(k, l) = 1.0;
    h(l, k) = 1.0;
  } else {
    h(k, l) = Complex(0.0, 1.0);
    h(l, k) = Complex(0.0, -1.0);
  }
  return h;
}

bool LieBasis::action(int r, int m, Complex& scalar, int& q) const {
  if (r < n_) {
    if (m != r) return false;
    scalar = 1.0;
    q = m;
    return true;
  }
  int k, l;
  pair_of(n_, (r - n_) / 2, k, l);
  const bool minus = (r - n_) % 2 == 1;
  if (m == l) {
    q = k;
    scalar = minus ? Complex(0.0, 1.0) : Complex(1.0);
    return true;
  }
  if (m == k) {
    q = l;
    scalar = minus ? Complex(0.0, -1.0) : Complex(1.0);
    return true;
  }
  return false;
}

Eigen::VectorXd lie_coordinates(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd v(n * n);
  for (int i = 0; i < n; ++i) v(i) = a(i, i).real();
  int p = 0;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l, ++p) {
      v(n + 2 * p) = a(k, l).real();
      v(n + 2 * p + 1) = a(k, l).imag();
    }
  }
  return v;
}

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::kMaxB1: return "max-b1";
    case Objective::kMinB1: return "min-b1";
    case Objective::kMaxB1PlusB2: return "max-b1b2-sum";
    case Objective::kLexB1ThenB2: return "lex-b1-b2";
    case Objective::kMaxMeanWehrl: return "max-wehrl";
    case Objective::kMinMeanWehrl: return "min-wehrl";
  }
  return "?";
}

std::optional<Objective> objective_from_name(const std::string& name) {
  for (Objective o : {Objective::kMaxB1, Objective::kMinB1, Objective::kMaxB1PlusB2,
                      Objective::kLexB1ThenB2, Objective::kMaxMeanWehrl, Objective::kMinMeanWehrl}) {
    if (name == objective_name(o)) return o;
  }
  return std::nullopt;
}

const char* extremum_class_name(ExtremumClass c) {
  switch (c) {
    case ExtremumClass::kLocalMax: return "local_max";
    case ExtremumClass::kLocalMin: return "local_min";
    case ExtremumClass::kSaddle: return "saddle";
    case ExtremumClass::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Per-column derivative workspace. For column psi of U and purity context
// (t, Gamma), carries
//   cross[q](k1,k2) = sum_K Gamma_K^{k1 k2} conj(psi_{2j-K-k1}) (U e_q)_{2j-K-k2}
//   what = U^dag W U with W = sum conj(S_{k1 k2}) M_{k1 k2}, S = cross[p].
struct ColumnDerivatives {
  std::vector<Eigen::MatrixXcd> cross;  // one (t+1)x(t+1) table per column q
  Eigen::MatrixXcd what;                // N x N
};

ColumnDerivatives column_derivatives(const Eigen::MatrixXcd& u, int p, const PurityContext& ctx) {
  const int n = static_cast<int>(u.rows());
  const int two_j = ctx.two_j();
  const int t = ctx.t();
  const Eigen::VectorXcd psi = u.col(p);

  ColumnDerivatives cd;
  cd.cross.assign(n, Eigen::MatrixXcd::Zero(t + 1, t + 1));
  for (int q = 0; q < n; ++q) {
    for (int k1 = 0; k1 <= t; ++k1) {
      for (int k2 = 0; k2 <= t; ++k2) {
        Complex s = 0.0;
        for (int k = 0; k <= two_j - t; ++k) {
          s += ctx.gamma(k, k1, k2) * std::conj(psi(two_j - k - k1)) * u(two_j - k - k2, q);
        }
        cd.cross[q](k1, k2) = s;
      }
    }
  }
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::MatrixXcd& s_self = cd.cross[p];
  for (int k1 = 0; k1 <= t; ++k1) {
    for (int k2 = 0; k2 <= t; ++k2) {
      const Complex sbar = std::conj(s_self(k1, k2));
      for (int k = 0; k <= two_j - t; ++k) {
        w(two_j - k - k1, two_j - k - k2) += sbar * ctx.gamma(k, k1, k2);
      }
    }
  }
  cd.what = u.adjoint() * (w * u);
  return cd;
}

struct Touch {
  int r;       // direction index
  Complex s;   // H^r e_m = s e_q
  int q;
};

std::vector<std::vector<Touch>> touch_table(const LieBasis& lie) {
  const int n = lie.n();
  std::vector<std::vector<Touch>> touches(n);
  for (int m = 0; m < n; ++m) {
    touches[m].push_back({m, Complex(1.0), m});
    for (int k = 0; k < n; ++k) {
      if (k == m) continue;
      const int p = (k < m) ? pair_index(n, k, m) : pair_index(n, m, k);
      for (int variant = 0; variant < 2; ++variant) {
        const int r = n + 2 * p + variant;
        Complex s;
        int q;
        if (lie.action(r, m, s, q)) touches[m].push_back({r, s, q});
      }
    }
  }
  return touches;
}

}  // namespace

Eigen::VectorXd gradient_bt(const Basis& basis, int t) {
  const Eigen::MatrixXcd& u = basis.matrix();
  const int n = basis.dim();
  const PurityContext ctx(basis.two_j(), t);
  const LieBasis lie(n);
  const auto touches = touch_table(lie);
  const double c = (t + 1.0) / (n * static_cast<double>(t));

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n * n);
  for (int p = 0; p < n; ++p) {
    const ColumnDerivatives cd = column_derivatives(u, p, ctx);
    for (const Touch& tc : touches[p]) {
      // dR_p along H^r with H^r e_p = s e_q.
      const double dr = -2.0 * std::imag(tc.s * cd.what(p, tc.q) - std::conj(tc.s) * cd.what(tc.q, p));
      grad(tc.r) += -c * dr;
    }
  }
  return grad;
}

Eigen::MatrixXd hessian_bt(const Basis& basis, int t) {
  const Eigen::MatrixXcd& u = basis.matrix();
  const int n = basis.dim();
  const PurityContext ctx(basis.two_j(), t);
  const LieBasis lie(n);
  const auto touches = touch_table(lie);
  const double c = (t + 1.0) / (n * static_cast<double>(t));
  const int dim = n * n;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p < n; ++p) {
    const ColumnDerivatives cd = column_derivatives(u, p, ctx);
    const auto& local = touches[p];

    // First-derivative tables T_r(k1,k2) = i (S(psi, a_r) - S(a_r, psi)).
    std::vector<Eigen::MatrixXcd> tfirst(local.size());
    for (std::size_t a = 0; a < local.size(); ++a) {
      const Touch& ta = local[a];
      const Eigen::MatrixXcd& cr = cd.cross[ta.q];
      Eigen::MatrixXcd tt(ctx.t() + 1, ctx.t() + 1);
      for (int k1 = 0; k1 <= ctx.t(); ++k1) {
        for (int k2 = 0; k2 <= ctx.t(); ++k2) {
          tt(k1, k2) = Complex(0.0, 1.0) *
                       (ta.s * cr(k1, k2) - std::conj(ta.s) * std::conj(cr(k2, k1)));
        }
      }
      tfirst[a] = std::move(tt);
    }

    for (std::size_t a = 0; a < local.size(); ++a) {
      const Touch& tr = local[a];
      for (std::size_t b = 0; b < local.size(); ++b) {
        const Touch& ts = local[b];
        // 2 Re( b^dag W a + a^dag W b ) with a = s_r psi_{q_r}, b = s_s psi_{q_s}.
        double term = 2.0 * std::real(std::conj(ts.s) * tr.s * cd.what(ts.q, tr.q) +
                                      std::conj(tr.s) * ts.s * cd.what(tr.q, ts.q));
        term += 2.0 * std::real(tfirst[a].cwiseProduct(tfirst[b].conjugate()).sum());
        h(tr.r, ts.r) += -c * term;
      }
      // Mixed second-order transport: c-vector U H_s H_r e_p with H_r e_p
      // already resolved to (s_r, q_r); H_s must act on q_r.
      for (const Touch& ts : touches[tr.q]) {
        const Complex sc = tr.s * ts.s;
        const double cterm =
            2.0 * std::real(sc * cd.what(p, ts.q) + std::conj(sc) * cd.what(ts.q, p));
        h(tr.r, ts.r) += c * cterm;
      }
    }
  }
  return 0.5 * (h + h.transpose());
}

Eigen::VectorXd gradient_bt_sum(const Basis& basis, const std::vector<int>& t_list) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(basis.dim() * basis.dim());
  for (int t : t_list) g += gradient_bt(basis, t);
  return g;
}

Eigen::MatrixXd hessian_bt_sum(const Basis& basis, const std::vector<int>& t_list) {
  const int dim = basis.dim() * basis.dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int t : t_list) h += hessian_bt(basis, t);
  return h;
}

ExtremumCertificate certify_extremum(const Basis& basis, const std::vector<int>& t_list, double null_tol,
                                     double grad_tol) {
  ExtremumCertificate cert;
  cert.null_tol = null_tol;
  cert.grad_tol = grad_tol;
  cert.gradient_norm = gradient_bt_sum(basis, t_list).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian_bt_sum(basis, t_list));
  cert.hessian_spectrum = es.eigenvalues();

  int null = 0, pos = 0, neg = 0;
  for (int i = 0; i < cert.hessian_spectrum.size(); ++i) {
    const double lambda = cert.hessian_spectrum(i);
    if (std::abs(lambda) < null_tol) {
      ++null;
    } else if (lambda > 0.0) {
      ++pos;
    } else {
      ++neg;
    }
  }
  cert.gauge_null_count = null;
  if (cert.gradient_norm >= grad_tol) {
    cert.classification = ExtremumClass::kInconclusive;
  } else if (pos == 0 && neg > 0) {
    cert.classification = ExtremumClass::kLocalMax;
  } else if (neg == 0 && pos > 0) {
    cert.classification = ExtremumClass::kLocalMin;
  } else if (pos > 0 && neg > 0) {
    cert.classification = ExtremumClass::kSaddle;
  } else {
    cert.classification = ExtremumClass::kInconclusive;
  }
  return cert;
}

namespace {

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& u) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct WalkObjective {
  // Scalar objective in "maximize" orientation plus natural-value bookkeeping.
  std::function<double(const Eigen::MatrixXcd&)> value;
  double sign = 1.0;  // natural = sign * maximized
};

}  // namespace

SearchResult random_walk_search(const SearchConfig& config) {
  const int n = config.n;
  if (n < 2) throw std::invalid_argument("random_walk_search: N must be >= 2");
  std::mt19937_64 rng(config.seed);

  const bool lex = !config.custom && config.objective == Objective::kLexB1ThenB2;
  const bool wants_b2 = !config.custom && (lex || config.objective == Objective::kMaxB1PlusB2);
  const PurityContext ctx1(n - 1, 1);
  std::optional<PurityContext> ctx2;
  if (wants_b2 && n - 1 >= 2) ctx2.emplace(n - 1, 2);

  WalkObjective obj;
  if (config.custom) {
    obj.value = config.custom;
  } else {
    switch (config.objective) {
      case Objective::kMaxB1:
        obj.value = [&](const Eigen::MatrixXcd& u) { return basis_quantumness_raw(u, ctx1); };
        break;
      case Objective::kMinB1:
        obj.sign = -1.0;
        obj.value = [&](const Eigen::MatrixXcd& u) { return -basis_quantumness_raw(u, ctx1); };
        break;
      case Objective::kMaxB1PlusB2:
        if (!ctx2) throw std::invalid_argument("random_walk_search: B2 needs N >= 3");
        obj.value = [&](const Eigen::MatrixXcd& u) {
          return basis_quantumness_raw(u, ctx1) + basis_quantumness_raw(u, *ctx2);
        };
        break;
      case Objective::kLexB1ThenB2:
        if (!ctx2) throw std::invalid_argument("random_walk_search: B2 needs N >= 3");
        break;
      case Objective::kMaxMeanWehrl:
      case Objective::kMinMeanWehrl: {
        const double sign = config.objective == Objective::kMaxMeanWehrl ? 1.0 : -1.0;
        obj.sign = sign;
        obj.value = [n, sign](const Eigen::MatrixXcd& u) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) s += wehrl_entropy_fixed(SpinState(n - 1, u.col(i)), 48, 96);
          return sign * s / n;
        };
        break;
      }
    }
  }

  Eigen::MatrixXcd u = sample_cue(n, rng);
  double b1 = lex || wants_b2 ? basis_quantumness_raw(u, ctx1) : 0.0;
  double b2 = ctx2 ? basis_quantumness_raw(u, *ctx2) : 0.0;
  double value = lex ? b2 : obj.value(u);

  SearchResult result;
  result.seed = config.seed;
  result.trace.push_back(lex ? b2 : obj.sign * value);

  double step = config.initial_step;
  int stall = 0;
  bool stop = false;
  for (int block = 0; block < config.halvings && !stop; ++block) {
    for (int inner = 0; inner < config.inner_steps; ++inner) {
      const Eigen::MatrixXcd h = sample_gue(n, rng);
      const Eigen::MatrixXcd proposal = u * (Complex(0.0, step) * h).exp();
      ++result.proposals;

      bool accept;
      double p_b1 = 0.0, p_b2 = 0.0, p_value = 0.0;
      if (lex) {
        p_b1 = basis_quantumness_raw(proposal, ctx1);
        p_b2 = basis_quantumness_raw(proposal, *ctx2);
        accept = (p_b1 >= b1 - config.lex_slack) && (p_b2 > b2);
      } else {
        p_value = obj.value(proposal);
        accept = p_value > value;
      }

      if (accept) {
        u = proposal;
        stall = 0;
        ++result.accepted;
        if (lex) {
          b1 = p_b1;
          b2 = p_b2;
          result.trace.push_back(b2);
        } else {
          value = p_value;
          result.trace.push_back(obj.sign * value);
        }
        if (result.accepted % 1000 == 0) {
          u = polar_unitary(u);
          // Keep the acceptance threshold monotone across re-unitarization.
          if (lex) {
            b1 = std::min(b1, basis_quantumness_raw(u, ctx1));
            b2 = std::max(b2, basis_quantumness_raw(u, *ctx2));
          } else {
            value = std::max(value, obj.value(u));
          }
        }
      } else if (config.max_stall > 0 && ++stall >= config.max_stall) {
        stop = true;
        break;
      }
    }
    step *= 0.5;
    if (step < config.min_step) break;
  }

  u = polar_unitary(u);
  result.basis = u;
  result.final_step = step;
  result.b1 = basis_quantumness_raw(u, ctx1);
  result.b2 = ctx2 ? basis_quantumness_raw(u, *ctx2) : 0.0;
  if (config.custom) {
    result.objective_value = obj.value(u);
  } else {
    switch (config.objective) {
      case Objective::kMaxB1:
      case Objective::kMinB1:
        result.objective_value = result.b1;
        break;
      case Objective::kMaxB1PlusB2:
        result.objective_value = result.b1 + result.b2;
        break;
      case Objective::kLexB1ThenB2:
        result.objective_value = result.b2;
        break;
      case Objective::kMaxMeanWehrl:
      case Objective::kMinMeanWehrl:
        result.objective_value = obj.sign * obj.value(u);
        break;
    }
  }

  if (!config.custom && config.objective != Objective::kMaxMeanWehrl &&
      config.objective != Objective::kMinMeanWehrl) {
    std::vector<int> t_list{1};
    if (wants_b2) t_list.push_back(2);
    result.certificate = certify_extremum(Basis(n - 1, u, 1e-8), t_list);
  }
  return result;
}

SearchResult multi_start_search(const SearchConfig& config, int restarts) {
  if (restarts < 1) throw std::invalid_argument("multi_start_search: need at least one restart");
  std::optional<SearchResult> best;
  for (int i = 0; i < restarts; ++i) {
    SearchConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(i);
    SearchResult r = random_walk_search(c);
    const auto better = [&](const SearchResult& a, const SearchResult& b) {
      const bool minimize = config.objective == Objective::kMinB1 ||
                            config.objective == Objective::kMinMeanWehrl;
      if (config.objective == Objective::kLexB1ThenB2) {
        return std::min(a.b1, a.b2) > std::min(b.b1, b.b2);
      }
      return minimize ? a.objective_value < b.objective_value : a.objective_value > b.objective_value;
    };
    if (!best || better(r, *best)) best = std::move(r);
  }
  return *best;
}

}  // namespace qbasis
