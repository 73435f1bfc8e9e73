#include "qbasis/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include "qbasis/stellar.hpp"

namespace qbasis {
namespace {

struct GaussLegendre {
  std::vector<double> nodes;    // in (-1, 1)
  std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

// Integral of f(Q) over the sphere on the product grid, where f is applied
// to the Husimi value at each node.
template <typename F>
double sphere_integral(const SpinState& state, int n_theta, int n_phi, F&& f) {
  const int n = state.two_j();
  const GaussLegendre gl = gauss_legendre(n_theta);
  const double dphi = kTwoPi / n_phi;
  const Eigen::VectorXcd& z = state.amplitudes();

  double total = 0.0;
  std::vector<Complex> term(n + 1);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(gl.nodes[i]);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    for (int k = 0; k <= n; ++k) {
      term[k] = std::conj(z(k)) * sqrt_binomial(n, k) * std::pow(c, n - k) * std::pow(s, k);
    }
    double row = 0.0;
    for (int p = 0; p < n_phi; ++p) {
      const double phi = p * dphi;
      const Complex e = Complex(std::cos(phi), std::sin(phi));
      Complex amp = 0.0, ph = 1.0;
      for (int k = 0; k <= n; ++k) {
        amp += term[k] * ph;
        ph *= e;
      }
      row += f(std::norm(amp));
    }
    total += gl.weights[i] * row * dphi;
  }
  return total;
}

template <typename F>
double refined_integral(const SpinState& state, const QuadratureSpec& quad, F&& f, const char* what) {
  int nt = std::max(quad.n_theta, 16);
  int np = std::max(quad.n_phi, 32);
  double prev = sphere_integral(state, nt, np, f);
  for (int pass = 0; pass < quad.max_doublings; ++pass) {
    nt *= 2;
    np *= 2;
    const double next = sphere_integral(state, nt, np, f);
    if (std::abs(next - prev) <= quad.tol) return next;
    prev = next;
  }
  throw std::runtime_error(std::string(what) + ": quadrature did not converge within the doubling budget");
}

double xlogx(double q) { return (q < 1e-300) ? 0.0 : q * std::log(q); }

// Value, first and second complex derivatives of a polynomial given by
// coefficients in ascending powers.
void poly_eval2(const std::vector<Complex>& coeff, Complex z, Complex& p, Complex& dp, Complex& d2p) {
  p = dp = d2p = 0.0;
  for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k) {
    d2p = d2p * z + 2.0 * dp;
    dp = dp * z + p;
    p = p * z + coeff[k];
  }
}

struct PlaneObjective {
  // F(x, y) = -ln |P(z)|^2 + 2j ln(1 + |z|^2), z = x + iy; minima of F are
  // maxima of the Husimi function.
  const std::vector<Complex>& coeff;
  int two_j;

  double value(Complex z) const {
    Complex p, dp, d2p;
    poly_eval2(coeff, z, p, dp, d2p);
    const double pp = std::norm(p);
    if (pp < 1e-300) return 1e300;
    return -std::log(pp) + two_j * std::log1p(std::norm(z));
  }

  double husimi_value(Complex z) const {
    Complex p, dp, d2p;
    poly_eval2(coeff, z, p, dp, d2p);
    return std::norm(p) / std::pow(1.0 + std::norm(z), two_j);
  }

  void derivatives(Complex z, Eigen::Vector2d& grad, Eigen::Matrix2d& hess) const {
    Complex p, dp, d2p;
    poly_eval2(coeff, z, p, dp, d2p);
    const Complex g = dp / p;
    const Complex gp = d2p / p - g * g;
    const double x = z.real(), y = z.imag();
    const double r2 = 1.0 + x * x + y * y;
    grad(0) = -2.0 * g.real() + two_j * 2.0 * x / r2;
    grad(1) = 2.0 * g.imag() + two_j * 2.0 * y / r2;
    hess(0, 0) = -2.0 * gp.real() + two_j * (2.0 / r2 - 4.0 * x * x / (r2 * r2));
    hess(1, 1) = 2.0 * gp.real() + two_j * (2.0 / r2 - 4.0 * y * y / (r2 * r2));
    hess(0, 1) = hess(1, 0) = 2.0 * gp.imag() - two_j * 4.0 * x * y / (r2 * r2);
  }
};

// Damped Newton descent on F from z0; returns the best Husimi value found.
double refine_from(const PlaneObjective& obj, Complex z0, Complex& z_best) {
  Complex z = z0;
  double f = obj.value(z);
  for (int iter = 0; iter < 60; ++iter) {
    Eigen::Vector2d grad;
    Eigen::Matrix2d hess;
    obj.derivatives(z, grad, hess);
    Eigen::Vector2d step;
    const double det = hess.determinant();
    if (det > 0.0 && hess(0, 0) > 0.0) {
      step = -hess.inverse() * grad;
    } else {
      step = -0.1 * grad;
    }
    double scale = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 25; ++halving) {
      const Complex zn = z + scale * Complex(step(0), step(1));
      const double fn = obj.value(zn);
      if (fn < f) {
        z = zn;
        f = fn;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved || (scale * step.norm()) < 1e-13) break;
  }
  z_best = z;
  return obj.husimi_value(z);
}

}  // namespace

double husimi(const SpinState& state, double theta, double phi) {
  const SpinState coh = coherent_state(state.two_j(), theta, phi);
  const Complex amp = state.amplitudes().dot(coh.amplitudes());
  return std::norm(amp);
}

double wehrl_entropy(const SpinState& state, const QuadratureSpec& quad) {
  const double n = state.dim();
  const double integral =
      refined_integral(state, quad, [](double q) { return xlogx(q); }, "wehrl_entropy");
  return -n / (4.0 * kPi) * integral;
}

double husimi_norm_integral(const SpinState& state, const QuadratureSpec& quad) {
  const double n = state.dim();
  const double integral = refined_integral(state, quad, [](double q) { return q; }, "husimi_norm_integral");
  return n / (4.0 * kPi) * integral;
}

double wehrl_entropy_fixed(const SpinState& state, int n_theta, int n_phi) {
  const double n = state.dim();
  return -n / (4.0 * kPi) * sphere_integral(state, n_theta, n_phi, [](double q) { return xlogx(q); });
}

HusimiExtremum husimi_max(const SpinState& state, int grid_theta, int grid_phi) {
  const int n = state.two_j();
  const Eigen::VectorXcd& z = state.amplitudes();

  // Ascending-power coefficients of P(z) = sum_k conj(Z_k) sqrt(C(2j,k)) z^k,
  // for which Q = |P|^2 / (1+|z|^2)^(2j); and the reversed-order polynomial
  // used near the south pole in the inverted coordinate w = 1/z.
  std::vector<Complex> coeff(n + 1), coeff_rev(n + 1);
  for (int k = 0; k <= n; ++k) {
    coeff[k] = std::conj(z(k)) * sqrt_binomial(n, k);
    coeff_rev[n - k] = coeff[k];
  }
  const PlaneObjective direct{coeff, n};
  const PlaneObjective inverted{coeff_rev, n};

  struct Cell {
    double q;
    double theta;
    double phi;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(grid_theta) * grid_phi + 2);
  for (int i = 0; i < grid_theta; ++i) {
    const double theta = (i + 0.5) * kPi / grid_theta;
    const double tz = std::tan(0.5 * theta);
    for (int p = 0; p < grid_phi; ++p) {
      const double phi = p * kTwoPi / grid_phi;
      const Complex zz = tz * Complex(std::cos(phi), std::sin(phi));
      cells.push_back({direct.husimi_value(zz), theta, phi});
    }
  }
  cells.push_back({std::norm(z(0)), 0.0, 0.0});
  cells.push_back({std::norm(z(n)), kPi, 0.0});

  const std::size_t keep = std::min<std::size_t>(10, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + keep, cells.end(),
                    [](const Cell& a, const Cell& b) { return a.q > b.q; });

  HusimiExtremum best;
  best.q_max = cells[0].q;
  best.theta = cells[0].theta;
  best.phi = cells[0].phi;
  for (std::size_t i = 0; i < keep; ++i) {
    const double tz = std::tan(0.5 * cells[i].theta);
    const Complex z0 = tz * Complex(std::cos(cells[i].phi), std::sin(cells[i].phi));
    Complex zr;
    double q;
    if (std::abs(z0) <= 1.25 || !std::isfinite(std::abs(z0))) {
      const Complex start = std::isfinite(std::abs(z0)) ? z0 : Complex(0.0);
      q = refine_from(direct, start, zr);
    } else {
      Complex wr;
      q = refine_from(inverted, 1.0 / z0, wr);
      zr = (std::abs(wr) < 1e-300) ? Complex(1e300) : 1.0 / wr;
    }
    if (q > best.q_max) {
      best.q_max = q;
      if (std::abs(zr) > 1e12) {
        best.theta = kPi;
        best.phi = 0.0;
      } else {
        best.theta = 2.0 * std::atan(std::abs(zr));
        best.phi = (zr == Complex(0.0)) ? 0.0 : wrap_angle(std::arg(zr));
      }
    }
  }
  best.q_max = std::min(best.q_max, 1.0);
  best.d_fs = std::acos(std::sqrt(std::clamp(best.q_max, 0.0, 1.0)));
  return best;
}

PhaseSpaceStats basis_phase_space_stats(const Basis& basis, const QuadratureSpec& quad) {
  PhaseSpaceStats stats;
  const int n = basis.dim();
  for (int i = 0; i < n; ++i) {
    const SpinState psi = basis.column(i);
    stats.wehrl.push_back(wehrl_entropy(psi, quad));
    stats.qmax.push_back(husimi_max(psi).q_max);
    stats.mean_wehrl += stats.wehrl.back();
    stats.mean_qmax += stats.qmax.back();
  }
  stats.mean_wehrl /= n;
  stats.mean_qmax /= n;
  return stats;
}

double mean_wehrl_haar(int n) {
  if (n < 2) throw std::domain_error("mean_wehrl_haar: N must be >= 2");
  double s = 0.0;
  for (int k = 2; k <= n; ++k) s += 1.0 / k;
  return s;
}

}  // namespace qbasis
