#pragma once

// The Connes distance on Toep(n), sup{ (phi - psi)(A) : ||i[D, A]|| <= 1 },
// solved as a certified convex program by cutting planes, its dual-norm
// form, and the Kantorovich distance of the associated circle measures.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "toepsys/core.hpp"
#include "toepsys/lp.hpp"
#include "toepsys/poly.hpp"
#include "toepsys/states.hpp"

namespace toepsys {

/// D = diag(1, ..., n) on the span of e_1..e_n.
struct DiracTruncation {
  int n;
  std::vector<double> eigenvalues() const {
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) ev[static_cast<std::size_t>(k)] = k + 1.0;
    return ev;
  }
  Mat dense() const {
    Mat d = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) d(k, k) = k + 1.0;
    return d;
  }
};

struct ConvexProgramResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  ToeplitzMatrix optimizer;  ///< feasible maximizer attaining `lower`
  int iterations = 0;        ///< cuts added
  bool converged = true;
};

/// i[D, T]: coefficients (dT)_j = i j t_j.
inline ToeplitzMatrix dirac_commutator(const ToeplitzMatrix& t) {
  std::vector<cplx> c(t.coeffs().begin(), t.coeffs().end());
  for (int j = -t.n() + 1; j < t.n(); ++j) c[static_cast<std::size_t>(j + t.n() - 1)] *= cplx(0.0, j);
  return ToeplitzMatrix(std::move(c));
}

/// Transpose of i[D, .] under the pairing: (d^t a)_k = -i k a_k.
inline FRElement dirac_transpose(const FRElement& a) {
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (int k = -a.n() + 1; k < a.n(); ++k) c[static_cast<std::size_t>(k + a.n() - 1)] *= cplx(0.0, -k);
  return FRElement(std::move(c));
}

/// B with d^t B = b: B_j = i b_j / j, B_0 = 0.
inline FRElement primitive(const FRElement& b) {
  require(b.is_self_adjoint(), ErrorKind::not_self_adjoint, "primitive: element is not palindromic");
  require(std::abs(b[0]) <= detail::kSymmetryTol * std::max(1.0, b.max_abs()), ErrorKind::invalid_argument,
          "primitive: b_0 must vanish");
  std::vector<cplx> c(b.coeffs().size(), cplx(0.0));
  for (int j = -b.n() + 1; j < b.n(); ++j)
    if (j != 0) c[static_cast<std::size_t>(j + b.n() - 1)] = cplx(0.0, 1.0) * b[j] / static_cast<double>(j);
  return FRElement(std::move(c));
}

namespace detail {

// Real coordinates of a hermitian Toeplitz matrix: optional t_0, then
// (Re t_j, Im t_j) for j = 1..n-1.
struct HermitianCoords {
  int n;
  bool with_diagonal;

  int dim() const { return 2 * (n - 1) + (with_diagonal ? 1 : 0); }

  ToeplitzMatrix unit(int v) const {
    std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
    if (with_diagonal) {
      if (v == 0) {
        c[static_cast<std::size_t>(n - 1)] = 1.0;
        return ToeplitzMatrix(std::move(c));
      }
      --v;
    }
    const int j = 1 + v / 2;
    const cplx w = v % 2 == 0 ? cplx(1.0) : cplx(0.0, 1.0);
    c[static_cast<std::size_t>(n - 1 + j)] = w;
    c[static_cast<std::size_t>(n - 1 - j)] = std::conj(w);
    return ToeplitzMatrix(std::move(c));
  }

  ToeplitzMatrix matrix(const Eigen::VectorXd& x) const {
    ToeplitzMatrix t(n);
    for (int v = 0; v < dim(); ++v) t = t + x(v) * unit(v);
    return t;
  }
};

// max c.x over { x : ||H(x)|| <= 1 }, H linear into hermitian matrices given
// by the dense images `g` of the coordinate units. Kelley cutting planes:
// every eigenvector u of H(x_k) with |lambda| > 1 yields sign(lambda)
// <u, H(x) u> <= 1. The LP value is an upper bound; x_k / max(1, ||H(x_k)||)
// is feasible and gives the lower bound.
struct NormBallProgram {
  Eigen::VectorXd c;
  std::vector<Mat> g;
  double box;

  struct Outcome {
    double lower, upper;
    Eigen::VectorXd x;  // feasible
    int cuts;
    bool converged;
  };

  Mat image(const Eigen::VectorXd& x) const {
    Mat h = Mat::Zero(g.front().rows(), g.front().cols());
    for (std::size_t v = 0; v < g.size(); ++v) h += x(static_cast<Eigen::Index>(v)) * g[v];
    return h;
  }

  Outcome solve(double gap, int max_cuts = 10000) const {
    const auto d = static_cast<Eigen::Index>(g.size());
    if (c.norm() == 0.0) return {0.0, 0.0, Eigen::VectorXd::Zero(d), 0, true};
    RowLP lp(c, box);
    double lower = 0.0;
    Eigen::VectorXd best = Eigen::VectorXd::Zero(d);
    int cuts = 0;
    while (true) {
      lp.solve();
      const Eigen::VectorXd x = lp.x();
      const double upper = lp.value();
      Eigen::SelfAdjointEigenSolver<Mat> es(image(x));
      const auto& ev = es.eigenvalues();
      const double nrm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
      const double scaled = c.dot(x) / std::max(1.0, nrm);
      if (scaled > lower) {
        lower = scaled;
        best = x / std::max(1.0, nrm);
      }
      if (upper - lower <= gap) return {lower, upper, best, cuts, true};
      if (cuts >= max_cuts) return {lower, upper, best, cuts, false};
      int added = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) <= 1.0) continue;
        const Vec u = es.eigenvectors().col(i);
        const double s = ev(i) > 0.0 ? 1.0 : -1.0;
        Eigen::VectorXd row(d);
        for (Eigen::Index v = 0; v < d; ++v) row(v) = s * u.dot(g[static_cast<std::size_t>(v)] * u).real();
        lp.add_row(row, 1.0);
        ++added;
        ++cuts;
      }
      if (added == 0) return {lower, upper, best, cuts, true};  // LP optimum is feasible
    }
  }
};

// Objective coefficients c_v = Re pairing(unit_v, b).
inline Eigen::VectorXd pairing_coefficients(const HermitianCoords& hc, const FRElement& b) {
  Eigen::VectorXd c(hc.dim());
  for (int v = 0; v < hc.dim(); ++v) c(v) = pairing(hc.unit(v), b).real();
  return c;
}

inline ConvexProgramResult to_result(const HermitianCoords& hc, const NormBallProgram::Outcome& o) {
  ConvexProgramResult r;
  r.lower = o.lower;
  r.upper = o.upper;
  r.value = 0.5 * (o.lower + o.upper);
  r.optimizer = hc.matrix(o.x);
  r.iterations = o.cuts;
  r.converged = o.converged;
  return r;
}

}  // namespace detail

/// sup{ (phi - psi)(A) : A hermitian Toeplitz, t_0(A) = 0, ||i[D, A]|| <= 1 }.
inline ConvexProgramResult connes_distance(const State& phi, const State& psi, double gap = 1e-6) {
  require(phi.n() == psi.n(), ErrorKind::size_mismatch, "connes_distance: states on different Toep(n)");
  require(gap > 0.0, ErrorKind::invalid_argument, "connes_distance: gap must be positive");
  const int n = phi.n();
  if (n == 1) return {0.0, 0.0, 0.0, ToeplitzMatrix(1), 0, true};
  const detail::HermitianCoords hc{n, false};
  detail::NormBallProgram prog;
  prog.c = detail::pairing_coefficients(hc, phi.density - psi.density);
  prog.box = n;
  for (int v = 0; v < hc.dim(); ++v) prog.g.push_back(dirac_commutator(hc.unit(v)).dense());
  return detail::to_result(hc, prog.solve(gap));
}

/// sup{ |pairing(T, b)| : T hermitian Toeplitz, ||T|| <= 1 }, the norm dual
/// to the operator norm. Any palindromic b is accepted.
inline ConvexProgramResult dual_norm(const FRElement& b, double gap = 1e-6) {
  require(b.is_self_adjoint(), ErrorKind::not_self_adjoint, "dual_norm: element is not palindromic");
  require(gap > 0.0, ErrorKind::invalid_argument, "dual_norm: gap must be positive");
  const int n = b.n();
  const detail::HermitianCoords hc{n, true};
  detail::NormBallProgram prog;
  prog.c = detail::pairing_coefficients(hc, b);
  prog.box = n;
  for (int v = 0; v < hc.dim(); ++v) prog.g.push_back(hc.unit(v).dense());
  return detail::to_result(hc, prog.solve(gap));
}

/// inf over real c of dual_norm(B - c delta_0), B the primitive of
/// phi - psi; golden-section search in c to tolerance gap / 10.
inline ConvexProgramResult connes_distance_dual(const State& phi, const State& psi, double gap = 1e-6) {
  require(phi.n() == psi.n(), ErrorKind::size_mismatch, "connes_distance_dual: states on different Toep(n)");
  const int n = phi.n();
  if (n == 1) return {0.0, 0.0, 0.0, ToeplitzMatrix(1), 0, true};
  const FRElement b = primitive(phi.density - psi.density);
  double bound = 0.0;
  for (const auto& v : b.coeffs()) bound += std::abs(v);
  auto eval = [&](double c) { return dual_norm(b - c * FRElement::delta(n), gap / 2); };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -bound, hi = bound;
  double m1 = hi - ratio * (hi - lo), m2 = lo + ratio * (hi - lo);
  auto r1 = eval(m1), r2 = eval(m2);
  int iters = r1.iterations + r2.iterations;
  while (hi - lo > gap / 10) {
    if (r1.value < r2.value) {
      hi = m2;
      m2 = m1;
      r2 = r1;
      m1 = hi - ratio * (hi - lo);
      r1 = eval(m1);
      iters += r1.iterations;
    } else {
      lo = m1;
      m1 = m2;
      r1 = r2;
      m2 = lo + ratio * (hi - lo);
      r2 = eval(m2);
      iters += r2.iterations;
    }
  }
  auto best = r1.value < r2.value ? r1 : r2;
  best.iterations = iters;
  return best;
}

namespace detail {

// alpha(x) = mu([0, x]) - nu([0, x]) = sum_{k != 0} g_k (e^{ikx} - 1),
// g_k = d_k / (2 pi i k), for the densities' difference d.
struct CumulativeDifference {
  int n;
  std::vector<cplx> g;  // index k + n - 1, g_0 = 0
  cplx gsum = 0.0;

  explicit CumulativeDifference(const FRElement& d) : n(d.n()), g(static_cast<std::size_t>(2 * d.n() - 1), cplx(0.0)) {
    for (int k = -n + 1; k < n; ++k) {
      if (k == 0) continue;
      const cplx v = d[k] / (cplx(0.0, 2.0 * std::numbers::pi * k));
      g[static_cast<std::size_t>(k + n - 1)] = v;
      gsum += v;
    }
  }

  double operator()(double x) const {
    cplx s = -gsum;
    for (int k = -n + 1; k < n; ++k) s += g[static_cast<std::size_t>(k + n - 1)] * std::polar(1.0, k * x);
    return s.real();
  }

  // int_0^x (alpha(s) - a) ds
  double antiderivative(double x, double a) const {
    cplx s = -(gsum + a) * x;
    for (int k = -n + 1; k < n; ++k)
      if (k != 0) s += g[static_cast<std::size_t>(k + n - 1)] * (std::polar(1.0, k * x) - 1.0) / cplx(0.0, k);
    return s.real();
  }

  // Sorted points of [0, 2pi) where alpha - a may change sign, with 0 and
  // 2pi appended.
  std::vector<double> crossings(double a) const {
    std::vector<cplx> c(g);
    c[static_cast<std::size_t>(n - 1)] = -gsum - a;
    std::vector<double> xs{0.0, 2.0 * std::numbers::pi};
    bool nonconstant = false;
    for (int k = 1; k < n; ++k) nonconstant = nonconstant || std::abs(c[static_cast<std::size_t>(k + n - 1)]) > 0.0;
    if (nonconstant) {
      for (const auto& z : poly_roots(c)) {
        if (std::abs(std::log(std::abs(z))) > 1e-4) continue;
        double th = std::arg(z);
        if (th < 0.0) th += 2.0 * std::numbers::pi;
        xs.push_back(th);
      }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
  }

  double measure_below(double a) const {
    const auto xs = crossings(a);
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if ((*this)(0.5 * (xs[i] + xs[i + 1])) < a) m += xs[i + 1] - xs[i];
    return m;
  }

  double l1_distance(double a) const {
    const auto xs = crossings(a);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) s += std::abs(antiderivative(xs[i + 1], a) - antiderivative(xs[i], a));
    return s;
  }
};

}  // namespace detail

/// d_T(mu, nu) = inf_a int_0^{2pi} |alpha(x) - a| dx with alpha the
/// difference of the distribution functions. The minimizing a is a median
/// of alpha, found by bisection on the measure of {alpha < a}; the integral
/// is evaluated exactly between consecutive roots of alpha - a.
inline double kantorovich(const State& phi, const State& psi, double quad_tol = 1e-8) {
  require(phi.n() == psi.n(), ErrorKind::size_mismatch, "kantorovich: states on different Toep(n)");
  const detail::CumulativeDifference alpha(phi.density - psi.density);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const int samples = 64 * std::max(1, alpha.n);
  for (int s = 0; s <= samples; ++s) {
    const double v = alpha(2.0 * std::numbers::pi * s / samples);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double spread = 0.0;
  for (const auto& v : alpha.g) spread += 2.0 * std::abs(v);
  lo -= spread / samples;
  hi += spread / samples;
  // The objective is 2pi-Lipschitz in a, so a is needed to quad_tol / 2pi.
  const double step_tol = std::max(quad_tol / (2.0 * std::numbers::pi), 1e-15);
  for (int it = 0; it < 200 && hi - lo > step_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (alpha.measure_below(mid) < std::numbers::pi) lo = mid; else hi = mid;
  }
  return alpha.l1_distance(0.5 * (lo + hi));
}

}  // namespace toepsys
