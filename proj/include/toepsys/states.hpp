#pragma once

// States on Toep(n), stored through their density in the dual Fejer-Riesz
// system: phi(T) = sum_k a_k t_{-k}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <complex>
#include <span>
#include <vector>

#include "toepsys/core.hpp"
#include "toepsys/factor.hpp"
#include "toepsys/poly.hpp"

namespace toepsys {

struct State {
  FRElement density;  ///< palindromic, positive, a_0 = 1

  int n() const noexcept { return density.n(); }
};

struct PureStateVector {
  std::vector<cplx> xi;            ///< unit l2-norm
  std::vector<double> root_angles;  ///< n-1 angles
};

/// Validates and normalizes to a_0 = 1.
inline State state_from_density(const FRElement& a, double tol = 1e-9) {
  require(a.is_self_adjoint(), ErrorKind::not_self_adjoint, "state_from_density: density is not palindromic");
  require(a[0].real() > 0.0, ErrorKind::not_positive, "state_from_density: a_0 must be positive");
  require(fr_is_positive(a, tol), ErrorKind::not_positive, "state_from_density: density is not positive on the circle");
  return {(1.0 / a[0].real()) * a};
}

/// The normalized trace T -> t_0 (density delta_0).
inline State trace_state(int n) { return {FRElement::delta(n)}; }

inline double evaluate(const State& s, const ToeplitzMatrix& t) {
  require(t.is_hermitian(), ErrorKind::not_hermitian, "evaluate: matrix is not hermitian");
  return pairing(t, s.density).real();
}

/// T -> <xi, T xi> / ||xi||^2, density xi* * xi.
inline State vector_state(std::span<const cplx> xi) {
  double nrm = 0.0;
  for (const auto& v : xi) nrm += std::norm(v);
  require(nrm > 0.0, ErrorKind::invalid_argument, "vector_state: zero vector");
  return {(1.0 / nrm) * autocorrelation(xi)};
}

/// xi_k = e_k(lambda_1, ..., lambda_{n-1}) with lambda_j = e^{i angles_j},
/// normalized; n = angles.size() + 1.
inline PureStateVector pure_state_from_angles(std::span<const double> angles) {
  std::vector<cplx> e{cplx(1.0)};
  for (double th : angles) {
    const cplx l = std::polar(1.0, th);
    e.push_back(cplx(0.0));
    for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += l * e[k - 1];
  }
  double nrm = 0.0;
  for (const auto& v : e) nrm += std::norm(v);
  for (auto& v : e) v /= std::sqrt(nrm);
  return {std::move(e), std::vector<double>(angles.begin(), angles.end())};
}

namespace detail {

inline double density_mismatch(const FRElement& a, const std::vector<double>& angles) {
  const auto c = vector_state(pure_state_from_angles(angles).xi).density;
  double diff = 0.0;
  for (int k = 0; k < a.n(); ++k) diff = std::max(diff, std::abs(c[k] - a[k]));
  return diff;
}

// Levenberg-Marquardt on the angles, least squares over a_0..a_{n-1}.
inline std::vector<double> polish_angles(const FRElement& a, std::vector<double> angles, int iterations) {
  const int n = a.n();
  const auto p = static_cast<Eigen::Index>(angles.size());
  auto residual = [&](const std::vector<double>& th) {
    const auto c = vector_state(pure_state_from_angles(th).xi).density;
    Eigen::VectorXd r(2 * n);
    for (int k = 0; k < n; ++k) {
      r(2 * k) = (c[k] - a[k]).real();
      r(2 * k + 1) = (c[k] - a[k]).imag();
    }
    return r;
  };
  Eigen::VectorXd r = residual(angles);
  double mu = 1e-6;
  for (int it = 0; it < iterations && r.norm() > 0.0; ++it) {
    Eigen::MatrixXd j(2 * n, p);
    for (Eigen::Index i = 0; i < p; ++i) {
      auto hi = angles, lo = angles;
      const double h = 1e-6;
      hi[static_cast<std::size_t>(i)] += h;
      lo[static_cast<std::size_t>(i)] -= h;
      j.col(i) = (residual(hi) - residual(lo)) / (2 * h);
    }
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 8 && !improved; ++tries) {
      Eigen::MatrixXd sys = jtj;
      sys.diagonal().array() += mu * (1.0 + jtj.diagonal().maxCoeff());
      const Eigen::VectorXd step = sys.ldlt().solve(-g);
      auto next = angles;
      for (Eigen::Index i = 0; i < p; ++i) next[static_cast<std::size_t>(i)] += step(i);
      const Eigen::VectorXd rn = residual(next);
      if (rn.norm() < r.norm()) {
        angles = std::move(next);
        r = rn;
        mu = std::max(mu / 10.0, 1e-12);
        improved = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!improved) break;
  }
  return angles;
}

}  // namespace detail

/// Extremality of the density in the dual cone: a = xi* * xi with every
/// root of xi on the circle. Candidate angles come from the 2(n-1) Laurent
/// roots of a (neighbouring roots paired, or clusters sharpened to a
/// multiple root), are polished by least squares, and the state is pure
/// when the pure density they generate matches a within tol (relative sup
/// of coefficients). A density whose degree drops is not pure.
inline bool is_pure(const State& s, double tol = 1e-8) {
  const FRElement& a = s.density;
  const int n = a.n();
  if (n == 1) return true;
  const auto roots = laurent_roots(a);
  if (static_cast<int>(roots.size()) != 2 * (n - 1)) return false;
  constexpr double pi = std::numbers::pi;
  // A root z of a corresponds to the angle pi - arg z (roots sit at -conj(lambda)).
  std::vector<std::vector<double>> candidates;
  std::vector<double> th;
  for (const auto& z : roots) th.push_back(std::arg(z));
  std::sort(th.begin(), th.end());
  const std::size_t m = th.size();
  for (std::size_t offset = 0; offset < 2; ++offset) {
    std::vector<double> angles;
    for (std::size_t i = offset; i < m; i += 2) {
      const double y = th[(i + 1) % m] + (i + 1 >= m ? 2.0 * pi : 0.0);
      angles.push_back(pi - 0.5 * (th[i] + y));
    }
    candidates.push_back(std::move(angles));
  }
  for (double radius : detail::kClusterRadii) {
    std::vector<double> angles;
    bool ok = true;
    for (const auto& cl : cluster_roots(roots, radius)) {
      if (cl.multiplicity % 2 != 0) { ok = false; break; }
      const cplx c = refine_multiple_root(a.coeffs(), cl.center, cl.multiplicity);
      angles.insert(angles.end(), static_cast<std::size_t>(cl.multiplicity / 2), pi - std::arg(c));
    }
    if (ok) candidates.push_back(std::move(angles));
  }
  const double limit = tol * a.max_abs();
  std::vector<double> best;
  double best_diff = std::numeric_limits<double>::infinity();
  for (auto& c : candidates) {
    const double d = detail::density_mismatch(a, c);
    if (d <= limit) return true;
    if (d < best_diff) {
      best_diff = d;
      best = c;
    }
  }
  if (best_diff > 1e-2 * a.max_abs()) return false;
  return detail::density_mismatch(a, detail::polish_angles(a, best, 30)) <= limit;
}

}  // namespace toepsys
