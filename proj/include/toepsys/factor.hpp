#pragma once

// Fejer-Riesz spectral factorization: a nonnegative trigonometric polynomial
// p(zeta) = sum_k a_k zeta^k is written as |q(zeta)|^2 with q supported in
// 0..n-1 and all roots of q in the closed unit disc.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "toepsys/core.hpp"
#include "toepsys/poly.hpp"

namespace toepsys {

struct SpectralFactor {
  std::vector<cplx> q;  ///< q_0 .. q_{n-1}

  FRElement as_element() const { return FRElement::from_causal(q); }
};

/// Nonzero roots of z^{n-1} a(z), with multiplicity.
inline std::vector<cplx> laurent_roots(const FRElement& a) {
  require(a.max_abs() > 0.0, ErrorKind::invalid_argument, "laurent_roots: zero element");
  return poly_roots(a.coeffs());
}

namespace detail {

// Radii tried, smallest first, when grouping numerically split multiple roots.
inline constexpr std::array<double, 6> kClusterRadii{1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2};

// Zeros of a nonnegative trigonometric polynomial on the circle, located as
// stationary points (roots of the derivative, where a double zero of p is
// simple) at which p vanishes to within tau * sup|p|.
inline std::vector<cplx> circle_zeros(const FRElement& a, double tau) {
  const int n = a.n();
  std::vector<cplx> d(static_cast<std::size_t>(2 * n - 1));
  bool any = false;
  for (int k = -n + 1; k < n; ++k) {
    d[static_cast<std::size_t>(k + n - 1)] = cplx(0.0, k) * a[k];
    any = any || (k != 0 && a[k] != cplx(0.0));
  }
  std::vector<cplx> out;
  if (!any) return out;
  const double sup = fr_sup_norm(a);
  auto derivs = [&](double th, double& d1, double& d2) {
    cplx s1 = 0.0, s2 = 0.0;
    const cplx z = std::polar(1.0, th);
    for (int k = -n + 1; k < n; ++k) {
      const cplx t = a[k] * std::pow(z, k);
      s1 += cplx(0.0, k) * t;
      s2 -= static_cast<double>(k) * k * t;
    }
    d1 = s1.real();
    d2 = s2.real();
  };
  for (const auto& w : poly_roots(d)) {
    if (std::abs(std::log(std::abs(w))) > 1e-3) continue;
    double th = std::arg(w);
    for (int it = 0; it < 4; ++it) {
      double d1, d2;
      derivs(th, d1, d2);
      if (d2 == 0.0) break;
      const double next = th - d1 / d2;
      if (!(std::abs(a.evaluate(next).real()) <= std::abs(a.evaluate(th).real()))) break;
      th = next;
    }
    if (std::abs(a.evaluate(th).real()) > tau * sup) continue;
    double d1, d2;
    derivs(th, d1, d2);
    if (d2 < -1e-13 * sup * (n - 1) * (n - 1)) continue;  // a maximum between two close zeros
    const cplx u = std::polar(1.0, th);
    bool dup = false;
    for (const auto& v : out) dup = dup || std::abs(v - u) < 1e-7;
    if (!dup) out.push_back(u);
  }
  return out;
}

// Divides c (ascending) by (z - u) in place; returns the remainder c(u).
inline cplx deflate(std::vector<cplx>& c, cplx u) {
  const std::size_t deg = c.size() - 1;
  std::vector<cplx> q(deg);
  cplx acc = c[deg];
  for (std::size_t k = deg; k-- > 0;) {
    q[k] = acc;
    acc = c[k] + acc * u;
  }
  c = std::move(q);
  return acc;
}

inline double coeff_l1(const std::vector<cplx>& c) {
  double s = 0.0;
  for (const auto& v : c) s += std::abs(v);
  return s;
}

}  // namespace detail

/// sup over the circle of |a - |q|^2|, located through stationary points.
inline double factorization_residual(const FRElement& a, const SpectralFactor& f) {
  const auto qq = autocorrelation(f.q);
  const int n = std::max(a.n(), qq.n());
  return fr_sup_norm(a.with_bound(n) - (n == qq.n() ? qq : qq.with_bound(n)));
}

inline SpectralFactor fejer_riesz_factorize(const FRElement& a, double tol = 1e-9) {
  require(a.is_self_adjoint(), ErrorKind::not_self_adjoint, "fejer_riesz_factorize: element is not palindromic");
  const auto [lo, hi] = detail::fr_extrema(a);
  const double sup = std::max(std::abs(lo), std::abs(hi));
  require(lo >= -tol * sup, ErrorKind::not_positive, "fejer_riesz_factorize: element is not positive on the circle");
  const int n = a.n();
  require(a[0].real() > 0.0, ErrorKind::not_positive, "fejer_riesz_factorize: zero element");

  const auto roots = laurent_roots(a);
  const auto build = [&](const std::vector<cplx>& qroots) {
    std::vector<cplx> q = poly_from_roots(qroots);
    // q_0 real and nonnegative, energy matched to a_0.
    const cplx q0 = q.front();
    if (std::abs(q0) > 0.0)
      for (auto& v : q) v *= std::conj(q0) / std::abs(q0);
    double energy = 0.0;
    for (const auto& v : q) energy += std::norm(v);
    const double scale = std::sqrt(a[0].real() / energy);
    for (auto& v : q) v *= scale;
    q.front() = std::abs(q.front());
    q.resize(static_cast<std::size_t>(n), cplx(0.0));
    return SpectralFactor{std::move(q)};
  };
  if (roots.empty()) return build({});

  // Candidates: circle zeros deflated first, then every clustering radius
  // that gives a consistent split; the smallest residual wins, and a
  // residual at round-off level ends the search.
  std::optional<SpectralFactor> best;
  double best_residual = std::numeric_limits<double>::infinity();
  const double good_enough = 1e-12 * a[0].real();
  const auto consider = [&](const std::vector<cplx>& qroots) {
    auto f = build(qroots);
    const double r = factorization_residual(a, f);
    if (r < best_residual) {
      best_residual = r;
      best = std::move(f);
    }
  };

  const double zero_tau = 1e-10;
  const auto zeros = lo > zero_tau * sup ? std::vector<cplx>{} : detail::circle_zeros(a, zero_tau);
  if (!zeros.empty()) {
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    std::vector<cplx> qroots;
    for (const auto& u : zeros) {
      while (c.size() >= 3) {
        auto trial = c;
        const double scale = detail::coeff_l1(trial);
        const cplx r1 = detail::deflate(trial, u);
        const cplx r2 = detail::deflate(trial, u);
        if (std::abs(r1) > 1e-8 * scale || std::abs(r2) > 1e-8 * scale) break;
        c = std::move(trial);
        qroots.push_back(u);
      }
    }
    int inside = 0, outside = 0;
    if (c.size() > 1) {
      for (const auto& z : poly_roots(c)) {
        if (std::abs(z) < 1.0) {
          ++inside;
          qroots.push_back(z);
        } else {
          ++outside;
        }
      }
    }
    if (inside == outside) consider(qroots);
  }

  for (double radius : detail::kClusterRadii) {
    if (best_residual <= good_enough) break;
    std::vector<cplx> qroots;
    int inside = 0, outside = 0;
    bool ok = true;
    for (const auto& cl : cluster_roots(roots, radius)) {
      const cplx center = refine_multiple_root(a.coeffs(), cl.center, cl.multiplicity);
      if (on_circle(center, kCircleTol)) {
        if (cl.multiplicity % 2 != 0) { ok = false; break; }
        const cplx u = center / std::abs(center);
        qroots.insert(qroots.end(), static_cast<std::size_t>(cl.multiplicity / 2), u);
      } else if (std::abs(center) < 1.0) {
        inside += cl.multiplicity;
        qroots.insert(qroots.end(), cl.members.begin(), cl.members.end());
      } else {
        outside += cl.multiplicity;
      }
    }
    if (!ok || inside != outside) continue;
    consider(qroots);
  }
  require(best.has_value(), ErrorKind::numerical,
          "fejer_riesz_factorize: odd-multiplicity root on the circle (input numerically not positive)");
  return *best;
}

}  // namespace toepsys
