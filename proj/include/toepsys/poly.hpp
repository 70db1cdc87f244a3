#pragma once

// Polynomial root finding via companion-matrix eigenvalues, plus the
// clustering used to recover multiple roots that split numerically.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "toepsys/error.hpp"

namespace toepsys {

/// Default acceptance band for "lies on the unit circle": |log|z|| <= 1e-8.
inline constexpr double kCircleTol = 1e-8;

inline bool on_circle(cplx z, double tol = kCircleTol) {
  return std::abs(z) > 0.0 && std::abs(std::log(std::abs(z))) <= tol;
}

/// Evaluates c_0 + c_1 z + ... + c_d z^d (ascending coefficients).
inline cplx poly_eval(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline cplx poly_deriv_eval(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

namespace detail {

// Parlett-Reinsch balancing (radix 2); eigenvalues are unchanged.
inline void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  const double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i).real()) + std::abs(a(j, i).imag());
        r += std::abs(a(i, j).real()) + std::abs(a(i, j).imag());
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) { f *= radix; c *= radix * radix; }
      g = r * radix;
      while (c > g) { f /= radix; c /= radix * radix; }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace detail

/// Roots (with multiplicity) of the polynomial with ascending coefficients
/// `coeffs`. Coefficients with modulus <= trim_rel * max|c| are treated as
/// zero at both ends; leading zeros lower the degree and trailing zeros
/// contribute roots at z = 0 only when `keep_zero_roots` is set.
inline std::vector<cplx> poly_roots(std::span<const cplx> coeffs,
                                    double trim_rel = 1e-14,
                                    bool keep_zero_roots = false) {
  double cmax = 0.0;
  for (const auto& v : coeffs) cmax = std::max(cmax, std::abs(v));
  require(cmax > 0.0, ErrorKind::invalid_argument, "poly_roots: zero polynomial");
  const double thresh = trim_rel * cmax;

  std::size_t lo = 0, hi = coeffs.size();
  while (lo < hi && std::abs(coeffs[lo]) <= thresh) ++lo;
  while (hi > lo && std::abs(coeffs[hi - 1]) <= thresh) --hi;

  std::vector<cplx> roots;
  if (keep_zero_roots) roots.assign(lo, cplx(0.0));
  const std::span<const cplx> c = coeffs.subspan(lo, hi - lo);
  const Eigen::Index deg = static_cast<Eigen::Index>(c.size()) - 1;
  if (deg <= 0) return roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(deg)];
  detail::balance(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  require(es.info() == Eigen::Success, ErrorKind::numerical, "poly_roots: eigenvalue iteration failed");
  std::vector<cplx> found(es.eigenvalues().data(), es.eigenvalues().data() + deg);

  // Newton polish; a step is kept only if it lowers |p| and stays closer to
  // its start than to any other root, so clusters are never merged.
  for (std::size_t i = 0; i < found.size(); ++i) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < found.size(); ++j)
      if (j != i) sep = std::min(sep, std::abs(found[j] - found[i]));
    cplx z = found[i];
    double pz = std::abs(poly_eval(c, z));
    for (int it = 0; it < 4 && pz > 0.0; ++it) {
      const cplx d = poly_deriv_eval(c, z);
      if (d == cplx(0.0)) break;
      const cplx z2 = z - poly_eval(c, z) / d;
      const double p2 = std::abs(poly_eval(c, z2));
      if (!(p2 < pz) || std::abs(z2 - found[i]) > 0.25 * sep) break;
      z = z2;
      pz = p2;
    }
    found[i] = z;
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

struct RootCluster {
  cplx center;        ///< arithmetic mean of the members
  int multiplicity;
  std::vector<cplx> members;
};

/// Single-linkage clustering: roots closer than `radius` share a cluster.
inline std::vector<RootCluster> cluster_roots(std::span<const cplx> roots, double radius) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);

  std::vector<RootCluster> out;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.push_back({cplx(0.0), 0, {}});
    }
    auto& cl = out[static_cast<std::size_t>(slot[r])];
    cl.members.push_back(roots[i]);
    ++cl.multiplicity;
  }
  for (auto& cl : out) {
    cplx s = 0.0;
    for (const auto& m : cl.members) s += m;
    cl.center = s / static_cast<double>(cl.multiplicity);
  }
  return out;
}

/// Ascending coefficients of the k-th derivative.
inline std::vector<cplx> poly_derivative(std::span<const cplx> c, int k = 1) {
  std::vector<cplx> d(c.begin(), c.end());
  for (int step = 0; step < k && !d.empty(); ++step) {
    for (std::size_t j = 1; j < d.size(); ++j) d[j - 1] = static_cast<double>(j) * d[j];
    d.pop_back();
  }
  return d;
}

/// Sharpens the centre of a cluster of `m` roots: a root of multiplicity m
/// is a simple root of p^{(m-1)}, so Newton on that derivative converges to
/// near machine precision where the individual members cannot.
inline cplx refine_multiple_root(std::span<const cplx> c, cplx z, int m) {
  if (m <= 1) return z;
  const auto d = poly_derivative(c, m - 1);
  if (d.size() < 2) return z;
  double best = std::abs(poly_eval(d, z));
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const cplx slope = poly_deriv_eval(d, z);
    if (slope == cplx(0.0)) break;
    const cplx next = z - poly_eval(d, z) / slope;
    const double v = std::abs(poly_eval(d, next));
    if (!(v < best)) break;
    z = next;
    best = v;
  }
  return z;
}

/// Ascending coefficients of prod_i (z - r_i).
inline std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{cplx(1.0)};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace toepsys
