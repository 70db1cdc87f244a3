#pragma once

// Caratheodory-Vandermonde decomposition T = sum_i d_i gamma(lambda_i) of a
// positive Toeplitz matrix, and the rank stratification of the boundary of
// the cone through the multiplicity of det.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "toepsys/core.hpp"
#include "toepsys/poly.hpp"

namespace toepsys {

struct VandermondeDecomposition {
  int r = 0;
  std::vector<double> angles;   ///< theta_i in [0, 2pi); node lambda_i = e^{i theta_i}
  std::vector<double> weights;  ///< d_i >= 0
};

/// Number of eigenvalues above tol * ||T||.
inline int numeric_rank(const ToeplitzMatrix& t, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(t.dense(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(t.n() - 1)));
  int r = 0;
  for (int i = 0; i < t.n(); ++i) r += ev(i) > tol * norm;
  return r;
}

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

// Orthonormal basis of the eigenspace with eigenvalues <= tol * ||T||.
inline Mat kernel_basis(const ToeplitzMatrix& t, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(t.dense());
  const auto& ev = es.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(t.n() - 1)));
  int dim = 0;
  while (dim < t.n() && ev(dim) <= tol * norm) ++dim;
  return es.eigenvectors().leftCols(dim);
}

// ||K^* f_theta|| and its Gauss-Newton refinement in theta.
inline double kernel_residual(const Mat& k, double theta) {
  return (k.adjoint() * fourier_vector(std::polar(1.0, theta), static_cast<int>(k.rows()))).norm();
}

inline double refine_node(const Mat& k, double theta) {
  const int n = static_cast<int>(k.rows());
  double best = kernel_residual(k, theta);
  for (int it = 0; it < 6 && best > 0.0; ++it) {
    const Vec f = fourier_vector(std::polar(1.0, theta), n);
    Vec df(n);
    for (int j = 0; j < n; ++j) df(j) = cplx(0.0, j) * f(j);
    const Vec res = k.adjoint() * f;
    const Vec jac = k.adjoint() * df;
    const double denom = jac.squaredNorm();
    if (denom == 0.0) break;
    const double next = theta - (jac.adjoint() * res)(0).real() / denom;
    const double v = kernel_residual(k, next);
    if (!(v < best)) break;
    theta = next;
    best = v;
  }
  return theta;
}

// The r nodes annihilating every column of K: roots of the polynomial
// sum_k conj(xi_k) z^k for a random combination xi of the columns, ranked
// by distance to the circle and kernel residual, then polished.
inline std::vector<double> common_nodes(const Mat& k, int r, unsigned seed, double accept) {
  const int n = static_cast<int>(k.rows());
  if (r == 0) return {};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vec xi = Vec::Zero(n);
  for (Eigen::Index j = 0; j < k.cols(); ++j) xi += cplx(g(rng), g(rng)) * k.col(j);
  std::vector<cplx> coeffs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(j)] = std::conj(xi(j));
  const auto roots = poly_roots(coeffs);
  require(static_cast<int>(roots.size()) >= r, ErrorKind::numerical,
          "kernel polynomial has fewer roots than the rank");

  std::vector<std::pair<double, double>> scored;  // (score, angle)
  for (const auto& z : roots) {
    const double th = std::arg(z);
    scored.emplace_back(std::max(std::abs(std::log(std::abs(z))), kernel_residual(k, th)), th);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<double> out;
  for (int i = 0; i < r; ++i) {
    const double th = refine_node(k, scored[static_cast<std::size_t>(i)].second);
    require(kernel_residual(k, th) <= accept, ErrorKind::numerical,
            "kernel polynomials have no common root on the circle (input not positive?)");
    out.push_back(wrap_angle(th));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Merges nodes closer than `radius` in circular distance.
inline std::vector<double> merge_angles(std::vector<double> a, double radius) {
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double th : a) {
    if (!out.empty() && th - out.back() <= radius) continue;
    out.push_back(th);
  }
  if (out.size() > 1 && out.front() + kTwoPi - out.back() <= radius) out.pop_back();
  return out;
}

// Real least squares for sum_i d_i lambda_i^k / n = t_k, k = 0..n-1.
inline std::vector<double> fit_weights(const ToeplitzMatrix& t, const std::vector<double>& angles) {
  const int n = t.n();
  const auto r = static_cast<Eigen::Index>(angles.size());
  if (r == 0) return {};
  Eigen::MatrixXd a(2 * n, r);
  Eigen::VectorXd b(2 * n);
  for (int k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < r; ++i) {
      const cplx v = std::polar(1.0 / n, k * angles[static_cast<std::size_t>(i)]);
      a(2 * k, i) = v.real();
      a(2 * k + 1, i) = v.imag();
    }
    b(2 * k) = t[k].real();
    b(2 * k + 1) = t[k].imag();
  }
  const Eigen::VectorXd d = a.colPivHouseholderQr().solve(b);
  return {d.data(), d.data() + r};
}

inline ToeplitzMatrix sum_of_rays(const std::vector<double>& angles, const std::vector<double>& weights, int n) {
  ToeplitzMatrix t(n);
  for (std::size_t i = 0; i < angles.size(); ++i) t = t + weights[i] * extreme_ray_at(angles[i], n);
  return t;
}

// Angle radius for coalescing numerically split nodes.
inline constexpr double kNodeMergeRadius = 1e-6;

}  // namespace detail

/// Nodes lambda_i of a singular positive T: the common circle roots of the
/// polynomials sum_k conj(xi_k) z^k, xi in Ker T.
inline std::vector<cplx> kernel_roots(const ToeplitzMatrix& t, double tol = 1e-9, unsigned seed = 0) {
  require(t.is_hermitian(), ErrorKind::not_hermitian, "kernel_roots: matrix is not hermitian");
  require(is_positive(t, tol).positive, ErrorKind::not_positive, "kernel_roots: matrix is not positive");
  const Mat k = detail::kernel_basis(t, tol);
  require(k.cols() > 0, ErrorKind::precondition, "kernel_roots: matrix is nonsingular");
  const int r = t.n() - static_cast<int>(k.cols());
  std::vector<cplx> out;
  for (double th : detail::common_nodes(k, r, seed, 1e-6)) out.push_back(std::polar(1.0, th));
  return out;
}

namespace detail {

inline VandermondeDecomposition finish(const ToeplitzMatrix& t, std::vector<double> angles, double tol) {
  angles = merge_angles(std::move(angles), kNodeMergeRadius);
  auto w = fit_weights(t, angles);
  const double scale = std::max(operator_norm(t), 1e-300);
  for (double& d : w) {
    require(d >= -std::max(tol, 1e-8) * scale, ErrorKind::numerical, "vandermonde_decompose: negative weight");
    d = std::max(d, 0.0);
  }
  VandermondeDecomposition vd;
  vd.r = static_cast<int>(angles.size());
  vd.angles = std::move(angles);
  vd.weights = std::move(w);
  return vd;
}

inline VandermondeDecomposition decompose_singular(const ToeplitzMatrix& t, double tol, unsigned seed) {
  const Mat k = kernel_basis(t, tol);
  const int r = t.n() - static_cast<int>(k.cols());
  return finish(t, common_nodes(k, r, seed, 1e-6), tol);
}

// Peels one extreme ray s* gamma(lambda_hat) off a nonsingular T; the
// remainder has the one-dimensional kernel spanned by T^{-1} f.
inline VandermondeDecomposition decompose_full(const ToeplitzMatrix& t, double tol) {
  const int n = t.n();
  const Mat d = t.dense();
  constexpr int kGrid = 256;
  double best = -std::numeric_limits<double>::infinity(), theta = 0.0;
  for (int g = 0; g < kGrid; ++g) {
    const double th = kTwoPi * g / kGrid;
    const Vec f = fourier_vector(std::polar(1.0, th), n);
    const double v = f.dot(d * f).real();
    if (v > best) {  // strict: ties keep the smallest angle
      best = v;
      theta = th;
    }
  }
  const Vec f = fourier_vector(std::polar(1.0, theta), n);
  const Vec xi = d.ldlt().solve(f);
  const double s = 1.0 / f.dot(xi).real();
  const ToeplitzMatrix rest = t - s * extreme_ray_at(theta, n);

  std::vector<double> angles;
  if (n > 1) angles = common_nodes(xi.normalized(), n - 1, 0, 1e-6);
  auto vd = finish(rest, std::move(angles), tol);
  vd.angles.push_back(theta);
  vd.weights.push_back(s);
  ++vd.r;
  return vd;
}

}  // namespace detail

inline ToeplitzMatrix reconstruct(const VandermondeDecomposition& vd, int n) {
  require(vd.angles.size() == vd.weights.size(), ErrorKind::size_mismatch, "reconstruct: angles/weights length differ");
  for (double w : vd.weights) require(w >= 0.0, ErrorKind::invalid_argument, "reconstruct: negative weight");
  return detail::sum_of_rays(vd.angles, vd.weights, n);
}

/// T = sum_i d_i gamma(lambda_i). Unique for rank <= n-1; at full rank one
/// extreme ray is peeled first. `seed` drives the random kernel combination.
inline VandermondeDecomposition vandermonde_decompose(const ToeplitzMatrix& t, double tol = 1e-9, unsigned seed = 0) {
  require(t.is_hermitian(), ErrorKind::not_hermitian, "vandermonde_decompose: matrix is not hermitian");
  require(is_positive(t, tol).positive, ErrorKind::not_positive, "vandermonde_decompose: matrix is not positive");
  const int n = t.n();
  if (t.max_abs() == 0.0) return {};
  const double norm = operator_norm(t);
  const int rank = numeric_rank(t, tol);
  if (rank < n) {
    try {
      auto vd = detail::decompose_singular(t, tol, seed);
      const double res = (reconstruct(vd, n).dense() - t.dense()).norm();
      if (res <= 1e-8 * norm) return vd;
    } catch (const Error&) {
      // fall through to peeling when the kernel is only numerically present
    }
    require(is_positive(t, 0.0).min_eigenvalue > 0.0, ErrorKind::numerical,
            "vandermonde_decompose: kernel nodes do not reconstruct the matrix");
  }
  return detail::decompose_full(t, tol);
}

/// 1 / <f_lambda, T^{-1} f_lambda>: the largest s with T - s gamma(lambda) >= 0.
inline double peel_weight(const ToeplitzMatrix& t, cplx lambda) {
  const Vec f = fourier_vector(lambda / std::abs(lambda), t.n());
  return 1.0 / f.dot(t.dense().ldlt().solve(f)).real();
}

/// Order m of vanishing of det at T along generic hermitian Toeplitz
/// directions E: the lowest nonzero coefficient of s -> det(T + sE). The
/// coefficients are read off by a discrete Fourier transform of det on the
/// circle |s| = radius (default: ||T||, or 1 for T = 0).
inline int det_multiplicity(const ToeplitzMatrix& t, int max_k = 4, double radius = 0.0, unsigned seed = 0) {
  require(t.is_hermitian(), ErrorKind::not_hermitian, "det_multiplicity: matrix is not hermitian");
  const int n = t.n();
  double rho = radius;
  if (rho <= 0.0) rho = t.max_abs() > 0.0 ? operator_norm(t) : 1.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Mat td = t.dense();
  const int samples = 2 * (n + 1);
  int best = max_k;
  for (int dir = 0; dir < 3; ++dir) {
    std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1));
    c[static_cast<std::size_t>(n - 1)] = g(rng);
    for (int k = 1; k < n; ++k) {
      c[static_cast<std::size_t>(n - 1 + k)] = cplx(g(rng), g(rng));
      c[static_cast<std::size_t>(n - 1 - k)] = std::conj(c[static_cast<std::size_t>(n - 1 + k)]);
    }
    const ToeplitzMatrix e(std::move(c));
    const Mat ed = e.dense() / operator_norm(e);
    std::vector<cplx> vals(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
      const cplx s = std::polar(rho, detail::kTwoPi * j / samples);
      vals[static_cast<std::size_t>(j)] = Mat(td + s * ed).partialPivLu().determinant();
    }
    // scaled coefficients c_k rho^k
    std::vector<double> mag(static_cast<std::size_t>(n + 1));
    double top = 0.0;
    for (int k = 0; k <= n; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < samples; ++j) acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -detail::kTwoPi * j * k / samples);
      mag[static_cast<std::size_t>(k)] = std::abs(acc) / samples;
      top = std::max(top, mag[static_cast<std::size_t>(k)]);
    }
    int m = 0;
    while (m <= n && mag[static_cast<std::size_t>(m)] <= 1e-9 * top) ++m;
    best = std::min(best, m);
  }
  return best;
}

}  // namespace toepsys
