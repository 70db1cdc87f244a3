#pragma once

// Toeplitz matrices, Fejer-Riesz elements and the duality pairing between
// them.
//
// Both types store a coefficient sequence indexed k = -n+1 .. n-1 in
// ascending order of k; this ordering is used in memory and in every file
// format. Entry (k, l) of the dense n x n Toeplitz matrix is t_{k-l}, so
// t_1 sits just below the diagonal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "toepsys/error.hpp"
#include "toepsys/poly.hpp"

namespace toepsys {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

namespace detail {

class CenteredSequence {
 public:
  CenteredSequence() = default;

  explicit CenteredSequence(int n) : n_(n) {
    require(n >= 1, ErrorKind::invalid_argument, "size must be at least 1");
    c_.assign(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
  }

  explicit CenteredSequence(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    require(!c_.empty() && c_.size() % 2 == 1, ErrorKind::invalid_argument,
            "coefficient sequence must have odd length 2n-1, got " + std::to_string(c_.size()));
    n_ = static_cast<int>((c_.size() + 1) / 2);
  }

  int n() const noexcept { return n_; }
  std::span<const cplx> coeffs() const noexcept { return c_; }

  /// Coefficient of index k; zero outside |k| <= n-1.
  cplx operator[](int k) const noexcept {
    if (k <= -n_ || k >= n_) return cplx(0.0);
    return c_[static_cast<std::size_t>(k + n_ - 1)];
  }

  /// Max |c_{-k} - conj(c_k)| over k.
  double hermitian_defect() const noexcept {
    double d = 0.0;
    for (int k = 0; k < n_; ++k) d = std::max(d, std::abs((*this)[-k] - std::conj((*this)[k])));
    return d;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  friend bool operator==(const CenteredSequence&, const CenteredSequence&) = default;

 protected:
  cplx& at_mut(int k) { return c_[static_cast<std::size_t>(k + n_ - 1)]; }

  int n_ = 0;
  std::vector<cplx> c_;
};

// Relative tolerance for the structural hermitian / palindromic flags.
inline constexpr double kSymmetryTol = 1e-12;

}  // namespace detail

class ToeplitzMatrix : public detail::CenteredSequence {
 public:
  using CenteredSequence::CenteredSequence;

  /// t_{-k} == conj(t_k) for all k, up to 1e-12 relative to max |t_k|.
  bool is_hermitian() const noexcept {
    return hermitian_defect() <= detail::kSymmetryTol * max_abs();
  }

  Mat dense() const {
    Mat m(n_, n_);
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l) m(k, l) = (*this)[k - l];
    return m;
  }

  /// Reads coefficients off a dense matrix (first column and first row).
  static ToeplitzMatrix from_dense(const Mat& m) {
    require(m.rows() == m.cols() && m.rows() >= 1, ErrorKind::invalid_argument,
            "from_dense: square matrix required");
    const int n = static_cast<int>(m.rows());
    std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1));
    for (int k = -n + 1; k < n; ++k)
      c[static_cast<std::size_t>(k + n - 1)] = k >= 0 ? m(k, 0) : m(0, -k);
    return ToeplitzMatrix(std::move(c));
  }

  friend ToeplitzMatrix operator+(const ToeplitzMatrix& a, const ToeplitzMatrix& b) {
    require(a.n() == b.n(), ErrorKind::size_mismatch, "Toeplitz sum: size mismatch");
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
    return ToeplitzMatrix(std::move(c));
  }
  friend ToeplitzMatrix operator-(const ToeplitzMatrix& a, const ToeplitzMatrix& b) {
    return a + (-1.0) * b;
  }
  friend ToeplitzMatrix operator*(cplx s, const ToeplitzMatrix& a) {
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& v : c) v *= s;
    return ToeplitzMatrix(std::move(c));
  }
};

class FRElement : public detail::CenteredSequence {
 public:
  using CenteredSequence::CenteredSequence;

  /// (a*)_k = conj(a_{-k}).
  FRElement adjoint() const {
    FRElement out(n_);
    for (int k = -n_ + 1; k < n_; ++k) out.at_mut(k) = std::conj((*this)[-k]);
    return out;
  }

  /// Palindromic up to 1e-12 relative.
  bool is_self_adjoint() const noexcept {
    return hermitian_defect() <= detail::kSymmetryTol * max_abs();
  }

  /// Sum_k a_k e^{ik theta}.
  cplx evaluate(double theta) const {
    const cplx z = std::polar(1.0, theta);
    return poly_eval(coeffs(), z) * std::pow(z, -(n_ - 1));
  }

  /// Element with support 0..len-1 carrying `xi`; support bound len.
  static FRElement from_causal(std::span<const cplx> xi) {
    require(!xi.empty(), ErrorKind::invalid_argument, "from_causal: empty vector");
    FRElement out(static_cast<int>(xi.size()));
    for (std::size_t k = 0; k < xi.size(); ++k) out.at_mut(static_cast<int>(k)) = xi[k];
    return out;
  }

  /// Same coefficients with support bound m; shrinking requires the
  /// dropped coefficients to be exactly zero.
  FRElement with_bound(int m) const {
    FRElement out(m);
    for (int k = -n_ + 1; k < n_; ++k) {
      if (k > -m && k < m) {
        out.at_mut(k) = (*this)[k];
      } else {
        require((*this)[k] == cplx(0.0), ErrorKind::invalid_argument,
                "with_bound: nonzero coefficient outside the new support");
      }
    }
    return out;
  }

  static FRElement delta(int n, int k = 0) {
    require(k > -n && k < n, ErrorKind::invalid_argument, "delta: index outside support");
    FRElement out(n);
    out.at_mut(k) = 1.0;
    return out;
  }

  friend FRElement operator+(const FRElement& a, const FRElement& b) {
    require(a.n() == b.n(), ErrorKind::size_mismatch, "FRElement sum: size mismatch");
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
    return FRElement(std::move(c));
  }
  friend FRElement operator-(const FRElement& a, const FRElement& b) { return a + (-1.0) * b; }
  friend FRElement operator*(cplx s, const FRElement& a) {
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& v : c) v *= s;
    return FRElement(std::move(c));
  }
};

inline ToeplitzMatrix toeplitz_from_coeffs(std::vector<cplx> t) {
  require(!t.empty() && t.size() % 2 == 1, ErrorKind::invalid_argument,
          "toeplitz_from_coeffs: length must be 2n-1, got " + std::to_string(t.size()));
  return ToeplitzMatrix(std::move(t));
}

inline ToeplitzMatrix toeplitz_identity(int n) {
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
  c[static_cast<std::size_t>(n - 1)] = 1.0;
  return ToeplitzMatrix(std::move(c));
}

/// tau_j: ones on diagonal j (t_j = 1), zeros elsewhere.
inline ToeplitzMatrix toeplitz_unit(int n, int j) {
  require(j > -n && j < n, ErrorKind::invalid_argument, "toeplitz_unit: diagonal outside range");
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
  c[static_cast<std::size_t>(j + n - 1)] = 1.0;
  return ToeplitzMatrix(std::move(c));
}

/// Compression P_n f P_n of a circle function given by Fourier coefficients.
inline ToeplitzMatrix compress_symbol(const std::map<int, cplx>& fourier, int n) {
  require(n >= 1, ErrorKind::invalid_argument, "compress_symbol: n must be >= 1");
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
  for (const auto& [k, v] : fourier)
    if (k > -n && k < n) c[static_cast<std::size_t>(k + n - 1)] = v;
  return ToeplitzMatrix(std::move(c));
}

struct PositivityResult {
  bool positive;
  double min_eigenvalue;
};

/// Largest singular value of the dense matrix.
inline double operator_norm(const ToeplitzMatrix& t) {
  if (t.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(t.dense(), Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(t.n() - 1)));
  }
  Eigen::JacobiSVD<Mat> svd(t.dense());
  return svd.singularValues()(0);
}

/// T >= 0 iff lambda_min >= -tol * ||T||.
inline PositivityResult is_positive(const ToeplitzMatrix& t, double tol) {
  require(t.is_hermitian(), ErrorKind::not_hermitian, "is_positive: matrix is not hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(t.dense(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lmin = ev(0);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(t.n() - 1)));
  return {lmin >= -tol * norm, lmin};
}

/// phi_T(a) = sum_k a_k t_{-k}.
inline cplx pairing(const ToeplitzMatrix& t, const FRElement& a) {
  require(t.n() == a.n(), ErrorKind::size_mismatch,
          "pairing: sizes differ (" + std::to_string(t.n()) + " vs " + std::to_string(a.n()) + ")");
  cplx s = 0.0;
  for (int k = -a.n() + 1; k < a.n(); ++k) s += a[k] * t[-k];
  return s;
}

/// (a * b)_j = sum_k a_k b_{j-k}; support bound grows to n_a + n_b - 1.
inline FRElement fr_convolve(const FRElement& a, const FRElement& b) {
  const int n = a.n() + b.n() - 1;
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
  for (int i = -a.n() + 1; i < a.n(); ++i) {
    if (a[i] == cplx(0.0)) continue;
    for (int j = -b.n() + 1; j < b.n(); ++j) c[static_cast<std::size_t>(i + j + n - 1)] += a[i] * b[j];
  }
  return FRElement(std::move(c));
}

/// xi* * xi for xi supported in 0..n-1, returned with support bound n.
inline FRElement autocorrelation(std::span<const cplx> xi) {
  const auto x = FRElement::from_causal(xi);
  return fr_convolve(x.adjoint(), x).with_bound(x.n());
}

namespace detail {

// Candidate angles for extrema of a trigonometric polynomial: arguments of
// every root of its derivative plus an equispaced grid, each refined by a
// couple of safeguarded Newton steps on p'.
inline std::vector<double> stationary_angles(const FRElement& a) {
  const int n = a.n();
  std::vector<double> out;
  const int grid = std::max(8, 2 * n - 1);
  for (int g = 0; g < grid; ++g) out.push_back(2.0 * std::numbers::pi * g / grid);
  std::vector<cplx> d(static_cast<std::size_t>(2 * n - 1));
  bool any = false;
  for (int k = -n + 1; k < n; ++k) {
    d[static_cast<std::size_t>(k + n - 1)] = cplx(0.0, k) * a[k];
    any = any || d[static_cast<std::size_t>(k + n - 1)] != cplx(0.0);
  }
  if (!any) return out;
  for (const auto& z : poly_roots(d)) out.push_back(std::arg(z));
  return out;
}

inline double refine_extremum(const FRElement& a, double theta, bool minimize) {
  auto value = [&](double th) { return a.evaluate(th).real(); };
  double best = value(theta);
  for (int it = 0; it < 3; ++it) {
    cplx d1 = 0.0, d2 = 0.0;
    const cplx z = std::polar(1.0, theta);
    cplx zk = std::pow(std::conj(z), a.n() - 1);
    for (int k = -a.n() + 1; k < a.n(); ++k, zk *= z) {
      const cplx t = a[k] * zk;
      d1 += cplx(0.0, k) * t;
      d2 += -static_cast<double>(k) * k * t;
    }
    if (d2.real() == 0.0) break;
    const double next = theta - d1.real() / d2.real();
    const double v = value(next);
    if (minimize ? !(v < best) : !(v > best)) break;
    theta = next;
    best = v;
  }
  return best;
}

/// (min, max) over the circle from one set of stationary angles.
inline std::pair<double, double> fr_extrema(const FRElement& a) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double th : stationary_angles(a)) {
    lo = std::min(lo, refine_extremum(a, th, true));
    hi = std::max(hi, refine_extremum(a, th, false));
  }
  return {lo, hi};
}

}  // namespace detail

/// Minimum over the circle of the (real part of the) trigonometric polynomial.
inline double fr_min_value(const FRElement& a) {
  double m = std::numeric_limits<double>::infinity();
  for (double th : detail::stationary_angles(a)) m = std::min(m, detail::refine_extremum(a, th, true));
  return m;
}

inline double fr_max_value(const FRElement& a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double th : detail::stationary_angles(a)) m = std::max(m, detail::refine_extremum(a, th, false));
  return m;
}

/// sup over the circle of |sum_k a_k e^{ik theta}| (the C(S^1) norm).
inline double fr_sup_norm(const FRElement& a) {
  if (a.is_self_adjoint()) {
    const auto [lo, hi] = detail::fr_extrema(a);
    return std::max(std::abs(lo), std::abs(hi));
  }
  return std::sqrt(std::max(0.0, fr_max_value(fr_convolve(a.adjoint(), a))));
}

/// Positive iff min_theta a(theta) >= -tol * ||a||.
inline bool fr_is_positive(const FRElement& a, double tol) {
  require(a.is_self_adjoint(), ErrorKind::not_self_adjoint, "fr_is_positive: element is not palindromic");
  const auto [lo, hi] = detail::fr_extrema(a);
  return lo >= -tol * std::max(std::abs(lo), std::abs(hi));
}

/// Circle action (a_k) -> (lambda^k a_k) with lambda = e^{i alpha}.
inline FRElement rotate(const FRElement& a, double alpha) {
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (int k = -a.n() + 1; k < a.n(); ++k) c[static_cast<std::size_t>(k + a.n() - 1)] *= std::polar(1.0, k * alpha);
  return FRElement(std::move(c));
}

/// f_z = (1, z, ..., z^{n-1}) / sqrt(n).
inline Vec fourier_vector(cplx z, int n) {
  Vec v(n);
  cplx p = 1.0;
  for (int j = 0; j < n; ++j) {
    v(j) = p / std::sqrt(static_cast<double>(n));
    p *= z;
  }
  return v;
}

/// gamma(lambda) = |f_lambda><f_lambda|, entries lambda^{k-l}/n.
inline ToeplitzMatrix extreme_ray(cplx lambda, int n) {
  require(std::abs(std::abs(lambda) - 1.0) <= 1e-12, ErrorKind::invalid_argument,
          "extreme_ray: node must lie on the unit circle");
  const cplx u = lambda / std::abs(lambda);
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1));
  cplx p = 1.0;
  for (int k = 0; k < n; ++k) {
    c[static_cast<std::size_t>(k + n - 1)] = p / static_cast<double>(n);
    c[static_cast<std::size_t>(-k + n - 1)] = std::conj(p) / static_cast<double>(n);
    p *= u;
  }
  return ToeplitzMatrix(std::move(c));
}

inline ToeplitzMatrix extreme_ray_at(double angle, int n) { return extreme_ray(std::polar(1.0, angle), n); }

}  // namespace toepsys
