#pragma once

// Circulant matrices, the finite Fourier transform on C_m, and the relation
// with Toeplitz matrices.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "toepsys/core.hpp"

namespace toepsys {

/// Dense entry (k, l) is c_{(k - l) mod m}.
struct CirculantMatrix {
  int m = 0;
  std::vector<cplx> c;

  Mat dense() const {
    Mat d(m, m);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) d(k, l) = c[static_cast<std::size_t>(((k - l) % m + m) % m)];
    return d;
  }

  bool is_hermitian() const noexcept {
    double scale = 0.0, defect = 0.0;
    for (int k = 0; k < m; ++k) {
      scale = std::max(scale, std::abs(c[static_cast<std::size_t>(k)]));
      defect = std::max(defect, std::abs(c[static_cast<std::size_t>((m - k) % m)] - std::conj(c[static_cast<std::size_t>(k)])));
    }
    return defect <= detail::kSymmetryTol * std::max(1.0, scale);
  }
};

/// zeta = e^{2 pi i/m}.
inline cplx root_of_unity(int m, long long power = 1) {
  const long long r = ((power % m) + m) % m;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / m);
}

/// F(f)(k) = sum_l f_l conj(zeta)^{kl}.
inline std::vector<cplx> fourier_transform(std::span<const cplx> f) {
  const int m = static_cast<int>(f.size());
  require(m >= 1, ErrorKind::invalid_argument, "fourier_transform: empty sequence");
  std::vector<cplx> out(f.size(), cplx(0.0));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      out[static_cast<std::size_t>(k)] += f[static_cast<std::size_t>(l)] * root_of_unity(m, -static_cast<long long>(k) * l);
  return out;
}

/// Same sum with zeta in place of conj(zeta).
inline std::vector<cplx> inverse_fourier_transform(std::span<const cplx> f) {
  std::vector<cplx> c(f.begin(), f.end());
  for (auto& v : c) v = std::conj(v);
  auto out = fourier_transform(c);
  for (auto& v : out) v = std::conj(v);
  return out;
}

/// (f * g)(k) = sum_l f_{k-l} g_l.
inline std::vector<cplx> cyclic_convolve(std::span<const cplx> f, std::span<const cplx> g) {
  require(f.size() == g.size(), ErrorKind::size_mismatch, "cyclic_convolve: lengths differ");
  const int m = static_cast<int>(f.size());
  std::vector<cplx> out(f.size(), cplx(0.0));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      out[static_cast<std::size_t>(k)] += f[static_cast<std::size_t>(((k - l) % m + m) % m)] * g[static_cast<std::size_t>(l)];
  return out;
}

/// <f, g> = (f * g)(0) = sum_l f_l g_{-l mod m}.
inline cplx group_pairing(std::span<const cplx> f, std::span<const cplx> g) {
  require(f.size() == g.size(), ErrorKind::size_mismatch, "group_pairing: lengths differ");
  const std::size_t m = f.size();
  cplx s = 0.0;
  for (std::size_t l = 0; l < m; ++l) s += f[l] * g[(m - l) % m];
  return s;
}

/// U = m^{-1/2} F as a matrix, U(k, l) = conj(zeta)^{kl} / sqrt(m).
inline Mat fourier_unitary(int m) {
  require(m >= 1, ErrorKind::invalid_argument, "fourier_unitary: m must be >= 1");
  Mat u(m, m);
  const double s = 1.0 / std::sqrt(static_cast<double>(m));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) u(k, l) = s * root_of_unity(m, -static_cast<long long>(k) * l);
  return u;
}

/// Eigenvalue k is sum_l c_l xi^{kl}, xi = conj(zeta): the Fourier transform of c.
inline std::vector<cplx> circulant_eigenvalues(const CirculantMatrix& c) { return fourier_transform(c.c); }

/// Circulant of size m whose upper-left n x n corner is T; free
/// coefficients are zero.
inline CirculantMatrix complete_toeplitz(const ToeplitzMatrix& t, int m) {
  const int n = t.n();
  require(m >= 2 * n - 1, ErrorKind::invalid_argument, "complete_toeplitz: m must be >= 2n-1");
  CirculantMatrix c{m, std::vector<cplx>(static_cast<std::size_t>(m), cplx(0.0))};
  for (int k = 0; k < n; ++k) c.c[static_cast<std::size_t>(k)] = t[k];
  for (int k = 1; k < n; ++k) c.c[static_cast<std::size_t>(m - k)] = t[-k];
  return c;
}

/// P_n C P_n.
inline ToeplitzMatrix compress_circulant(const CirculantMatrix& c, int n) {
  require(n >= 1 && n <= c.m, ErrorKind::invalid_argument, "compress_circulant: need 1 <= n <= m");
  std::vector<cplx> t(static_cast<std::size_t>(2 * n - 1));
  for (int k = -n + 1; k < n; ++k) t[static_cast<std::size_t>(k + n - 1)] = c.c[static_cast<std::size_t>((k + c.m) % c.m)];
  return ToeplitzMatrix(std::move(t));
}

/// Rank of f (x) T -> sum_k f_k S^k (T + 0_{n-1}) S^{-k} from
/// l^inf(C_{2n-1}) (x) Toep(n) to M_{2n-1}, on the basis delta_k (x) tau_j.
inline int tensor_map_rank(int n) {
  require(n >= 2, ErrorKind::invalid_argument, "tensor_map_rank: n must be >= 2");
  const int m = 2 * n - 1;
  Mat map(m * m, m * m);
  int col = 0;
  for (int j = -n + 1; j < n; ++j) {
    Mat block = Mat::Zero(m, m);
    block.topLeftCorner(n, n) = toeplitz_unit(n, j).dense();
    for (int k = 0; k < m; ++k) {
      // (S^k X S^{-k})(a, b) = X(a - k, b - k)
      Mat conj(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) conj(a, b) = block(((a - k) % m + m) % m, ((b - k) % m + m) % m);
      map.col(col++) = Eigen::Map<const Vec>(conj.data(), m * m);
    }
  }
  Eigen::JacobiSVD<Mat> svd(map);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 * s(0)) ++rank;
  return rank;
}

}  // namespace toepsys
