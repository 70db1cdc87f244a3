#pragma once

// Concrete operator systems inside M_N: spans of products and the
// propagation number.

#include <vector>

#include <Eigen/Dense>

#include "toepsys/core.hpp"

namespace toepsys {

/// Spans a self-adjoint subspace of M_N containing the identity.
struct MatrixSystem {
  int N = 0;
  std::vector<Mat> basis;
};

inline MatrixSystem toeplitz_system(int n) {
  require(n >= 1, ErrorKind::invalid_argument, "toeplitz_system: n must be >= 1");
  MatrixSystem s{n, {}};
  for (int j = -n + 1; j < n; ++j) s.basis.push_back(toeplitz_unit(n, j).dense());
  return s;
}

/// Powers of the cyclic shift S e_k = e_{k+1}.
inline MatrixSystem circulant_system(int m) {
  require(m >= 1, ErrorKind::invalid_argument, "circulant_system: m must be >= 1");
  MatrixSystem s{m, {}};
  for (int k = 0; k < m; ++k) {
    Mat p = Mat::Zero(m, m);
    for (int l = 0; l < m; ++l) p((l + k) % m, l) = 1.0;
    s.basis.push_back(std::move(p));
  }
  return s;
}

/// Matrix units e_{ij}.
inline MatrixSystem full_matrix_system(int n) {
  require(n >= 1, ErrorKind::invalid_argument, "full_matrix_system: n must be >= 1");
  MatrixSystem s{n, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = 1.0;
      s.basis.push_back(std::move(e));
    }
  return s;
}

namespace detail {

/// Orthonormal basis (as columns) of the span of the given columns; singular
/// values below 1e-9 of the largest are dropped.
inline Mat span_basis(const Mat& cols) {
  if (cols.cols() == 0) return Mat(cols.rows(), 0);
  Eigen::BDCSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) return Mat(cols.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-9 * sv(0)) ++rank;
  Mat out = svd.matrixU().leftCols(rank);
  return out;
}

inline Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

inline Mat unflatten(const Vec& v, int n) { return Eigen::Map<const Mat>(v.data(), n, n); }

/// Orthonormal bases of E, E^{o2}, ..., E^{ok}.
inline std::vector<Mat> product_spans(const MatrixSystem& sys, int k) {
  require(k >= 1, ErrorKind::invalid_argument, "product_span_dim: k must be >= 1");
  require(!sys.basis.empty(), ErrorKind::invalid_argument, "product_span_dim: empty basis");
  const int n = sys.N;
  Mat gen(n * n, static_cast<Eigen::Index>(sys.basis.size()));
  for (std::size_t j = 0; j < sys.basis.size(); ++j) {
    require(sys.basis[j].rows() == n && sys.basis[j].cols() == n, ErrorKind::size_mismatch,
            "product_span_dim: basis matrix has wrong size");
    gen.col(static_cast<Eigen::Index>(j)) = flatten(sys.basis[j]);
  }
  std::vector<Mat> spans{span_basis(gen)};
  for (int level = 2; level <= k; ++level) {
    const Mat& prev = spans.back();
    Mat cols(n * n, prev.cols() + prev.cols() * static_cast<Eigen::Index>(sys.basis.size()));
    cols.leftCols(prev.cols()) = prev;
    Eigen::Index c = prev.cols();
    for (Eigen::Index i = 0; i < prev.cols(); ++i) {
      const Mat p = unflatten(prev.col(i), n);
      for (const auto& b : sys.basis) cols.col(c++) = flatten(p * b);
    }
    spans.push_back(span_basis(cols));
  }
  return spans;
}

}  // namespace detail

/// dim span{ products of at most k basis elements }.
inline int product_span_dim(const MatrixSystem& sys, int k) {
  return static_cast<int>(detail::product_spans(sys, k).back().cols());
}

/// Smallest k <= max_k whose product span is closed under multiplication;
/// max_k + 1 when none is.
inline int propagation_number(const MatrixSystem& sys, int max_k) {
  require(max_k >= 1, ErrorKind::invalid_argument, "propagation_number: max_k must be >= 1");
  const auto spans = detail::product_spans(sys, max_k + 1);
  for (int k = 1; k <= max_k; ++k)
    if (spans[static_cast<std::size_t>(k)].cols() == spans[static_cast<std::size_t>(k - 1)].cols()) return k;
  return max_k + 1;
}

}  // namespace toepsys
