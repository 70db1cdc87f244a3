#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "toepsys/circulant.hpp"

using namespace toepsys;
using namespace toepsys::testing;

namespace {

std::vector<cplx> delta(int m, int k) {
  std::vector<cplx> v(static_cast<std::size_t>(m), cplx(0.0));
  v[static_cast<std::size_t>(k)] = 1.0;
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double norm2(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

CirculantMatrix random_circulant(Rng& rng, int m) { return {m, random_vector(rng, m)}; }

}  // namespace

TEST(FourierTransform, Examples) {
  for (int m = 1; m <= 7; ++m) EXPECT_LT(max_diff(fourier_transform(delta(m, 0)), std::vector<cplx>(m, 1.0)), 1e-15);
  const cplx xi = std::conj(std::polar(1.0, 2 * std::numbers::pi / 3));
  EXPECT_LT(max_diff(fourier_transform(delta(3, 1)), {1.0, xi, xi * xi}), 1e-15);
  EXPECT_THROW(fourier_transform(std::vector<cplx>{}), Error);
}

TEST(FourierTransform, PlancherelAndInversion) {
  Rng rng(71);
  for (int m = 1; m <= 40; ++m) {
    const auto f = random_vector(rng, m);
    const auto ff = fourier_transform(f);
    EXPECT_NEAR(norm2(ff), m * norm2(f), 1e-11 * m * norm2(f));
    auto back = inverse_fourier_transform(ff);
    for (auto& v : back) v /= static_cast<double>(m);
    EXPECT_LT(max_diff(back, f), 1e-12);
  }
}

TEST(FourierTransform, ConvolutionTheorem) {
  Rng rng(72);
  for (int m = 1; m <= 30; ++m) {
    const auto f = random_vector(rng, m), g = random_vector(rng, m);
    const auto lhs = fourier_transform(cyclic_convolve(f, g));
    const auto ff = fourier_transform(f), fg = fourier_transform(g);
    std::vector<cplx> rhs(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = ff[k] * fg[k];
    EXPECT_LT(max_diff(lhs, rhs), 1e-10);
  }
}

TEST(GroupPairing, Examples) {
  for (int m = 3; m <= 6; ++m) {
    EXPECT_EQ(group_pairing(delta(m, 0), delta(m, 0)), cplx(1.0));
    EXPECT_EQ(group_pairing(delta(m, 1), delta(m, m - 1)), cplx(1.0));
    EXPECT_EQ(group_pairing(delta(m, 1), delta(m, 1)), cplx(0.0));
  }
  EXPECT_THROW(group_pairing(delta(3, 0), delta(4, 0)), Error);
}

TEST(GroupPairing, FourierCompatibility) {
  Rng rng(73);
  for (int m = 1; m <= 20; ++m) {
    const auto f = random_vector(rng, m), g = random_vector(rng, m);
    const auto ff = fourier_transform(f), fg = fourier_transform(g);
    cplx rhs = 0.0;
    for (std::size_t k = 0; k < ff.size(); ++k) rhs += ff[k] * fg[k];
    EXPECT_NEAR(std::abs(static_cast<double>(m) * group_pairing(f, g) - rhs), 0.0, 1e-11 * m);
  }
}

TEST(Circulant, DenseLayout) {
  const CirculantMatrix c{3, {1.0, 2.0, 3.0}};
  Mat expect(3, 3);
  expect << 1.0, 3.0, 2.0, 2.0, 1.0, 3.0, 3.0, 2.0, 1.0;
  EXPECT_EQ(c.dense(), expect);
  EXPECT_FALSE(c.is_hermitian());
  EXPECT_TRUE((CirculantMatrix{3, {1.0, 2.0, 2.0}}.is_hermitian()));
}

TEST(Circulant, FourierDiagonalization) {
  Rng rng(74);
  for (int m = 1; m <= 64; ++m) {
    const auto c = random_circulant(rng, m);
    const Mat u = fourier_unitary(m);
    EXPECT_LT(max_abs_diff(u.adjoint() * u, Mat::Identity(m, m)), 1e-12);
    const Mat d = u * c.dense() * u.adjoint();
    const auto ev = circulant_eigenvalues(c);
    Mat expect = Mat::Zero(m, m);
    for (int k = 0; k < m; ++k) expect(k, k) = ev[static_cast<std::size_t>(k)];
    EXPECT_LT(max_abs_diff(d, expect), 1e-10) << "m=" << m;
  }
}

TEST(Circulant, EigenvaluesDirectSum) {
  Rng rng(75);
  const int m = 9;
  const auto c = random_circulant(rng, m);
  const cplx xi = std::conj(root_of_unity(m));
  const auto ev = circulant_eigenvalues(c);
  for (int k = 0; k < m; ++k) {
    cplx s = 0.0;
    for (int l = 0; l < m; ++l) s += c.c[static_cast<std::size_t>(l)] * std::pow(xi, k * l);
    EXPECT_NEAR(std::abs(ev[static_cast<std::size_t>(k)] - s), 0.0, 1e-12);
    // the Fourier column is an eigenvector
    Vec f(m);
    for (int l = 0; l < m; ++l) f(l) = std::pow(std::conj(xi), k * l);
    EXPECT_LT((c.dense() * f - s * f).norm(), 1e-11);
  }
}

TEST(CompleteToeplitz, Examples) {
  const cplx t0 = 1.0, t1(0.5, 0.25), tm1(-0.3, 0.1);
  const auto t = toeplitz_from_coeffs({tm1, t0, t1});
  const auto c = complete_toeplitz(t, 3);
  EXPECT_EQ(c.c, (std::vector<cplx>{t0, t1, tm1}));
  EXPECT_EQ(Mat(c.dense().topLeftCorner(2, 2)), t.dense());

  for (int m = 1; m <= 6; ++m) {
    const auto id = complete_toeplitz(toeplitz_identity(1), m);
    EXPECT_EQ(id.dense(), Mat(Mat::Identity(m, m)));
  }
  EXPECT_EQ(complete_toeplitz(toeplitz_identity(3), 7).dense(), Mat(Mat::Identity(7, 7)));
  EXPECT_THROW(complete_toeplitz(toeplitz_identity(3), 4), Error);
  EXPECT_THROW(compress_circulant(CirculantMatrix{3, {1.0, 0.0, 0.0}}, 4), Error);
}

TEST(CompleteToeplitz, RoundTripAndCorner) {
  Rng rng(76);
  for (int n = 1; n <= 10; ++n) {
    const ToeplitzMatrix t(random_vector(rng, 2 * n - 1));
    for (int m : {2 * n - 1, 2 * n, 3 * n}) {
      const auto c = complete_toeplitz(t, m);
      EXPECT_EQ(compress_circulant(c, n), t);
      EXPECT_EQ(Mat(c.dense().topLeftCorner(n, n)), t.dense());
    }
    const auto h = random_hermitian_toeplitz(rng, n);
    EXPECT_TRUE(complete_toeplitz(h, 2 * n + 1).is_hermitian());
  }
}

TEST(CompressCirculant, PositivityPreserved) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 12;
    // positive circulant: nonnegative spectrum
    std::vector<cplx> spectrum(static_cast<std::size_t>(m));
    for (auto& v : spectrum) v = std::abs(random_complex(rng).real());
    auto c = inverse_fourier_transform(spectrum);
    for (auto& v : c) v /= static_cast<double>(m);
    const CirculantMatrix pc{m, c};
    for (int n = 1; n <= m; ++n) EXPECT_TRUE(is_positive(compress_circulant(pc, n), 1e-10).positive);
  }
  EXPECT_EQ(compress_circulant(CirculantMatrix{4, {1.0, 0.0, 0.0, 0.0}}, 3), toeplitz_identity(3));
}

TEST(TensorMapRank, PrimeOrderIsBijective) {
  for (int n : {2, 3, 4, 6, 7}) EXPECT_EQ(tensor_map_rank(n), (2 * n - 1) * (2 * n - 1)) << "n=" << n;
  EXPECT_THROW(tensor_map_rank(1), Error);
}

TEST(TensorMapRank, CompositeOrder) {
  // m = 9 and m = 15: the map is not onto.
  EXPECT_LT(tensor_map_rank(5), 81);
  EXPECT_LT(tensor_map_rank(8), 225);
}
