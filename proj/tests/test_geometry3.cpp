#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "test_util.hpp"
#include "toepsys/geometry3.hpp"

using namespace toepsys;
using namespace toepsys::testing;
using std::numbers::pi;

namespace {

// disc(P) = Res(P, P') / lead(P) for a quartic (sign (-1)^{4*3/2} = +1),
// with the resultant as a 7 x 7 Sylvester determinant.
double sylvester_discriminant(const std::array<double, 5>& p) {
  const std::array<double, 4> dp{4 * p[0], 3 * p[1], 2 * p[2], p[3]};
  Eigen::Matrix<double, 7, 7> s = Eigen::Matrix<double, 7, 7>::Zero();
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 5; ++k) s(r, r + k) = p[static_cast<std::size_t>(k)];
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) s(3 + r, r + k) = dp[static_cast<std::size_t>(k)];
  return s.determinant() / p[0];
}

ConeCoords random_cone(Rng& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST(Delta, Examples) {
  EXPECT_EQ(delta(ConeCoords{}), 1.0);
  Rng rng(91);
  for (int i = 0; i < 100; ++i) {
    const double x = random_angle(rng), y = random_angle(rng);
    EXPECT_NEAR(delta(gamma_curve(x)), 0.0, 1e-13);
    EXPECT_NEAR(delta(sigma(x, y, std::uniform_real_distribution<double>(0, 1)(rng))), 0.0, 1e-12);
  }
}

TEST(Delta, DeterminantBridge) {
  Rng rng(92);
  for (int i = 0; i < 500; ++i) {
    auto p = random_cone(rng);
    EXPECT_NEAR(cone_determinant(p), to_toeplitz(p).dense().determinant().real(), 1e-12);
    p.u = 1.0;
    EXPECT_NEAR(delta(p), to_toeplitz(p).dense().determinant().real(), 1e-12);
  }
}

TEST(Delta, GradientMatchesFiniteDifferences) {
  Rng rng(93);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const auto p = random_cone(rng);
    const auto g = delta_gradient(p);
    for (int k = 0; k < 4; ++k) {
      auto hi = p, lo = p;
      double* fh[] = {&hi.a, &hi.b, &hi.c, &hi.d};
      double* fl[] = {&lo.a, &lo.b, &lo.c, &lo.d};
      *fh[k] += h;
      *fl[k] -= h;
      EXPECT_NEAR(g[static_cast<std::size_t>(k)], (delta(hi) - delta(lo)) / (2 * h), 1e-6);
    }
  }
}

TEST(GammaCurve, Examples) {
  const auto g = gamma_curve(0.0);
  EXPECT_EQ(g.a, 1.0);
  EXPECT_EQ(g.b, 0.0);
  EXPECT_EQ(g.c, 1.0);
  EXPECT_EQ(g.d, 0.0);
  EXPECT_EQ(to_toeplitz(g).dense(), Mat(Mat::Ones(3, 3)));

  Rng rng(94);
  for (int i = 0; i < 100; ++i) {
    const double x = random_angle(rng);
    const auto gr = delta_gradient(gamma_curve(x));
    for (double v : gr) EXPECT_NEAR(v, 0.0, 1e-13);
    EXPECT_LT(max_abs_diff(to_toeplitz(gamma_curve(x)).dense(), 3.0 * extreme_ray_at(x, 3).dense()), 1e-14);
  }
}

TEST(GammaCurve, CoordinateRoundTrip) {
  Rng rng(95);
  const auto p = random_cone(rng);
  const auto q = from_toeplitz(to_toeplitz(p));
  EXPECT_EQ(q.a, p.a);
  EXPECT_EQ(q.d, p.d);
  EXPECT_EQ(q.u, p.u);
}

TEST(Sigma, Endpoints) {
  Rng rng(96);
  for (int i = 0; i < 50; ++i) {
    const double x = random_angle(rng), y = random_angle(rng), s = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto p = sigma(x, x, s), g = gamma_curve(x);
    EXPECT_NEAR(p.a, g.a, 1e-15);
    EXPECT_NEAR(p.d, g.d, 1e-15);
    EXPECT_NEAR(sigma(x, y, 1.0).c, gamma_curve(x).c, 1e-15);
  }
}

TEST(Sigma, CriticalSet) {
  Rng rng(97);
  std::uniform_real_distribution<double> mid(0.1, 0.9), off(0.5, 2 * pi - 0.5);
  for (int i = 0; i < 200; ++i) {
    const double x = random_angle(rng), y = x + off(rng), s = mid(rng);
    EXPECT_GT(detail::norm4(sigma_jacobian_minors(x, y, s)), 1e-4);
    EXPECT_LT(detail::norm4(sigma_jacobian_minors(x, y, 0.0)), 1e-14);
    EXPECT_LT(detail::norm4(sigma_jacobian_minors(x, y, 1.0)), 1e-14);
    EXPECT_LT(detail::norm4(sigma_jacobian_minors(x, x, s)), 1e-14);
  }
}

TEST(EpsilonState, FlipAndDiagonal) {
  Rng rng(98);
  for (int i = 0; i < 100; ++i) {
    const double x = random_angle(rng), y = random_angle(rng);
    const auto e = epsilon_state(x, y), f = epsilon_state(y, x);
    EXPECT_EQ(e.W, f.W);
    EXPECT_EQ(e.Z, f.Z);
    const auto d = epsilon_state(x, x);
    EXPECT_NEAR(d.W, 4 * std::cos(x) / 3, 1e-15);
    EXPECT_NEAR(d.Y, std::cos(2 * x) / 3, 1e-15);
  }
}

TEST(EpsilonState, IsThePureState) {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const double x = random_angle(rng), y = random_angle(rng);
    const auto t = random_hermitian_toeplitz(rng, 3);
    const auto st = vector_state(pure_state_from_angles(std::vector<double>{x, y}).xi);
    EXPECT_NEAR(apply(epsilon_state(x, y), from_toeplitz(t)), evaluate(st, t), 1e-12);
  }
}

TEST(EpsilonState, NonnegativeOnTheCone) {
  Rng rng(100);
  for (int i = 0; i < 200; ++i) {
    const auto e = epsilon_state(random_angle(rng), random_angle(rng));
    EXPECT_GE(apply(e, from_toeplitz(random_positive_toeplitz(rng, 3, 1 + i % 3))), -1e-13);
  }
}

TEST(SurfaceResidual, Examples) {
  EXPECT_EQ(surface_residual(0, 0, 0), 0.0);
  EXPECT_EQ(surface_residual(0, 0, 1), 0.0);
  Rng rng(101);
  for (int i = 0; i < 500; ++i) {
    const auto e = epsilon_state(random_angle(rng), random_angle(rng));
    EXPECT_NEAR(surface_residual(e.X, e.Y, e.Z), 0.0, 1e-10);
  }
  EXPECT_EQ(surface_residual(0.5, 0.5, 0.5), 0.0625);
}

TEST(Discriminant, Transcription) {
  EXPECT_EQ(discriminant_terms().size(), 47u);
  Rng rng(102);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 500; ++i) {
    const StateCoords s{u(rng), u(rng), u(rng), u(rng)};
    const auto q = boundary_quartic(s);
    if (std::abs(q[0]) < 1e-2) continue;
    const double oracle = sylvester_discriminant(q);
    EXPECT_NEAR(discriminant(s), -oracle / 256.0, 1e-10 * (1.0 + std::abs(oracle)));
  }
}

TEST(Discriminant, GradientMatchesFiniteDifferences) {
  Rng rng(103);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const StateCoords s{u(rng), u(rng), u(rng), u(rng)};
    const auto g = discriminant_gradient(s);
    for (int k = 0; k < 4; ++k) {
      auto hi = s, lo = s;
      double* fh[] = {&hi.W, &hi.X, &hi.Y, &hi.Z};
      double* fl[] = {&lo.W, &lo.X, &lo.Y, &lo.Z};
      *fh[k] += h;
      *fl[k] -= h;
      EXPECT_NEAR(g[static_cast<std::size_t>(k)], (discriminant(hi) - discriminant(lo)) / (2 * h), 1e-5);
    }
  }
}

TEST(Discriminant, OnBetaAndEpsilon) {
  Rng rng(104);
  std::uniform_real_distribution<double> mid(0.1, 0.9), off(0.3, pi - 0.3);
  for (int i = 0; i < 300; ++i) {
    const double x = random_angle(rng), y = random_angle(rng), s = std::uniform_real_distribution<double>(0, 1)(rng);
    EXPECT_NEAR(discriminant(beta(x, y, s)), 0.0, 1e-10);
    EXPECT_LT(detail::norm4(discriminant_gradient(epsilon_state(x, y))), 1e-10);
    // smooth points of the hypersurface inside the open segment
    const double y2 = x + off(rng);
    EXPECT_GT(detail::norm4(discriminant_gradient(beta(x, y2, mid(rng)))), 1e-6);
  }
}

TEST(SampleSurfaces, EmptyCount) {
  std::ostringstream os;
  write_csv(os, sample_surfaces(SampleKind::state_surface, 0));
  EXPECT_EQ(os.str(), "x,y,W,X,Y,Z\n");
}

TEST(SampleSurfaces, PointsLieOnTheirSurfaces) {
  const auto slice = sample_surfaces(SampleKind::cone_slice, 400, 7);
  EXPECT_GT(slice.rows.size(), 100u);
  for (const auto& r : slice.rows) {
    EXPECT_EQ(r[3], -0.4);
    EXPECT_NEAR(delta(ConeCoords{r[0], r[1], r[2], r[3], 1.0}), 0.0, 1e-10);
  }
  for (const auto& r : sample_surfaces(SampleKind::state_surface, 200, 7).rows)
    EXPECT_NEAR(surface_residual(r[3], r[4], r[5]), 0.0, 1e-8);
  for (const auto& r : sample_surfaces(SampleKind::boundary, 200, 7).rows)
    EXPECT_NEAR(discriminant(StateCoords{r[3], r[4], r[5], r[6]}), 0.0, 1e-10);
  for (const auto& r : sample_surfaces(SampleKind::cone_boundary, 200, 7).rows)
    EXPECT_NEAR(delta(ConeCoords{r[3], r[4], r[5], r[6], 1.0}), 0.0, 1e-10);
}

TEST(SampleSurfaces, Deterministic) {
  std::ostringstream a, b, c;
  write_csv(a, sample_surfaces(SampleKind::boundary, 50, 11));
  write_csv(b, sample_surfaces(SampleKind::boundary, 50, 11));
  write_csv(c, sample_surfaces(SampleKind::boundary, 50, 12));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
  EXPECT_EQ(parse_sample_kind("cone-slice"), SampleKind::cone_slice);
  EXPECT_THROW(parse_sample_kind("torus"), Error);
}

TEST(CheckGeometry3, AllIdentitiesPass) {
  for (const auto& c : check_geometry3()) EXPECT_TRUE(c.passed) << c.name << ": " << c.max_error;
}
