#pragma once

// The n = 3 picture in real coordinates. A hermitian Toeplitz(3) matrix is
// (a, b, c, d, u) with t_0 = u, t_1 = a + ib, t_2 = c + id; a linear form is
// (W, X, Y, Z) acting as aW + bX + cY + dZ + u.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "toepsys/core.hpp"
#include "toepsys/states.hpp"

namespace toepsys {

struct ConeCoords {
  double a = 0, b = 0, c = 0, d = 0, u = 1;
};

struct StateCoords {
  double W = 0, X = 0, Y = 0, Z = 0;
};

using Vec4 = std::array<double, 4>;

inline ToeplitzMatrix to_toeplitz(const ConeCoords& p) {
  return toeplitz_from_coeffs({cplx(p.c, -p.d), cplx(p.a, -p.b), p.u, cplx(p.a, p.b), cplx(p.c, p.d)});
}

/// Inverse of to_toeplitz; T must be a hermitian 3 x 3 Toeplitz matrix.
inline ConeCoords from_toeplitz(const ToeplitzMatrix& t) {
  require(t.n() == 3, ErrorKind::size_mismatch, "from_toeplitz: need n = 3");
  require(t.is_hermitian(), ErrorKind::not_hermitian, "from_toeplitz: matrix is not hermitian");
  return {t[1].real(), t[1].imag(), t[2].real(), t[2].imag(), t[0].real()};
}

/// L(a, b, c, d, u) = aW + bX + cY + dZ + u.
inline double apply(const StateCoords& s, const ConeCoords& p) {
  return p.a * s.W + p.b * s.X + p.c * s.Y + p.d * s.Z + p.u;
}

/// det of the matrix, a homogeneous cubic.
inline double cone_determinant(const ConeCoords& p) {
  const auto [a, b, c, d, u] = p;
  return 2 * a * a * c - 2 * a * a * u + 4 * a * b * d - 2 * b * b * c - 2 * b * b * u - c * c * u - d * d * u + u * u * u;
}

/// delta(a, b, c, d) = 2a^2(c-1) + 4abd - 2b^2(c+1) - c^2 - d^2 + 1 (u ignored).
inline double delta(const ConeCoords& p) {
  const auto [a, b, c, d, u] = p;
  return 2 * a * a * (c - 1) + 4 * a * b * d - 2 * b * b * (c + 1) - c * c - d * d + 1;
}

inline Vec4 delta_gradient(const ConeCoords& p) {
  const auto [a, b, c, d, u] = p;
  return {4 * a * (c - 1) + 4 * b * d, 4 * a * d - 4 * b * (c + 1), 2 * (a * a - b * b - c), 4 * a * b - 2 * d};
}

/// (cos x, sin x, cos 2x, sin 2x), u = 1.
inline ConeCoords gamma_curve(double x) { return {std::cos(x), std::sin(x), std::cos(2 * x), std::sin(2 * x), 1.0}; }

/// s gamma(x) + (1 - s) gamma(y).
inline ConeCoords sigma(double x, double y, double s) {
  const auto gx = gamma_curve(x), gy = gamma_curve(y);
  return {s * gx.a + (1 - s) * gy.a, s * gx.b + (1 - s) * gy.b, s * gx.c + (1 - s) * gy.c, s * gx.d + (1 - s) * gy.d, 1.0};
}

/// The four 3 x 3 minors of the Jacobian of sigma in (x, y, s), listed by
/// deleted row d, c, b, a.
inline Vec4 sigma_jacobian_minors(double x, double y, double s) {
  const Vec4 dx{-s * std::sin(x), s * std::cos(x), -2 * s * std::sin(2 * x), 2 * s * std::cos(2 * x)};
  const Vec4 dy{-(1 - s) * std::sin(y), (1 - s) * std::cos(y), -2 * (1 - s) * std::sin(2 * y), 2 * (1 - s) * std::cos(2 * y)};
  const auto gx = gamma_curve(x), gy = gamma_curve(y);
  const Vec4 ds{gx.a - gy.a, gx.b - gy.b, gx.c - gy.c, gx.d - gy.d};
  Vec4 out{};
  for (int skip = 3; skip >= 0; --skip) {
    std::array<int, 3> r{};
    for (int i = 0, j = 0; i < 4; ++i)
      if (i != skip) r[static_cast<std::size_t>(j++)] = i;
    auto e = [&](const Vec4& v, int i) { return v[static_cast<std::size_t>(r[static_cast<std::size_t>(i)])]; };
    out[static_cast<std::size_t>(3 - skip)] = e(dx, 0) * (e(dy, 1) * e(ds, 2) - e(dy, 2) * e(ds, 1)) -
                                                e(dy, 0) * (e(dx, 1) * e(ds, 2) - e(dx, 2) * e(ds, 1)) +
                                                e(ds, 0) * (e(dx, 1) * e(dy, 2) - e(dx, 2) * e(dy, 1));
  }
  return out;
}

/// L(x, y) / (cos(x - y) + 2).
inline StateCoords epsilon_state(double x, double y) {
  const double n = std::cos(x - y) + 2;
  return {2 * (std::cos(x) + std::cos(y)) / n, 2 * (std::sin(x) + std::sin(y)) / n, std::cos(x + y) / n, std::sin(x + y) / n};
}

/// s eps(x, y) + (1 - s) eps(x, y + pi).
inline StateCoords beta(double x, double y, double s) {
  const auto e = epsilon_state(x, y), f = epsilon_state(x, y + std::numbers::pi);
  return {s * e.W + (1 - s) * f.W, s * e.X + (1 - s) * f.X, s * e.Y + (1 - s) * f.Y, s * e.Z + (1 - s) * f.Z};
}

/// X^4 + 8X^2Y^2 + 8X^2Y + 8X^2Z^2 + 16Y^2Z^2 + 16Z^4 - 16Z^2.
inline double surface_residual(double X, double Y, double Z) {
  const double x2 = X * X, y2 = Y * Y, z2 = Z * Z;
  return x2 * x2 + 8 * x2 * y2 + 8 * x2 * Y + 8 * x2 * z2 + 16 * y2 * z2 + 16 * z2 * z2 - 16 * z2;
}

struct Monomial {
  double coef;
  int w, x, y, z;
};

/// d(W, X, Y, Z), term by term.
inline const std::vector<Monomial>& discriminant_terms() {
  static const std::vector<Monomial> terms{
      {1, 6, 0, 0, 0},     {3, 4, 2, 0, 0},     {15, 4, 0, 2, 0},    {-18, 4, 0, 1, 0},  {-12, 4, 0, 0, 2},
      {-1, 4, 0, 0, 0},    {108, 3, 1, 1, 1},   {-36, 3, 1, 0, 1},   {3, 2, 4, 0, 0},    {-78, 2, 2, 2, 0},
      {84, 2, 2, 0, 2},    {-2, 2, 2, 0, 0},    {48, 2, 0, 4, 0},    {-144, 2, 0, 3, 0}, {96, 2, 0, 2, 2},
      {80, 2, 0, 2, 0},    {-144, 2, 0, 1, 2},  {16, 2, 0, 1, 0},    {48, 2, 0, 0, 4},   {80, 2, 0, 0, 2},
      {-108, 1, 3, 1, 1},  {-36, 1, 3, 0, 1},   {-288, 1, 1, 2, 1},  {-288, 1, 1, 0, 3}, {32, 1, 1, 0, 1},
      {1, 0, 6, 0, 0},     {15, 0, 4, 2, 0},    {18, 0, 4, 1, 0},    {-12, 0, 4, 0, 2},  {-1, 0, 4, 0, 0},
      {48, 0, 2, 4, 0},    {144, 0, 2, 3, 0},   {96, 0, 2, 2, 2},    {80, 0, 2, 2, 0},   {144, 0, 2, 1, 2},
      {-16, 0, 2, 1, 0},   {48, 0, 2, 0, 4},    {80, 0, 2, 0, 2},    {-64, 0, 0, 6, 0},  {-192, 0, 0, 4, 2},
      {128, 0, 0, 4, 0},   {-192, 0, 0, 2, 4},  {256, 0, 0, 2, 2},   {-64, 0, 0, 2, 0},  {-64, 0, 0, 0, 6},
      {128, 0, 0, 0, 4},   {-64, 0, 0, 0, 2},
  };
  return terms;
}

inline double discriminant(const StateCoords& s) {
  double v = 0.0;
  for (const auto& m : discriminant_terms())
    v += m.coef * std::pow(s.W, m.w) * std::pow(s.X, m.x) * std::pow(s.Y, m.y) * std::pow(s.Z, m.z);
  return v;
}

inline Vec4 discriminant_gradient(const StateCoords& s) {
  auto p = [](double b, int e) { return e <= 0 ? (e == 0 ? 1.0 : 0.0) : std::pow(b, e); };
  Vec4 g{};
  for (const auto& m : discriminant_terms()) {
    g[0] += m.coef * m.w * p(s.W, m.w - 1) * p(s.X, m.x) * p(s.Y, m.y) * p(s.Z, m.z);
    g[1] += m.coef * m.x * p(s.W, m.w) * p(s.X, m.x - 1) * p(s.Y, m.y) * p(s.Z, m.z);
    g[2] += m.coef * m.y * p(s.W, m.w) * p(s.X, m.x) * p(s.Y, m.y - 1) * p(s.Z, m.z);
    g[3] += m.coef * m.z * p(s.W, m.w) * p(s.X, m.x) * p(s.Y, m.y) * p(s.Z, m.z - 1);
  }
  return g;
}

/// Coefficients (t^4, ..., t^0) of the numerator of L on gamma, with the
/// circle parametrized rationally.
inline std::array<double, 5> boundary_quartic(const StateCoords& s) {
  return {1 - s.X - s.Y, 2 * s.W - 4 * s.Z, 6 * s.Y + 2, 2 * s.W + 4 * s.Z, 1 + s.X - s.Y};
}

namespace detail {

/// Discriminant of a t^4 + b t^3 + c t^2 + d t + e.
inline double quartic_discriminant(const std::array<double, 5>& q) {
  const auto [a, b, c, d, e] = q;
  return 256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e + 144 * a * a * c * d * d * e -
         27 * a * a * d * d * d * d + 144 * a * b * b * c * e * e - 6 * a * b * b * d * d * e - 80 * a * b * c * c * d * e +
         18 * a * b * c * d * d * d + 16 * a * c * c * c * c * e - 4 * a * c * c * c * d * d - 27 * b * b * b * b * e * e +
         18 * b * b * b * c * d * e - 4 * b * b * b * d * d * d - 4 * b * b * c * c * c * e + b * b * c * c * d * d;
}

inline double norm4(const Vec4& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Sampling

enum class SampleKind { cone_slice, cone_boundary, state_surface, boundary };

struct PointCloud {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline SampleKind parse_sample_kind(const std::string& s) {
  if (s == "cone-slice") return SampleKind::cone_slice;
  if (s == "cone-boundary") return SampleKind::cone_boundary;
  if (s == "state-surface") return SampleKind::state_surface;
  if (s == "boundary") return SampleKind::boundary;
  throw Error(ErrorKind::invalid_argument, "unknown sample kind: " + s);
}

/// cone-slice: zero set of delta at fixed d (both roots in c over random
/// (a, b)); cone-boundary: sigma; state-surface: epsilon; boundary: beta.
inline PointCloud sample_surfaces(SampleKind kind, int count, std::uint64_t seed = 42, double slice_d = -0.4) {
  require(count >= 0, ErrorKind::invalid_argument, "sample_surfaces: negative count");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), unit(0.0, 1.0), box(-1.25, 1.25);
  PointCloud pc;
  switch (kind) {
    case SampleKind::cone_slice: {
      pc.header = {"a", "b", "c", "d"};
      for (int i = 0; i < count; ++i) {
        const double a = box(rng), b = box(rng), d = slice_d;
        // delta = -c^2 + 2(a^2 - b^2) c + (1 - 2a^2 - 2b^2 + 4abd - d^2)
        const double h = a * a - b * b;
        const double disc = h * h + 1 - 2 * a * a - 2 * b * b + 4 * a * b * d - d * d;
        if (disc < 0) continue;
        const double r = std::sqrt(disc);
        pc.rows.push_back({a, b, h + r, d});
        if (r > 0) pc.rows.push_back({a, b, h - r, d});
      }
      break;
    }
    case SampleKind::cone_boundary:
      pc.header = {"x", "y", "s", "a", "b", "c", "d"};
      for (int i = 0; i < count; ++i) {
        const double x = ang(rng), y = ang(rng), s = unit(rng);
        const auto p = sigma(x, y, s);
        pc.rows.push_back({x, y, s, p.a, p.b, p.c, p.d});
      }
      break;
    case SampleKind::state_surface:
      pc.header = {"x", "y", "W", "X", "Y", "Z"};
      for (int i = 0; i < count; ++i) {
        const double x = ang(rng), y = ang(rng);
        const auto e = epsilon_state(x, y);
        pc.rows.push_back({x, y, e.W, e.X, e.Y, e.Z});
      }
      break;
    case SampleKind::boundary:
      pc.header = {"x", "y", "s", "W", "X", "Y", "Z"};
      for (int i = 0; i < count; ++i) {
        const double x = ang(rng), y = ang(rng), s = unit(rng);
        const auto e = beta(x, y, s);
        pc.rows.push_back({x, y, s, e.W, e.X, e.Y, e.Z});
      }
      break;
  }
  return pc;
}

inline void write_csv(std::ostream& os, const PointCloud& pc) {
  for (std::size_t i = 0; i < pc.header.size(); ++i) os << (i ? "," : "") << pc.header[i];
  os << '\n';
  char buf[32];
  for (const auto& row : pc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Identity checks

struct GeometryCheck {
  std::string name;
  double max_error;
  double tolerance;
  bool passed;
};

/// Runs every sampled identity; `samples` random points per identity.
inline std::vector<GeometryCheck> check_geometry3(int samples = 1000, std::uint64_t seed = 42) {
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi), unit(0.0, 1.0), box(-2.0, 2.0);
  std::vector<GeometryCheck> out;
  auto record = [&](std::string name, double err, double tol) { out.push_back({std::move(name), err, tol, err <= tol}); };

  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const ConeCoords p{box(rng), box(rng), box(rng), box(rng), 1.0};
    err = std::max(err, std::abs(delta(p) - to_toeplitz(p).dense().determinant().real()));
    const ConeCoords q{p.a, p.b, p.c, p.d, box(rng)};
    err = std::max(err, std::abs(cone_determinant(q) - to_toeplitz(q).dense().determinant().real()));
  }
  record("delta equals the determinant", err, 1e-12);

  err = 0.0;
  for (int i = 0; i < samples; ++i) err = std::max(err, std::abs(delta(sigma(ang(rng), ang(rng), unit(rng)))));
  record("delta vanishes on sigma", err, 1e-10);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto g = gamma_curve(ang(rng));
    err = std::max({err, std::abs(delta(g)), detail::norm4(delta_gradient(g))});
  }
  record("delta and its gradient vanish on gamma", err, 1e-10);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ang(rng);
    const Mat diff = to_toeplitz(gamma_curve(x)).dense() - 3.0 * extreme_ray_at(x, 3).dense();
    err = std::max(err, diff.cwiseAbs().maxCoeff());
  }
  record("gamma is three times the extreme ray", err, 1e-12);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ang(rng), t = unit(rng);
    ConeCoords p{0, 0, 0, 0, 1};
    for (const double shift : {0.0, 2 * pi / 3, 4 * pi / 3}) {
      const auto g = gamma_curve(x + shift);
      const double w = (1 - t) / 3 + (shift == 0.0 ? t : 0.0);
      p.a += w * g.a;
      p.b += w * g.b;
      p.c += w * g.c;
      p.d += w * g.d;
    }
    err = std::max(err, std::abs(delta(p) - (t - 1) * (t - 1) * (2 * t + 1)));
  }
  record("delta along the path to gamma", err, 1e-12);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ang(rng), y = ang(rng), s = unit(rng);
    const auto m = sigma_jacobian_minors(x, y, s);
    const double f = (s - 1) * s * std::pow(std::sin((x - y) / 2), 4);
    const Vec4 expect{-8 * f * std::sin(x + y), 8 * f * std::cos(x + y), 16 * f * (std::sin(x) + std::sin(y)),
                      -16 * f * (std::cos(x) + std::cos(y))};
    for (std::size_t k = 0; k < 4; ++k) err = std::max(err, std::abs(m[k] - expect[k]));
    for (const auto& z : {sigma_jacobian_minors(x, y, 0.0), sigma_jacobian_minors(x, y, 1.0), sigma_jacobian_minors(x, x, s)})
      err = std::max(err, detail::norm4(z));
  }
  record("critical set of sigma", err, 1e-12);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto e = epsilon_state(ang(rng), ang(rng));
    err = std::max(err, std::abs(surface_residual(e.X, e.Y, e.Z)));
  }
  record("surface equation on epsilon", err, 1e-10);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ang(rng), y = ang(rng);
    const auto e = epsilon_state(x, y), f = epsilon_state(y, x);
    err = std::max({err, std::abs(e.W - f.W), std::abs(e.X - f.X), std::abs(e.Y - f.Y), std::abs(e.Z - f.Z)});
  }
  record("epsilon is flip invariant", err, 1e-15);

  err = 0.0;
  {
    const std::array<ConeCoords, 5> basis{ConeCoords{1, 0, 0, 0, 0}, ConeCoords{0, 1, 0, 0, 0}, ConeCoords{0, 0, 1, 0, 0},
                                          ConeCoords{0, 0, 0, 1, 0}, ConeCoords{0, 0, 0, 0, 1}};
    for (int i = 0; i < samples; ++i) {
      const double x = ang(rng), y = ang(rng);
      const auto e = epsilon_state(x, y);
      const auto st = vector_state(pure_state_from_angles(std::vector<double>{x, y}).xi);
      for (const auto& p : basis) err = std::max(err, std::abs(apply(e, p) - evaluate(st, to_toeplitz(p))));
    }
  }
  record("epsilon is the pure state at angles (x, y)", err, 1e-12);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const StateCoords s{box(rng), box(rng), box(rng), box(rng)};
    double scale = 0.0;
    for (const auto& m : discriminant_terms())
      scale += std::abs(m.coef * std::pow(s.W, m.w) * std::pow(s.X, m.x) * std::pow(s.Y, m.y) * std::pow(s.Z, m.z));
    const double q = detail::quartic_discriminant(boundary_quartic(s));
    err = std::max(err, std::abs(discriminant(s) + q / 256.0) / scale);
  }
  record("d is the discriminant of the boundary quartic (relative)", err, 1e-13);

  err = 0.0;
  for (int i = 0; i < samples; ++i) err = std::max(err, std::abs(discriminant(beta(ang(rng), ang(rng), unit(rng)))));
  record("d vanishes on beta", err, 1e-10);

  err = 0.0;
  for (int i = 0; i < samples; ++i) err = std::max(err, detail::norm4(discriminant_gradient(epsilon_state(ang(rng), ang(rng)))));
  record("gradient of d vanishes on epsilon", err, 1e-10);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ang(rng), y = ang(rng), s = unit(rng), u = x - y;
    const auto g = discriminant_gradient(beta(x, y, s));
    const double f = 32 * (s - 1) * s * std::pow(12 * s * std::cos(u) - 6 * std::cos(u) - std::cos(2 * u) - 5, 3) /
                     std::pow(std::cos(u) * std::cos(u) - 4, 4);
    const Vec4 expect{f * std::cos(x), f * std::sin(x), -f * std::cos(2 * x), -f * std::sin(2 * x)};
    for (std::size_t k = 0; k < 4; ++k) err = std::max(err, std::abs(g[k] - expect[k]));
  }
  record("gradient of d on beta", err, 1e-10);

  err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ang(rng), y = ang(rng);
    const auto b = beta(x, y, (std::cos(x - y) + 2) / 4);
    err = std::max({err, std::abs(b.W - std::cos(x)), std::abs(b.X - std::sin(x)), std::abs(b.Y), std::abs(b.Z)});
  }
  record("critical values of beta lie on a circle", err, 1e-12);

  return out;
}

}  // namespace toepsys
