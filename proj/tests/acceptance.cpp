// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "toepsys/toepsys.hpp"

using namespace toepsys;
using namespace toepsys::testing;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double circ_dist(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2 * pi);
  return std::min(d, 2 * pi - d);
}

// Optimal matching of two small angle multisets (every permutation for
// r <= 8, greedy beyond).
double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return 1e300;
  if (a.empty()) return 0.0;
  const auto cost = [&](const std::vector<double>& bb) {
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, circ_dist(a[i], bb[i]));
    return w;
  };
  if (a.size() <= 8) {
    std::sort(b.begin(), b.end());
    double best = 1e300;
    do best = std::min(best, cost(b));
    while (std::next_permutation(b.begin(), b.end()));
    return best;
  }
  double worst = 0.0;
  for (double x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](double u, double v) { return circ_dist(u, x) < circ_dist(v, x); });
    worst = std::max(worst, circ_dist(*it, x));
    b.erase(it);
  }
  return worst;
}

ToeplitzMatrix sum_of_random_rays(Rng& rng, int n, int r) {
  std::uniform_real_distribution<double> w(0.2, 2.0);
  ToeplitzMatrix t(n);
  for (int i = 0; i < r; ++i) t = t + w(rng) * extreme_ray_at(random_angle(rng), n);
  return t;
}

State random_state(Rng& rng, int n) { return state_from_density(random_positive_fr(rng, n, 2, 0.05)); }

State state_n2(double w1, double w2) {
  const cplx a1 = cplx(w1, w2) / 2.0;
  return state_from_density(FRElement(std::vector<cplx>{std::conj(a1), 1.0, a1}));
}

Outcome fejer_riesz() {
  constexpr int kCases = 500;
  constexpr double kRelResidual = 1e-8, kSeconds = 5.0;
  Rng rng(1001);
  std::vector<FRElement> inputs;
  for (int i = 0; i < kCases; ++i) {
    const int n = 1 + i % 16;
    inputs.push_back(random_positive_fr(rng, n, 1 + i % 3, i % 2 ? 0.0 : 0.05));
  }
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& a : inputs) worst = std::max(worst, factorization_residual(a, fejer_riesz_factorize(a)) / fr_sup_norm(a));
  const double secs = seconds_since(t0);
  return {worst <= kRelResidual && secs < kSeconds, fmt("max |a-|q|^2|/|a| = %.3g (<= %g), %.2f s (< %g s)", worst, kRelResidual, secs, kSeconds)};
}

Outcome vandermonde() {
  constexpr int kCases = 500;
  constexpr double kRelReconstruction = 1e-8, kNodeAgreement = 1e-6;
  Rng rng(1002);
  double worst_rec = 0.0, worst_nodes = 0.0;
  int deficient = 0;
  for (int i = 0; i < kCases; ++i) {
    const int n = 1 + i % 12;
    const int rays = 1 + static_cast<int>(rng() % static_cast<unsigned>(n + 2));
    const auto t = sum_of_random_rays(rng, n, rays);
    const auto v1 = vandermonde_decompose(t, 1e-9, 1);
    worst_rec = std::max(worst_rec, (reconstruct(v1, n).dense() - t.dense()).norm() / operator_norm(t));
    if (v1.r <= n - 1) {
      ++deficient;
      const auto v2 = vandermonde_decompose(t, 1e-9, 2);
      worst_nodes = std::max(worst_nodes, multiset_distance(v1.angles, v2.angles));
    }
  }
  return {worst_rec <= kRelReconstruction && worst_nodes <= kNodeAgreement,
          fmt("max reconstruction/|T| = %.3g (<= %g); node disagreement over %d deficient-rank cases = %.3g (<= %g)",
              worst_rec, kRelReconstruction, deficient, worst_nodes, kNodeAgreement)};
}

Outcome stratification() {
  constexpr int kCases = 200;
  Rng rng(1003);
  int bad = 0;
  for (int i = 0; i < kCases; ++i) {
    const int n = 2 + i % 5;
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    if (det_multiplicity(sum_of_random_rays(rng, n, r), n) + r != n) ++bad;
  }
  return {bad == 0, fmt("%d of %d boundary matrices violate det_multiplicity + rank = n", bad, kCases)};
}

Outcome propagation() {
  constexpr double kSeconds = 10.0;
  const auto t0 = std::chrono::steady_clock::now();
  std::string got;
  bool ok = true;
  for (int n = 2; n <= 8; ++n) {
    const int p = propagation_number(toeplitz_system(n), 4);
    ok = ok && p == 2;
    got += std::to_string(p);
  }
  got += " / circulant ";
  for (int m = 1; m <= 8; ++m) {
    const int p = propagation_number(circulant_system(m), 4);
    ok = ok && p == 1;
    got += std::to_string(p);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < kSeconds, fmt("prop(Toep(2..8)) = %s, %.2f s (< %g s)", got.c_str(), secs, kSeconds)};
}

Outcome closed_form() {
  constexpr int kPairs = 100;
  constexpr double kTol = 1e-6, kGap = 1e-8;
  Rng rng(1005);
  std::uniform_real_distribution<double> rad(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    const double r1 = rad(rng), t1 = random_angle(rng), r2 = rad(rng), t2 = random_angle(rng);
    const double x1 = r1 * std::cos(t1), y1 = r1 * std::sin(t1), x2 = r2 * std::cos(t2), y2 = r2 * std::sin(t2);
    const double d = connes_distance(state_n2(x1, y1), state_n2(x2, y2), kGap).value;
    worst = std::max(worst, std::abs(d - std::hypot(x1 - x2, y1 - y2)));
  }
  return {worst <= kTol, fmt("max |d - |w-w'|| = %.3g (<= %g)", worst, kTol)};
}

Outcome distance_inequality() {
  constexpr int kPairs = 100;
  constexpr double kGap = 1e-6, kQuadTol = 1e-8;
  Rng rng(1006);
  double worst_slack = 1e300, worst_dual = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    const int n = 2 + i % 7;
    const auto p = random_state(rng, n), q = random_state(rng, n);
    const double c = connes_distance(p, q, kGap).value;
    worst_slack = std::min(worst_slack, c - (kantorovich(p, q, kQuadTol) - (kGap + kQuadTol)));
    worst_dual = std::max(worst_dual, std::abs(connes_distance_dual(p, q, kGap).value - c));
  }
  return {worst_slack >= 0.0 && worst_dual <= 2 * kGap,
          fmt("min connes - (kantorovich - gap - quad_tol) = %.3g (>= 0); max |dual - primal| = %.3g (<= %g)",
              worst_slack, worst_dual, 2 * kGap)};
}

Outcome kantorovich_oracle() {
  constexpr double kTol = 1e-6;
  const auto bump = state_from_density(FRElement(std::vector<cplx>{0.5, 1.0, 0.5}));
  const double k = kantorovich(trace_state(2), bump);
  return {std::abs(k - 2 / pi) <= kTol, fmt("W(uniform, 1+cos) = %.15f, 2/pi = %.15f (tol %g)", k, 2 / pi, kTol)};
}

Outcome geometry() {
  constexpr double kSeconds = 5.0;
  const auto t0 = std::chrono::steady_clock::now();
  const auto checks = check_geometry3();
  const double secs = seconds_since(t0);
  std::string failed;
  for (const auto& c : checks)
    if (!c.passed) failed += " [" + c.name + "]";
  return {failed.empty() && secs < kSeconds,
          fmt("%zu identities, failing:%s, %.2f s (< %g s)", checks.size(), failed.empty() ? " none" : failed.c_str(), secs, kSeconds)};
}

Outcome circulant() {
  constexpr double kDiagonalization = 1e-10;
  Rng rng(1009);
  bool round_trip = true;
  for (int n = 1; n <= 12; ++n) {
    const ToeplitzMatrix t(random_vector(rng, 2 * n - 1));
    for (int m : {2 * n - 1, 2 * n, 3 * n}) round_trip = round_trip && compress_circulant(complete_toeplitz(t, m), n) == t;
  }
  double worst = 0.0;
  for (int m = 1; m <= 64; ++m) {
    const CirculantMatrix c{m, random_vector(rng, m)};
    const Mat u = fourier_unitary(m);
    Mat d = u * c.dense() * u.adjoint();
    const auto ev = circulant_eigenvalues(c);
    for (int k = 0; k < m; ++k) d(k, k) -= ev[static_cast<std::size_t>(k)];
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  std::string ranks;
  bool bijective = true;
  for (int n : {2, 3, 4, 6, 7}) {
    const int r = tensor_map_rank(n);
    bijective = bijective && r == (2 * n - 1) * (2 * n - 1);
    ranks += " " + std::to_string(r);
  }
  return {round_trip && worst <= kDiagonalization && bijective,
          fmt("round trip %s; diagonalization residual %.3g (<= %g); ranks for m=3,5,7,11,13:%s",
              round_trip ? "exact" : "BROKEN", worst, kDiagonalization, ranks.c_str())};
}

Outcome duality() {
  constexpr int kProbes = 10000;
  constexpr double kTol = 1e-10;
  Rng rng(1010);
  std::uniform_real_distribution<double> shift(0.0, 0.5);
  int counterexamples = 0, positive = 0;
  for (int i = 0; i < kProbes; ++i) {
    const int n = 1 + i % 8;
    // about half of the probes are positive, the rest are shifted below the cone
    auto t = sum_of_random_rays(rng, n, 1 + i % (n + 2));
    if (i % 2) t = t - shift(rng) * toeplitz_identity(n);
    const double scale = operator_norm(t);
    Eigen::SelfAdjointEigenSolver<Mat> es(t.dense());
    const bool is_psd = es.eigenvalues()(0) >= -kTol * scale;
    const auto xi = random_vector(rng, n);
    double xi2 = 0.0;
    for (const auto& z : xi) xi2 += std::norm(z);
    const double value = pairing(t, autocorrelation(xi)).real();
    if (is_psd) {
      ++positive;
      if (value < -kTol * scale * xi2) ++counterexamples;
    } else {
      // a non-positive T must be separated by some xi* * xi: the lowest eigenvector
      std::vector<cplx> v(es.eigenvectors().col(0).data(), es.eigenvectors().col(0).data() + n);
      if (pairing(t, autocorrelation(v)).real() >= -kTol * scale) ++counterexamples;
    }
  }
  return {counterexamples == 0, fmt("%d probes (%d positive), %d counterexamples at tol %g", kProbes, positive, counterexamples, kTol)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fejer-riesz factorization", fejer_riesz},
      {"vandermonde decomposition", vandermonde},
      {"stratification by rank", stratification},
      {"propagation numbers", propagation},
      {"n=2 distance closed form", closed_form},
      {"connes dominates kantorovich", distance_inequality},
      {"kantorovich oracle 2/pi", kantorovich_oracle},
      {"n=3 geometry identities", geometry},
      {"circulant completion and spectrum", circulant},
      {"positivity duality", duality},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
