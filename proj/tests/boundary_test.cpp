#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "osc/boundary.hpp"
#include "osc/metric.hpp"

namespace osc {
namespace {

using numeric::pi;
using numeric::two_pi;

constexpr auto kPlus = EulerArnoldSign::plus;
constexpr auto kMinus = EulerArnoldSign::minus;

// Endpoint of exp(-i t (H + lambda Q)) for Omega = 1, shift = lambda.
GroupElement ShiftedTarget(double shift, double wt) {
  return {0.5 * shift * shift * (wt - std::sin(wt)), -wt, shift * (std::cos(wt) - 1.0), -shift * std::sin(wt)};
}

// Independent root finder: a fine scan of f - gamma for sign changes away
// from the poles, refined by plain bisection.
std::vector<double> ScanRoots(double delta, double gamma, double limit) {
  const auto fn = [&](double x) {
    const double g = std::abs(x) < 1e-3 ? x / 3.0 + x * x * x / 90.0 : (x - std::sin(x)) / (1.0 - std::cos(x));
    return delta * x - g - gamma;
  };
  std::vector<double> roots;
  constexpr int kPerBranch = 4001;  // odd, so 0 is never a grid point
  const int branches = static_cast<int>(std::round(limit / two_pi));
  for (int k = -branches; k < branches; ++k) {
    if (k == -1) continue;  // (-2 pi, 2 pi) is scanned as one piece
    const double lo = two_pi * (k == 0 ? -1 : k) + 1e-7, hi = two_pi * (k + 1) - 1e-7;
    const int n = k == 0 ? 2 * kPerBranch : kPerBranch;
    double x0 = lo, f0 = fn(lo);
    for (int i = 1; i <= n; ++i) {
      const double x1 = lo + (hi - lo) * i / n, f1 = fn(x1);
      if ((f0 < 0.0) != (f1 < 0.0)) {
        double a = x0, b = x1, fa = f0;
        for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
          const double m = 0.5 * (a + b), fm = fn(m);
          if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
      x0 = x1;
      f0 = f1;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

class BoundaryTest : public ::testing::Test {
 protected:
  Metric RandomMetric() {
    for (;;) {
      const double a = pos_(rng_), b = u_(rng_), d = pos_(rng_) + b * b / a;
      if (a * d - b * b > 0.1) return {a, b, d};
    }
  }
  GeodesicParams RandomParams() { return {u_(rng_), u_(rng_), u_(rng_), u_(rng_)}; }

  std::mt19937_64 rng_{4242};
  std::uniform_real_distribution<double> u_{-1.5, 1.5};
  std::uniform_real_distribution<double> pos_{0.5, 2.0};
};

// ---------------------------------------------------------------------------
// f

TEST_F(BoundaryTest, FIsOddAndMatchesItsDefinition) {
  for (double delta : {-0.7, 0.0, 0.2, 1.0 / 3.0, 0.9}) {
    for (double x : {1e-9, 1e-3, 0.5, 3.0, 7.0, -11.0, 40.0}) {
      EXPECT_NEAR(f_of_nu(-x, delta), -f_of_nu(x, delta), 1e-14);
      if (std::abs(x) > 1e-2) {
        EXPECT_NEAR(f_of_nu(x, delta), delta * x - (x - std::sin(x)) / (1.0 - std::cos(x)), 1e-11);
      }
    }
    EXPECT_EQ(f_of_nu(0.0, delta), 0.0);
  }
}

TEST_F(BoundaryTest, FSlopeAtZero) {
  // f ~ (Delta - 1/3) nu near 0
  for (double delta : {0.0, 0.3, 0.5}) {
    EXPECT_NEAR(f_prime(0.0, delta), delta - 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(f_of_nu(1e-5, delta) / 1e-5, delta - 1.0 / 3.0, 1e-10);
  }
}

TEST_F(BoundaryTest, FPrimeMatchesFiniteDifferences) {
  constexpr double h = 1e-6;
  for (double delta : {0.1, 0.45}) {
    for (double x : {1e-3, 0.02, 1.0, 4.0, 8.0, -20.0}) {
      EXPECT_NEAR(f_prime(x, delta), (f_of_nu(x + h, delta) - f_of_nu(x - h, delta)) / (2 * h), 1e-7) << x;
    }
  }
}

TEST_F(BoundaryTest, FThrowsAtPoles) {
  for (int k : {1, -1, 7}) {
    try {
      f_of_nu(two_pi * k, 0.2);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::pole_at_root);
    }
  }
  EXPECT_NO_THROW(f_of_nu(two_pi + 1e-6, 0.2));
}

TEST_F(BoundaryTest, BranchMaximaApproachTheAsymptote) {
  for (double delta : {0.1, 0.4, 1.0, 1.5}) {
    for (int k : {5, 10, 20, 40}) {
      const BranchExtremum m = branch_max(k, delta);
      const double mid = (2.0 * k + 1.0) * pi;
      EXPECT_NEAR(f_prime(m.nu, delta), 0.0, 1e-9);
      EXPECT_LT(std::abs(m.nu - branch_max_asymptotic(k, delta)) * mid * mid, 20.0) << k;
      EXPECT_LT(std::abs(m.f - branch_max_value_asymptotic(k, delta)) * mid * mid, 20.0) << k;
    }
  }
}

// The textbook value 2 (1 - Delta)(2 - Delta)/m for the 1/m term misses the
// maximum by 2 (1 - Delta)/m, not O(1/k^2).
TEST_F(BoundaryTest, TextbookMaximumValueIsOffAtFirstOrder) {
  for (double delta : {0.1, 0.4, 1.5}) {
    for (int k : {20, 80}) {
      const double mid = (2.0 * k + 1.0) * pi;
      const double textbook = (delta - 0.5) * mid + 2.0 * (1.0 - delta) * (2.0 - delta) / mid;
      EXPECT_NEAR((textbook - branch_max(k, delta).f) * mid, 2.0 * (1.0 - delta), 1e-2);
    }
  }
}

TEST_F(BoundaryTest, BranchMaxIsTheBranchMaximum) {
  for (double delta : {0.05, 0.3, 1.0}) {
    for (int k : {1, 2, 3}) {
      const BranchExtremum m = branch_max(k, delta);
      ASSERT_GT(m.nu, two_pi * k);
      ASSERT_LT(m.nu, two_pi * (k + 1));
      for (int i = 1; i < 200; ++i) {
        const double x = two_pi * k + two_pi * i / 200.0;
        EXPECT_LE(f_of_nu(x, delta), m.f + 1e-12);
      }
    }
  }
  EXPECT_EQ(branch_max(0, 0.2).nu, 0.0);
  const BranchExtremum central = branch_max(0, 0.45);
  EXPECT_GT(central.nu, 0.0);
  EXPECT_GT(central.f, 0.0);
  EXPECT_THROW(branch_max(-1, 0.2), Error);
}

// ---------------------------------------------------------------------------
// root enumeration

TEST_F(BoundaryTest, RootsMatchAnIndependentScan) {
  const int window = 4;
  for (int i = 0; i < 60; ++i) {
    const Metric m = RandomMetric();
    const GroupElement g{3.0 * u_(rng_), 3.0 * u_(rng_), u_(rng_), u_(rng_)};
    for (auto s : {kPlus, kMinus}) {
      const BoundaryProblem bp(m, g, s);
      const std::vector<double> got = enumerate_roots(bp, window);
      const std::vector<double> want = ScanRoots(bp.effective_delta(), bp.gamma(), two_pi * (window + 1));
      ASSERT_EQ(got.size(), want.size()) << "delta " << bp.effective_delta() << " gamma " << bp.gamma()
                                         << ::testing::PrintToString(got) << ::testing::PrintToString(want);
      for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], want[j], 1e-9);
      for (double r : got) EXPECT_NEAR(f_of_nu(r, bp.effective_delta()), bp.gamma(), 1e-9 * (1.0 + r * r));
    }
  }
}

TEST_F(BoundaryTest, ZeroGammaHasRootAtZero) {
  const Metric m(1.0, 0.0, 1.0);
  const GroupElement g{0.0, 0.0, 0.6, 0.8};
  for (double e_alpha : {0.0, 0.3}) {
    // Gamma = 0 needs e = -(b + 2) alpha / a
    const GroupElement h{-2.0 * e_alpha, e_alpha, g.q, g.p};
    for (const auto& t : {g, h}) {
      const std::vector<double> roots = enumerate_roots(BoundaryProblem(m, t), 2);
      EXPECT_TRUE(std::any_of(roots.begin(), roots.end(), [](double r) { return std::abs(r) < 1e-12; }));
    }
  }
}

TEST_F(BoundaryTest, NegativeWindowIsRejected) {
  const BoundaryProblem bp(Metric(1.0, 0.0, 1.0), {0.1, 0.2, 0.3, 0.4});
  try {
    enumerate_roots(bp, -1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_window);
  }
}

TEST_F(BoundaryTest, CentralRootCountRegimes) {
  for (double delta : {0.1, 1.0 / 3.0, 0.4, 0.45}) {
    const double peak = delta > 1.0 / 3.0 ? branch_max(0, delta).f : 0.0;
    for (int i = -40; i <= 40; ++i) {
      const double gamma = 0.05 * i + 0.0123;
      const std::size_t n = central_roots(delta, gamma).size();
      if (delta <= 1.0 / 3.0) {
        EXPECT_EQ(n, 1u) << delta << " " << gamma;
      } else {
        EXPECT_EQ(n, std::abs(gamma) < peak ? 3u : 1u) << delta << " " << gamma;
      }
    }
  }
}

TEST_F(BoundaryTest, SideBranchesHoldZeroOrTwoRoots) {
  for (double delta : {0.1, 0.6}) {
    for (int k : {1, 2, 5}) {
      const double top = branch_max(k, delta).f;
      EXPECT_EQ(side_roots(k, delta, top - 0.1).size(), 2u);
      EXPECT_EQ(side_roots(k, delta, top + 0.1).size(), 0u);
    }
  }
}

// ---------------------------------------------------------------------------
// integration constants and lengths

TEST_F(BoundaryTest, ConstantsFollowTheTextbookFormulas) {
  const Metric m(1.0, -1.0, 2.0);
  const GroupElement g{0.3, -0.8, 1.2, -0.5};
  const BoundaryProblem bp(m, g);
  for (double w : enumerate_roots(bp, 3)) {
    const GeodesicParams gp = solve_constants(bp, w);
    const double cot = std::sin(w) / (1.0 - std::cos(w));
    EXPECT_NEAR(gp.D, 0.5 * w * (g.p * cot - g.q), 1e-11);
    EXPECT_NEAR(gp.F, 0.5 * w * (g.q * cot + g.p), 1e-11);
    EXPECT_EQ(gp.B, g.alpha);
    EXPECT_NEAR(g.e, (w - (m.b() + 2.0) * g.alpha) / m.a() + g.radius_squared() / 4.0 * (std::sin(w) - w) / (1.0 - std::cos(w)), 1e-10);
  }
}

TEST_F(BoundaryTest, EveryRootEndsAtTheTarget) {
  for (int i = 0; i < 50; ++i) {
    const Metric m = RandomMetric();
    const GroupElement g{2.0 * u_(rng_), 2.0 * u_(rng_), u_(rng_), u_(rng_)};
    for (auto s : {kPlus, kMinus}) {
      const BoundaryProblem bp(m, g, s);
      for (double w : enumerate_roots(bp, 3)) {
        const GeodesicParams gp = solve_constants(bp, w);
        EXPECT_NEAR(nu_tilde(m, gp, s), w, 1e-12);
        const GroupElement end = geodesic_point(m, gp, 1.0, s);
        EXPECT_LT((to_vector(end) - to_vector(g)).lpNorm<Eigen::Infinity>(), 1e-8);
        EXPECT_NEAR(length_at_root(bp, w), speed(m, gp), 1e-9 * (1.0 + speed(m, gp)));
        EXPECT_LE(lower_bound(bp, w), length_at_root(bp, w) + 1e-12);
      }
    }
  }
}

TEST_F(BoundaryTest, SingularRootThrows) {
  const BoundaryProblem bp(Metric(1.0, 0.0, 1.0), {0.1, 0.2, 0.3, 0.4});
  try {
    solve_constants(bp, two_pi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_root);
  }
  EXPECT_THROW(length_at_root(bp, -2.0 * two_pi), Error);
}

TEST_F(BoundaryTest, DegenerateTargetHasNoDelta) {
  const BoundaryProblem bp(Metric(1.0, 0.0, 1.0), {0.5, 0.3, 0.0, 0.0});
  EXPECT_TRUE(bp.degenerate());
  EXPECT_THROW(bp.delta(), Error);
  EXPECT_THROW(bp.gamma(), Error);
  EXPECT_THROW(BoundaryProblem(Metric(1.0, 0.0, 1.0), {NAN, 0.0, 0.0, 0.0}), Error);
}

// ---------------------------------------------------------------------------
// published shifted-oscillator values, a = 1, b = -1, d = 2

struct Published {
  double shift2, wt, delta;
  std::vector<std::pair<double, double>> roots;
  double C;
  bool upper;
};

const std::vector<Published>& PublishedCases() {
  static const std::vector<Published> cases{
      {50.0, 1.0, 0.0870, {{-1.0, 7.2111}}, 7.2111, false},
      {10.0, 1.0, 0.4351, {{-1.0, 3.464}, {-2.116, 3.817}, {2.905, 6.688}}, 3.464, false},
      {10.0, 10.0, 0.1088, {{-10.0, 34.641}, {-8.162, 34.359}, {-4.621, 26.391}}, 26.391, false},
      {50.0, 10.0, 0.0218, {{-10.0, 72.111}, {-8.112, 71.148}, {-4.698, 48.325}}, 48.325, false},
      {50.0, 50.0, 1.1418, {}, 161.500, true},
      {10.0, 50.0, 5.7087, {}, 117.579, true},
  };
  return cases;
}

TEST_F(BoundaryTest, PublishedShiftedOscillatorValues) {
  const Metric m(1.0, -1.0, 2.0);
  for (const Published& c : PublishedCases()) {
    const BoundaryProblem bp(m, ShiftedTarget(std::sqrt(c.shift2), c.wt));
    EXPECT_NEAR(bp.delta(), c.delta, 1e-4) << c.shift2 << " " << c.wt;
    const ComplexityResult res = complexity(bp);
    for (const auto& [w, l] : c.roots) {
      const auto hit = std::find_if(res.all.begin(), res.all.end(),
                                    [&](const auto& x) { return std::abs(x.nu_tilde - w) < 1e-3; });
      ASSERT_NE(hit, res.all.end()) << w;
      EXPECT_NEAR(hit->length, l, 1e-3);
    }
    if (c.upper) {
      EXPECT_LE(res.C, c.C + 1e-3);
    } else {
      EXPECT_NEAR(res.C, c.C, 1e-3);
    }
    EXPECT_GT(res.certified_bound, res.C);
  }
}

// The published case lists the exponential root -50 with length
// 50 sqrt(2 + 50) = 360.555 as a geodesic candidate.
TEST_F(BoundaryTest, ExponentialRootOfTheLongShiftedCase) {
  const BoundaryProblem bp(Metric(1.0, -1.0, 2.0), ShiftedTarget(std::sqrt(50.0), 50.0));
  EXPECT_NEAR(f_of_nu(-50.0, bp.delta()), bp.gamma(), 1e-9);
  EXPECT_NEAR(length_at_root(bp, -50.0), 50.0 * std::sqrt(52.0), 1e-9);
}

// ---------------------------------------------------------------------------
// complexity

TEST_F(BoundaryTest, ComplexityIsTheShortestCandidate) {
  for (int i = 0; i < 40; ++i) {
    const Metric m = RandomMetric();
    const GroupElement g{3.0 * u_(rng_), 3.0 * u_(rng_), u_(rng_), u_(rng_)};
    const ComplexityResult res = complexity(m, g);
    for (const auto& c : res.all) EXPECT_GE(c.length, res.C - 1e-9);
    EXPECT_GT(res.certified_bound, res.C);
    // nothing beyond the certified window beats C
    const BoundaryProblem bp(m, g);
    for (double w : enumerate_roots(bp, 2 * res.window + 4)) {
      EXPECT_GE(length_at_root(bp, w), res.C - 1e-9);
    }
  }
}

TEST_F(BoundaryTest, ComplexityIsRotationInvariant) {
  const Metric m(1.3, 0.2, 1.1);
  const GroupElement g{0.7, 1.9, 0.4, -1.1};
  const double c0 = complexity(m, g).C;
  for (double theta : {0.3, 1.7, -2.4}) {
    const GroupElement r{g.e, g.alpha, g.q * std::cos(theta) - g.p * std::sin(theta),
                         g.q * std::sin(theta) + g.p * std::cos(theta)};
    EXPECT_NEAR(complexity(m, r).C, c0, 1e-10);
  }
}

TEST_F(BoundaryTest, TailBoundIsSound) {
  for (int i = 0; i < 40; ++i) {
    const Metric m = RandomMetric();
    const GroupElement g{3.0 * u_(rng_), 3.0 * u_(rng_), u_(rng_), u_(rng_)};
    for (auto s : {kPlus, kMinus}) {
      const BoundaryProblem bp(m, g, s);
      const double radius = two_pi * 3;
      const double tail = tail_lower_bound(bp, radius);
      for (double x = radius; x < 20 * radius; x += 0.37) {
        EXPECT_LE(tail, lower_bound(bp, x) + 1e-12);
        EXPECT_LE(tail, lower_bound(bp, -x) + 1e-12);
      }
    }
  }
}

TEST_F(BoundaryTest, WindowCapIsReported) {
  SolverOptions opt;
  opt.initial_window = 0;
  opt.window_cap = 0;
  try {
    complexity(Metric(1.0, -1.0, 2.0), ShiftedTarget(std::sqrt(50.0), 50.0), kPlus, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::window_cap_exceeded);
  }
}

TEST_F(BoundaryTest, CentralTargets) {
  const Metric m(1.0, 0.0, 2.0);
  // pure rotation: the exponential geodesic
  const ComplexityResult rot = complexity(m, {0.0, 1.5, 0.0, 0.0});
  EXPECT_NEAR(rot.C, std::sqrt(2.0) * 1.5, 1e-12);
  EXPECT_EQ(rot.winner.kind, CandidateKind::principal);
  // pure phase: principal candidate vs looping geodesics
  const ComplexityResult phase = complexity(m, {20.0, 0.0, 0.0, 0.0});
  EXPECT_LT(phase.C, 20.0);
  EXPECT_EQ(phase.winner.kind, CandidateKind::looping);
  // nu_tilde = -2 pi: A = -2 pi, D^2 + F^2 = 2 nu_tilde (A - e)
  EXPECT_NEAR(phase.winner.nu_tilde, -two_pi, 1e-12);
  EXPECT_NEAR(phase.C, std::sqrt(3.0 * two_pi * two_pi + 2.0 * two_pi * 20.0), 1e-9);
  for (const auto& c : phase.all) {
    const GroupElement end = geodesic_point(m, c.params, 1.0);
    EXPECT_LT((to_vector(end) - to_vector(GroupElement{20.0, 0.0, 0.0, 0.0})).norm(), 1e-9);
    EXPECT_NEAR(speed(m, c.params), c.length, 1e-9);
  }
  EXPECT_EQ(complexity(m, GroupElement::identity()).C, 0.0);
}

// ---------------------------------------------------------------------------
// constructed minima

TEST_F(BoundaryTest, ConstructedTargetsAreMinimisedAtOddPi) {
  const Metric m(1.0, -1.0, 2.0);
  for (int k : {1, 2, 3}) {
    for (double delta : {0.05, 0.2}) {
      const GroupElement g = minima_at_odd_pi(k, m, delta);
      const BoundaryProblem bp(m, g);
      EXPECT_NEAR(bp.delta(), delta, 1e-12);
      EXPECT_NEAR(std::abs(complexity(bp).winner.nu_tilde), (2.0 * k + 1.0) * pi, 1e-6) << k << " " << delta;
    }
  }
  EXPECT_THROW(minima_at_odd_pi(0, m, 0.1), Error);
}

}  // namespace
}  // namespace osc
