#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mero/construct.hpp"
#include "mero/error.hpp"
#include "testkit.hpp"

using mero::Complex;

namespace {

// Largest eps with B(1/k, eps) inside the inversion of B(k, R) and the
// inversion of B(1/k, eps) inside B(k, R/4), by bisection on an
// independently coded containment test.
double eps_bisection(double R, double k) {
  auto inside = [&](double eps) {
    // 1/B(k, R) for real k > R is the real interval [1/(k+R), 1/(k-R)].
    const double c1 = 0.5 * (1.0 / (k + R) + 1.0 / (k - R));
    const double r1 = 0.5 * (1.0 / (k - R) - 1.0 / (k + R));
    if (std::abs(1.0 / k - c1) + eps > r1) return false;
    // 1/B(1/k, eps) is the disk over [1/(1/k+eps), 1/(1/k-eps)].
    if (eps >= 1.0 / k) return false;
    const double lo = 1.0 / (1.0 / k + eps), hi = 1.0 / (1.0 / k - eps);
    return lo >= k - R / 4 && hi <= k + R / 4;
  };
  double a = 0.0, b = 1.0 / k;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    (inside(mid) ? a : b) = mid;
  }
  return a;
}

const mero::DiskConfig& small_config() {
  static const mero::DiskConfig config = mero::build_configuration(0.1, {3, 4, 5});
  return config;
}

// Degree 128 is the first passing rung of the escalation ladder for this
// configuration.
const mero::EntireApprox& passing_fit() {
  static const mero::EntireApprox fit = mero::fit_entire(small_config(), 128);
  return fit;
}

mero::EntireApprox zero_polynomial() {
  mero::EntireApprox g;
  g.degree = 0;
  g.basis = mero::FitBasis::ScaledMonomial;
  g.coefficients = {0.0};
  return g;
}

std::string error_text(auto&& fn) {
  try {
    fn();
  } catch (const mero::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Configuration, DisksFollowTheFormulas) {
  const auto config = mero::build_configuration(0.5, {3, 7, 13});
  ASSERT_EQ(config.A.size(), 3u);
  EXPECT_EQ(config.A[0].center, Complex(3.0));
  EXPECT_EQ(config.A[1].center, Complex(7.0));
  EXPECT_EQ(config.A[0].radius, 0.5);
  ASSERT_EQ(config.B.size(), 2u);
  EXPECT_EQ(config.B[0].center, Complex(5.0));
  EXPECT_EQ(config.B[1].center, Complex(10.0));
  EXPECT_EQ(config.B[0].radius, 0.125);
  EXPECT_EQ(config.B_plus.center, Complex(2.0));
  EXPECT_EQ(config.B_plus.radius, 0.25);
  EXPECT_EQ(config.B_minus.center, Complex(-5.0));
  EXPECT_EQ(config.eps.size(), 2u);
  EXPECT_EQ(config.regions().size(), 3u + 2u + 3u);
}

// With R = 1 the disk A_1 = B(3, 1) reaches B_+ = B(2, 1/4), so no valid
// configuration exists.
TEST(Configuration, UnitRadiusOverlapsBPlus) {
  const std::string msg = error_text([] { mero::build_configuration(1.0, {3, 7, 13}); });
  EXPECT_NE(msg.find("A_1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("B_+"), std::string::npos) << msg;
}

TEST(Configuration, ConstraintViolationsNameTheIndex) {
  try {
    mero::build_configuration(1.0, {3, 5});
    FAIL();
  } catch (const mero::ConstructionError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  try {
    mero::build_configuration(1.0, {2, 6});
    FAIL();
  } catch (const mero::ConstructionError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  try {
    mero::build_configuration(0.1, {3, 4, 4.2});
    FAIL();
  } catch (const mero::ConstructionError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(mero::build_configuration(0.1, {3}), mero::Error);
}

TEST(Configuration, ValidOutputsSatisfyInvariants) {
  testkit::Rng rng(31);
  int built = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const double R = rng.uniform(0.01, 1.5);
    std::vector<double> k{rng.uniform(2.0, 4.0)};
    const int n = rng.integer(2, 5);
    while (static_cast<int>(k.size()) < n) k.push_back(k.back() + rng.uniform(2.0, 5.0) * R);
    mero::DiskConfig config;
    try {
      config = mero::build_configuration(R, k);
    } catch (const mero::ConstructionError&) {
      continue;
    }
    ++built;
    const auto regions = config.regions();
    for (std::size_t i = 0; i < regions.size(); ++i) {
      for (std::size_t j = i + 1; j < regions.size(); ++j) {
        EXPECT_TRUE(mero::closures_disjoint(regions[i].disk, regions[j].disk)) << regions[i].name << " " << regions[j].name;
      }
    }
    for (std::size_t m = 0; m < k.size(); ++m) {
      EXPECT_GT(k[m], 2.5);
      if (m + 1 < k.size()) EXPECT_GT(k[m + 1], k[m] + 3 * R);
    }
    EXPECT_TRUE(mero::epsilon_containments_hold(R, k, config.eps));
  }
  EXPECT_GT(built, 30);
}

TEST(Epsilon, FirstMarginBeforeSecondConstraint) {
  const std::vector<double> k{3, 7, 13};
  const auto inverse = mero::disk_inversion(mero::DiskRegion(7.0, 1.0));
  EXPECT_NEAR(inverse.center.real(), 7.0 / 48, 1e-15);
  EXPECT_NEAR(inverse.radius, 1.0 / 48, 1e-15);
  const double gap1 = inverse.radius - std::abs(1.0 / 7 - inverse.center.real());
  EXPECT_NEAR(0.5 * gap1, 1.0 / 112, 1e-15);
  const auto eps = mero::derive_epsilons(1.0, k);
  ASSERT_EQ(eps.size(), 2u);
  EXPECT_LE(eps[0], 1.0 / 112);
  EXPECT_NEAR(eps[0], 0.5 * (1.0 / 7 - 1.0 / 7.25), 1e-15);
  EXPECT_NEAR(eps[0], 0.00246305, 1e-8);
  EXPECT_TRUE(mero::epsilon_containments_hold(1.0, k, eps));
}

TEST(Epsilon, HalfOfBisectedMaximum) {
  testkit::Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const double R = rng.uniform(0.01, 2.0);
    std::vector<double> k{rng.uniform(2.6, 5.0)};
    for (int m = 0; m < 3; ++m) k.push_back(k.back() + 3 * R + rng.uniform(1e-6, 3.0));
    const auto eps = mero::derive_epsilons(R, k);
    for (std::size_t m = 0; m + 1 < k.size(); ++m) {
      EXPECT_LT(testkit::rel_err(eps[m], 0.5 * eps_bisection(R, k[m + 1])), 1e-9);
      EXPECT_GT(eps[m], 0.0);
    }
    EXPECT_TRUE(mero::epsilon_containments_hold(R, k, eps));
  }
}

TEST(Epsilon, NearViolationStaysPositive) {
  const auto config = mero::build_configuration(0.1, {3, 3.3 + 1e-6, 3.6 + 2e-6});
  for (double e : config.eps) EXPECT_GT(e, 0.0);
}

TEST(Target, Examples) {
  const auto config = mero::build_configuration(0.5, {3, 7, 13});
  EXPECT_NEAR(std::abs(*mero::target_value(config, 2.0) - 1.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(*mero::target_value(config, 3.0) - (-4.0 / 21)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(*mero::target_value(config, -5.0) - 0.2), 0.0, 1e-15);
  EXPECT_EQ(*mero::target_value(config, Complex(0.1, 0.2)), Complex(0.0));
  EXPECT_NEAR(std::abs(*mero::target_value(config, 5.0) - (2.0 - 0.2)), 0.0, 1e-15);
  EXPECT_FALSE(mero::target_value(config, Complex(0, 5)).has_value());
  EXPECT_FALSE(mero::target_value(config, 13.0).has_value());
}

TEST(Fit, ConstantCannotMeetDisjointTargets) {
  const auto config = mero::build_configuration(0.5, {3, 7, 13});
  const auto g = mero::fit_entire(config, 0);
  const Complex c = g(0.0);
  EXPECT_EQ(g(5.0), c);
  const auto report = mero::verify_inequalities(config, g);
  EXPECT_FALSE(report.passed);
  EXPECT_GE(report.find("B_-")->max_lhs, std::abs(c - 0.2) - 1e-12);
}

TEST(Fit, ObjectiveNonincreasingInDegree) {
  double previous = INFINITY;
  for (int d : {8, 16, 32, 64}) {
    const auto g = mero::fit_entire(small_config(), d);
    EXPECT_LE(g.objective, previous + 1e-12) << d;
    previous = g.objective;
  }
}

TEST(Fit, SymmetricTargetsGiveRealCoefficients) {
  auto check = [](const mero::EntireApprox& g) {
    EXPECT_EQ(g.center.imag(), 0.0);
    for (Complex a : g.coefficients) EXPECT_LE(std::abs(a.imag()), 1e-9) << g.degree;
    for (Complex h : g.hessenberg) EXPECT_LE(std::abs(h.imag()), 1e-9) << g.degree;
  };
  check(mero::fit_entire(small_config(), 24));
  check(passing_fit());
  // Monomial coefficients are only well determined at low degree.
  mero::FitOptions monomial;
  monomial.basis = mero::FitBasis::ScaledMonomial;
  check(mero::fit_entire(small_config(), 8, monomial));
}

TEST(Fit, FitCommutesWithConjugation) {
  const auto& g = passing_fit();
  for (Complex z : testkit::lattice(-6, 6, 12)) {
    const Complex a = g(std::conj(z)), b = std::conj(g(z));
    EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b))) << z;
  }
}

TEST(Fit, ReportCoversConstrainedRegions) {
  const auto& g = passing_fit();
  std::vector<std::string> want;
  for (const auto& r : small_config().regions()) {
    if (r.name != "A_3") want.push_back(r.name);
  }
  std::vector<std::string> got;
  for (const auto& r : g.fit_report) got.push_back(r.name);
  EXPECT_EQ(got, want);
  EXPECT_EQ(g.degree, 128);
  EXPECT_EQ(g.coefficients.size(), 129u);
}

TEST(Fit, BatchAndPointEvaluationAgree) {
  const auto& g = passing_fit();
  const auto zs = testkit::lattice(-6, 6, 30);
  const auto batch = g.evaluate(zs);
  for (std::size_t i = 0; i < zs.size(); ++i) EXPECT_EQ(batch[i], g(zs[i]));
}

TEST(Verify, ZeroPolynomial) {
  const auto report = mero::verify_inequalities(small_config(), zero_polynomial());
  EXPECT_TRUE(report.find("D")->passed);
  EXPECT_EQ(report.find("D")->max_lhs, 0.0);
  EXPECT_FALSE(report.find("B_+")->passed);
  EXPECT_GE(report.find("B_+")->max_lhs, 1.5);
  EXPECT_FALSE(report.passed);
}

TEST(Verify, PassingFitEstablishesInclusions) {
  const auto ineq = mero::verify_inequalities(small_config(), passing_fit());
  ASSERT_TRUE(ineq.passed);
  for (const auto& row : ineq.rows) EXPECT_TRUE(row.passed) << row.name;
  const auto inc = mero::verify_inclusions(small_config(), passing_fit());
  EXPECT_TRUE(inc.passed);
  for (const char* name : {"f(A_1) in 1/A_2", "f^2(A_1) in A_2", "f(B_+) in B_+", "f(B_1) in B_+"}) {
    ASSERT_NE(inc.find(name), nullptr) << name;
    EXPECT_TRUE(inc.find(name)->established) << name;
    EXPECT_GT(inc.find(name)->worst_margin, 0.0) << name;
  }
}

TEST(Verify, FailedPrerequisiteBlocksInclusion) {
  const auto g = mero::fit_entire(small_config(), 8);
  ASSERT_FALSE(mero::verify_inequalities(small_config(), g).find("A_1")->passed);
  const auto inc = mero::verify_inclusions(small_config(), g);
  EXPECT_FALSE(inc.find("f(A_1) in 1/A_2")->prerequisites);
  EXPECT_FALSE(inc.find("f(A_1) in 1/A_2")->established);
  EXPECT_FALSE(inc.passed);
}

TEST(Demo, PatternAndDetection) {
  const auto demo = mero::ping_pong_demo(small_config(), passing_fit(), 4);
  EXPECT_EQ(demo.orbit.annotations, (std::vector<std::string>{"A_1", "1/A_2", "A_2", "1/A_3", "A_3"}));
  EXPECT_TRUE(demo.verdict.detected);
  EXPECT_EQ(demo.verdict.pole, Complex(0.0));
  for (const auto& p : demo.orbit.points) EXPECT_LE(p.modulus(), std::max(5.0 + 0.1, 10.0));
}

TEST(Demo, BeyondTruncationBreaks) {
  const std::string msg = error_text([] { mero::ping_pong_demo(small_config(), passing_fit(), 5); });
  EXPECT_NE(msg.find("pattern break"), std::string::npos) << msg;
}

TEST(Thread, ExpOneStep) {
  const auto exp_map = mero::parse_map("exp(z)", {});
  const double e = std::numbers::e;
  const auto r = mero::thread_orbit(exp_map, {mero::DiskRegion(1.0, 0.2), mero::DiskRegion(e, 0.2)}, 0.0);
  EXPECT_LE(std::abs(r.z0 - 1.0), 0.2);
  EXPECT_LE(std::abs(testkit::exp_oracle(r.z0) - e), 0.2);
}

TEST(Thread, ExpTwoSteps) {
  const auto exp_map = mero::parse_map("exp(z)", {});
  const double e = std::numbers::e;
  const std::vector<mero::DiskRegion> regions{{1.0, 0.2}, {e, 0.2}, {std::exp(e), 0.5}};
  const auto r = mero::thread_orbit(exp_map, regions, 0.0);
  Complex z = r.z0;
  for (const auto& d : regions) {
    EXPECT_LE(std::abs(z - d.center), d.radius);
    z = testkit::exp_oracle(z);
  }
}

TEST(Thread, EmptyIntersectionFailsAtStepOne) {
  const std::string msg = error_text([] {
    mero::thread_orbit(mero::parse_map("1/z", {{0.0, 1}}), {mero::DiskRegion(1.0, 1e-9), mero::DiskRegion(1e9, 1e-9)}, 0.0);
  });
  EXPECT_NE(msg.find("threading failure at step 1"), std::string::npos) << msg;
}

TEST(Thread, AlternatesBetweenPoleAndLargeModulus) {
  const auto f = mero::parse_map("exp(z)/z", {{0.0, 1}});
  const std::vector<mero::DiskRegion> regions{{0.0, 0.05}, {{0.0, 100.0}, 5.0}, {0.0, 0.05}, {{0.0, 100.0}, 5.0}};
  const auto r = mero::thread_orbit(f, regions, 0.05);
  ASSERT_EQ(r.orbit.size(), 4u);
  for (std::size_t n = 0; n < 4; ++n) EXPECT_LE(std::abs(r.orbit[n].value() - regions[n].center), regions[n].radius + 0.05);
}

TEST(Thread, ReturnedPointsPassForwardCheck) {
  const auto f = mero::parse_map("exp(z)/z", {{0.0, 1}});
  testkit::Rng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<mero::DiskRegion> regions;
    for (int n = 0; n < 3; ++n) regions.emplace_back(rng.point(-2, 2), rng.uniform(0.05, 1.0));
    try {
      const auto r = mero::thread_orbit(f, regions, 0.0);
      for (std::size_t n = 0; n < regions.size(); ++n) {
        ASSERT_TRUE(r.orbit[n].is_finite());
        EXPECT_LE(std::abs(r.orbit[n].value() - regions[n].center), regions[n].radius);
      }
    } catch (const mero::ConstructionError& e) {
      EXPECT_NE(std::string(e.what()).find("threading failure"), std::string::npos);
    }
  }
}

TEST(Writers, CoefficientsCsvRows) {
  std::ostringstream os;
  mero::write_coefficients_csv(os, passing_fit());
  std::string line;
  std::istringstream in(os.str());
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "index,re,im");
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 129);
}
