#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "mero/commute.hpp"
#include "mero/error.hpp"
#include "testkit.hpp"

using mero::Complex;

namespace {

mero::MeromorphicMap f_map() { return mero::parse_map("exp(z)/z", {{0.0, 1}}); }
mero::MeromorphicMap shift_map() { return mero::parse_map("z+1", {}); }

}  // namespace

TEST(Commute, MapCommutesWithItsSecondIterate) {
  const auto f = f_map();
  const auto ff = mero::compose(f, f);
  const auto samples = testkit::lattice(-4, 4, 32);
  ASSERT_GE(samples.size(), 1000u);
  const auto report = mero::check_commuting(f, ff, samples, 1e-9);
  EXPECT_TRUE(report.passed());
  EXPECT_LE(report.max_discrepancy, 1e-9);
  EXPECT_EQ(report.pairs_tested + report.near_pole_excluded, samples.size());
}

TEST(Commute, ShiftViolatesAtOne) {
  const auto report = mero::check_commuting(f_map(), shift_map(), {1.0}, 1e-9);
  ASSERT_EQ(report.violations.size(), 1u);
  const auto& v = report.violations[0];
  const double e = std::numbers::e;
  EXPECT_NEAR(v.fg.value().real(), e * e / 2, 1e-12);
  EXPECT_NEAR(v.fg.value().real(), 3.6945, 1e-4);
  EXPECT_NEAR(v.gf.value().real(), e + 1, 1e-12);
  EXPECT_NEAR(v.gf.value().real(), 3.7183, 1e-4);
  const Complex a = e * e / 2, b = e + 1;
  EXPECT_NEAR(v.discrepancy, testkit::chordal_oracle(&a, &b), 1e-14);
  EXPECT_FALSE(report.passed());
}

TEST(Commute, IdenticalMapsHaveZeroDiscrepancy) {
  const auto f = mero::parse_map("exp(z)+1/z", {{0.0, 1}});
  const auto report = mero::check_commuting(f, f, testkit::lattice(-3, 3, 20), 1e-12);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.max_discrepancy, 0.0);
}

TEST(Commute, NearPoleSamplesAreExcluded) {
  const auto report = mero::check_commuting(f_map(), shift_map(), {0.0, Complex(1e-8, 0), Complex(-1.0 + 1e-9, 0)}, 1e-9);
  EXPECT_EQ(report.near_pole_excluded, 3u);
  EXPECT_EQ(report.pairs_tested, 0u);
  EXPECT_TRUE(report.passed());
}

TEST(Commute, ViolationsIffDiscrepancyAboveTolerance) {
  testkit::Rng rng(12);
  const auto f = f_map();
  const auto g = mero::parse_map("exp(z)/z+0.001", {{0.0, 1}});
  for (int k = 0; k < 30; ++k) {
    std::vector<Complex> samples;
    for (int i = 0; i < 40; ++i) samples.push_back(rng.point(-3, 3));
    const double tol = std::pow(10.0, -rng.uniform(1, 9));
    const auto r = mero::check_commuting(f, g, samples, tol);
    EXPECT_EQ(r.violations.empty(), !(r.max_discrepancy > tol));
    for (std::size_t i = 1; i < r.violations.size(); ++i) EXPECT_LT(r.violations[i - 1].index, r.violations[i].index);
  }
}

TEST(Commute, SymmetricVerdicts) {
  testkit::Rng rng(77);
  const mero::MeromorphicMap maps[] = {f_map(), shift_map(), mero::compose(f_map(), f_map()),
                                       mero::parse_map("exp(z)", {}), mero::parse_map("1/z", {{0.0, 1}})};
  for (const auto& f : maps) {
    for (const auto& g : maps) {
      std::vector<Complex> samples;
      for (int i = 0; i < 64; ++i) samples.push_back(rng.point(-3, 3));
      const auto a = mero::check_commuting(f, g, samples, 1e-9);
      const auto b = mero::check_commuting(g, f, samples, 1e-9);
      EXPECT_EQ(a.passed(), b.passed()) << f.label() << " / " << g.label();
      EXPECT_EQ(a.max_discrepancy, b.max_discrepancy);
    }
  }
}

TEST(Commute, WorkerCountDoesNotMatter) {
  const auto samples = testkit::lattice(-3, 3, 40);
  const auto a = mero::check_commuting(f_map(), shift_map(), samples, 1e-9, mero::kCommutePoleEps, 1);
  const auto b = mero::check_commuting(f_map(), shift_map(), samples, 1e-9, mero::kCommutePoleEps, 6);
  std::ostringstream sa, sb;
  mero::write_violations_csv(sa, a);
  mero::write_violations_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.max_discrepancy, b.max_discrepancy);
}

TEST(Commute, IteratesCommuteAwayFromPoles) {
  const mero::MeromorphicMap corpus[] = {f_map(), mero::parse_map("exp(z)+1/z", {{0.0, 1}}), mero::parse_map("sin(z)/(z-1)", {{1.0, 1}})};
  testkit::Rng rng(5);
  for (const auto& f : corpus) {
    const auto ff = mero::compose(f, f);
    std::vector<Complex> samples;
    while (samples.size() < 200) {
      const Complex z = rng.point(-2, 2);
      const auto orbit = mero::iterate(f, z, 2, mero::kCommutePoleEps);
      if (orbit.pole_hit || orbit.terminal_event != mero::TerminalEvent::Completed) continue;
      samples.push_back(z);
    }
    const auto report = mero::check_commuting(f, ff, samples, 1e-9);
    EXPECT_TRUE(report.passed()) << f.label() << " max " << report.max_discrepancy;
  }
}

TEST(SharedPoles, Examples) {
  EXPECT_TRUE(mero::shared_poles(f_map(), mero::parse_map("sin(z)/z", {{0.0, 1}}), 1e-12));
  EXPECT_FALSE(mero::shared_poles(f_map(), mero::parse_map("1/z+1/(z-1)", {{0.0, 1}, {1.0, 1}}), 1e-12));
  EXPECT_TRUE(mero::shared_poles(f_map(), mero::parse_map("1/(z-1e-13)", {{1e-13, 1}}), 1e-12));
}

TEST(JuliaExperiment, IdenticalMapsAgreeExactly) {
  const auto cmp = mero::julia_equality_experiment(f_map(), f_map(), {{-4, 4, -4, 4}, 32, 32}, {40, mero::kDefaultEscapeRadius, mero::kDefaultPoleEps, 1});
  EXPECT_EQ(cmp.agreement, 1.0);
  EXPECT_EQ(cmp.f_grid, cmp.g_grid);
}

TEST(JuliaExperiment, FailingProbeIsAnError) {
  EXPECT_THROW(mero::julia_equality_experiment(f_map(), shift_map(), {{-4, 4, -4, 4}, 16, 16}), mero::DomainError);
}

TEST(Report, TextListsCounters) {
  std::ostringstream os;
  mero::write_commute_report(os, mero::check_commuting(f_map(), shift_map(), {1.0, 0.0}, 1e-9));
  const std::string text = os.str();
  EXPECT_NE(text.find("pairs_tested"), std::string::npos);
  EXPECT_NE(text.find("near_pole_excluded"), std::string::npos);
}
