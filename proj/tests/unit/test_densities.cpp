#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "parking/continuum.hpp"
#include "parking/densities.hpp"
#include "parking/errors.hpp"
#include "parking/exact_reference.hpp"
#include "parking/gap_recursion.hpp"

namespace {

using namespace parking;
using rational = boost::multiprecision::cpp_rational;

const double e2 = std::exp(-2.0);
constexpr double literature_m = 0.7475979203;

TEST(Density, KOneGoldenValues) {
  EXPECT_NEAR(density(1, 1, 1e-14), 1.0 - 3.0 * e2, 1e-13);
  EXPECT_NEAR(density(1, 2, 1e-14), 3.0 * e2, 1e-13);
}

TEST(Density, KTwoPinnedByExactRational) {
  // 2(r+1) t_n at n = 63 (block p = 30) in exact arithmetic.
  const auto ref = reference_gap_sequences<rational>({2, 2}, 63);
  const double pinned = static_cast<double>(rational(6 * ref.t.back()));
  EXPECT_NEAR(pinned, 0.44397305781294516, 1e-16);
  EXPECT_NEAR(density(2, 2, 1e-13), pinned, 1e-13);
}

TEST(Density, RejectsBadInput) {
  EXPECT_THROW(density(2, 5, 1e-12), usage_error);
  EXPECT_THROW(density(2, 2, 0.0), usage_error);
  EXPECT_THROW(density(2, 2, 1e-17), usage_error);
}

TEST(DensityTable, KOne) {
  const auto t = make_density_table(1, 1e-14);
  ASSERT_EQ(t.d.size(), 2u);
  EXPECT_NEAR(t.d[0], 1.0 - 3.0 * e2, 1e-13);
  EXPECT_NEAR(t.d[1], 3.0 * e2, 1e-13);
  EXPECT_NEAR(t.cumulative[0], t.d[0], 1e-16);
  EXPECT_NEAR(t.cumulative[1], 1.0, 1e-13);
  EXPECT_NEAR(t.filling, 1.0 - e2, 1e-13);
  EXPECT_DOUBLE_EQ(t.at(2), t.d[1]);
}

TEST(DensityTable, Invariants) {
  for (std::int64_t k : {1, 2, 3, 7, 16, 33, 100}) {
    const double eps = 1e-13;
    const auto t = make_density_table(k, eps);
    ASSERT_EQ(static_cast<std::int64_t>(t.d.size()), k + 1);
    for (std::size_t i = 0; i < t.d.size(); ++i) {
      EXPECT_GE(t.d[i], 0.0);
      EXPECT_DOUBLE_EQ(t.scaled[i], static_cast<double>(k) * t.d[i]);
      if (i > 0) EXPECT_GE(t.cumulative[i], t.cumulative[i - 1]);
      EXPECT_LE(t.reports[i].bound, eps / (2.0 * static_cast<double>(k + i + 1)));
    }
    EXPECT_NEAR(t.cumulative.back(), 1.0, 10.0 * eps * static_cast<double>(k + 1));
    EXPECT_GE(t.filling, static_cast<double>(k + 1) / static_cast<double>(2 * k + 1));
    EXPECT_LE(t.filling, 1.0);
  }
}

TEST(DensityTable, Guards) {
  EXPECT_THROW(make_density_table(100, 1e-12, 64), resource_error);
  EXPECT_THROW(make_density_table(0, 1e-12), usage_error);
}

TEST(DensityTable, WorkerCountDoesNotChangeResult) {
  const auto one = make_density_table(40, 1e-13, default_table_limit, 1);
  const auto four = make_density_table(40, 1e-13, default_table_limit, 4);
  EXPECT_EQ(one.d, four.d);
  EXPECT_EQ(one.cumulative, four.cumulative);
  EXPECT_EQ(one.filling, four.filling);
}

TEST(AggregateInitialValues, MatchPerGapSum) {
  for (std::int64_t k = 1; k <= 64; ++k) {
    const auto v = aggregate_initial_values(k);
    ASSERT_EQ(static_cast<std::int64_t>(v.size()), k);
    for (std::int64_t n = 2; n <= k + 1; ++n) {
      double sum = 0.0;
      for (std::int64_t r = k; r <= 2 * k; ++r) sum += initial_u(n, {k, r});
      EXPECT_NEAR(v[n - 2], sum, 1e-15 * std::max(1.0, std::abs(sum)) + 1e-18)
          << "k=" << k << " n=" << n;
    }
  }
}

TEST(FillingAggregate, KOne) { EXPECT_NEAR(filling_density_aggregate(1, 1e-14).value, 1.0 - e2, 1e-13); }

TEST(FillingAggregate, PathEquivalence) {
  for (std::int64_t k = 1; k <= 32; ++k) {
    const auto table = make_density_table(k, 1e-14);
    const auto agg = filling_density_aggregate(k, 1e-14);
    EXPECT_NEAR(table.filling, agg.value, 1e-12) << "k=" << k;
  }
  EXPECT_NEAR(make_density_table(8, 1e-14).filling, filling_density_aggregate(8, 1e-14).value, 1e-12);
}

TEST(FillingAggregate, Bounds) {
  for (std::int64_t k : {1, 5, 64, 1000, 30000}) {
    const double d = filling_density_aggregate(k, 1e-13).value;
    EXPECT_GE(d, static_cast<double>(k + 1) / static_cast<double>(2 * k + 1));
    EXPECT_LE(d, 1.0);
  }
}

TEST(Normalization, SmallAndMediumK) {
  for (std::int64_t k = 1; k <= 64; ++k) {
    EXPECT_NEAR(make_density_table(k, 1e-13).cumulative.back(), 1.0, 1e-10) << "k=" << k;
  }
  EXPECT_NEAR(make_density_table(256, 1e-13).cumulative.back(), 1.0, 1e-10);
}

TEST(FiniteNConvergence, ScaledCountsApproachDensity) {
  // a_n grows like 2(n + k) t, so the raw ratio carries a k/n bias.
  const std::int64_t n = 1'000'000;
  const double nd = static_cast<double>(n);
  for (std::int64_t k = 1; k <= 8; ++k) {
    for (std::int64_t r = k; r <= 2 * k; ++r) {
      const double a = exact_gap_expectation(n, {k, r});
      const double d = density(k, r, 1e-14);
      const double scaled = static_cast<double>(r + 1) * a / nd;
      const double bias = d * static_cast<double>(k) / nd;
      EXPECT_NEAR(scaled - bias, d, 1e-9) << "k=" << k << " r=" << r;
      if (k <= 2) EXPECT_NEAR(scaled, d, 1e-6) << "k=" << k << " r=" << r;
    }
  }
}

TEST(Sweep, KOneRow) {
  const std::vector<std::int64_t> ks{1};
  const auto pts = sweep(ks, 1e-13, literature_m);
  ASSERT_EQ(pts.size(), 1u);
  ASSERT_TRUE(pts[0].ok());
  EXPECT_NEAR(pts[0].kDkk, 1.0 - 3.0 * e2, 1e-12);
  EXPECT_NEAR(pts[0].kDk2k, 3.0 * e2, 1e-12);
  EXPECT_NEAR(pts[0].gap_to_m, 0.117066796, 1e-9);
}

TEST(Sweep, FailuresAreRecordedPerPoint) {
  const std::vector<std::int64_t> ks{4, 0, 8};
  const auto pts = sweep(ks, 1e-13, literature_m);
  EXPECT_TRUE(pts[0].ok());
  EXPECT_FALSE(pts[1].ok());
  EXPECT_TRUE(pts[2].ok());
}

TEST(Sweep, MonotoneTrendsOverOctaves) {
  std::vector<std::int64_t> ks;
  for (int e = 3; e <= 16; ++e) ks.push_back(std::int64_t{1} << e);
  const double m = renyi_constant().m;
  const auto pts = sweep(ks, 1e-13, m);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ASSERT_TRUE(pts[i].ok()) << pts[i].error;
    EXPECT_GT(pts[i].gap_to_m, 0.0);
    EXPECT_GT(pts[i].kDkk, 0.0);
    if (i > 0) {
      EXPECT_GT(pts[i].kDk2k, pts[i - 1].kDk2k);
      EXPECT_LT(pts[i].gap_to_m, pts[i - 1].gap_to_m);
    }
  }
}

TEST(Profile, Endpoints) {
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto s = profile(1, grid, 1e-14);
  EXPECT_NEAR(s[0].Fprime, 1.0 - 3.0 * e2, 1e-13);
  EXPECT_NEAR(s.back().F, 1.0, 1e-12);
  EXPECT_EQ(s[1].r, 1);
}

TEST(Profile, MonotoneOnFineGrid) {
  std::vector<double> grid;
  for (int i = 0; i < 256; ++i) grid.push_back(i / 255.0);
  const auto s = profile(1024, grid, 1e-13);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GE(s[i].F, s[i - 1].F);
  EXPECT_NEAR(s.back().F, 1.0, 1e-10);
  EXPECT_GT(s.front().Fprime, s.back().Fprime);
}

TEST(Profile, GapIndexIsExactAtGridIntegers) {
  for (int i = 0; i <= 255; ++i) {
    const double t = i / 255.0;
    EXPECT_EQ(profile_gap(255, t), 255 + i);
  }
  EXPECT_THROW(profile_gap(4, 1.5), usage_error);
}

}  // namespace
