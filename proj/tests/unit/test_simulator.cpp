#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "parking/brute_force.hpp"
#include "parking/errors.hpp"
#include "parking/exact_reference.hpp"
#include "parking/gap_recursion.hpp"
#include "parking/rng.hpp"
#include "parking/simulator.hpp"

namespace {

using namespace parking;
using rational = boost::multiprecision::cpp_rational;

std::vector<std::int64_t> admissible_by_scan(const lot_state& lot) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 1; c <= lot.slots(); ++c) {
    if (c < lot.k() + 1 || c > lot.n() - 1) continue;
    bool ok = true;
    for (auto o : lot.occupied()) ok = ok && std::abs(o - c) >= lot.k() + 1;
    if (ok) out.push_back(c);
  }
  return out;
}

TEST(StreamRng, DeterministicAndDistinct) {
  stream_rng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(StreamRng, BoundedDrawsAreUniform) {
  stream_rng rng(1, 0);
  constexpr int bins = 7;
  constexpr int draws = 700000;
  std::vector<int> hist(bins);
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.below(bins);
    ASSERT_LT(v, static_cast<std::uint64_t>(bins));
    ++hist[v];
  }
  const double expect = draws / static_cast<double>(bins);
  const double sigma = std::sqrt(expect * (1.0 - 1.0 / bins));
  for (int h : hist) EXPECT_LT(std::abs(h - expect), 4.0 * sigma);
}

TEST(LotState, EmptyLotRuns) {
  lot_state lot(10, 2);
  EXPECT_EQ(lot.slots(), 11);
  EXPECT_EQ(lot.valid_count(), 7);  // centers 3..9
  EXPECT_EQ(lot.valid_positions(), admissible_by_scan(lot));
  EXPECT_EQ(lot.gaps(), std::vector<std::int64_t>{11});
  EXPECT_THROW(lot.place(2), usage_error);
  EXPECT_THROW(lot.place(10), usage_error);
  EXPECT_THROW(lot.terminal_histogram(), usage_error);
  EXPECT_THROW(lot_state(0, 1), usage_error);
  EXPECT_THROW(lot_state(5, 0), usage_error);
}

TEST(LotState, TracksBruteScanUnderRandomPlacement) {
  for (std::int64_t k : {1, 2, 3, 5}) {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
      const std::int64_t n = 20 + static_cast<std::int64_t>(trial) * 3;
      lot_state lot(n, k);
      stream_rng rng(99, trial);
      while (!lot.jammed()) {
        const auto scan = admissible_by_scan(lot);
        ASSERT_EQ(lot.valid_positions(), scan);
        ASSERT_EQ(lot.valid_count(), static_cast<std::int64_t>(scan.size()));
        for (std::size_t i = 0; i < scan.size(); ++i) {
          ASSERT_EQ(lot.nth_valid(static_cast<std::int64_t>(i)), scan[i]);
        }
        lot.place(lot.nth_valid(static_cast<std::int64_t>(rng.below(scan.size()))));
      }
      EXPECT_TRUE(admissible_by_scan(lot).empty());
      const auto gaps = lot.gaps();
      const auto cars = static_cast<std::int64_t>(lot.occupied().size());
      EXPECT_EQ(std::accumulate(gaps.begin(), gaps.end(), std::int64_t{0}) + cars, lot.slots());
      EXPECT_EQ(static_cast<std::int64_t>(gaps.size()), cars + 1);
      for (auto g : gaps) {
        EXPECT_GE(g, k);
        EXPECT_LE(g, 2 * k);
      }
    }
  }
}

TEST(SimulateLot, SmallExamples) {
  stream_rng rng(5, 0);
  // n = 1: no admissible center; one gap of k slots.
  auto h = simulate_lot(1, 3, rng);
  EXPECT_EQ(h.at(3), 1);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::int64_t{0}), 1);
  // n = 3, k = 1: the single center 2 leaves two 1-gaps.
  h = simulate_lot(3, 1, rng);
  EXPECT_EQ(h.at(1), 2);
  EXPECT_EQ(h.at(2), 0);
  // n = 4, k = 1: either center leaves one 1-gap and one 2-gap.
  for (int i = 0; i < 20; ++i) {
    h = simulate_lot(4, 1, rng);
    EXPECT_EQ(h.at(1), 1);
    EXPECT_EQ(h.at(2), 1);
  }
}

TEST(BruteForce, EqualsExactRationalOracle) {
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      const auto brute = brute_force_expectation_as<rational>(n, k, 12);
      ASSERT_EQ(static_cast<std::int64_t>(brute.size()), k + 1);
      for (std::int64_t r = k; r <= 2 * k; ++r) {
        const auto exact = reference_gap_sequences<rational>({k, r}, n).a.back();
        EXPECT_EQ(brute[r - k], exact) << "n=" << n << " k=" << k << " r=" << r;
      }
    }
  }
}

TEST(BruteForce, MemoizedMatchesPlain) {
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (std::int64_t n = 1; n <= 10; ++n) {
      EXPECT_EQ(brute_force_expectation_as<rational>(n, k, 12, true),
                brute_force_expectation_as<rational>(n, k, 12, false));
    }
  }
}

TEST(BruteForce, DoubleModeAndGuards) {
  const auto v = brute_force_expectation(5, 1);
  EXPECT_NEAR(v[0], 2.0, 1e-15);
  for (std::int64_t r = 2; r <= 4; ++r) {
    EXPECT_NEAR(brute_force_expectation(12, 2)[r - 2], exact_gap_expectation(12, {2, r}), 1e-12);
  }
  EXPECT_THROW(brute_force_expectation(15, 1), resource_error);
  EXPECT_THROW(brute_force_expectation(0, 1), usage_error);
}

TEST(MonteCarlo, DegenerateLotIsExact) {
  const auto est = estimate_gap_expectation(4, 1, 1000, 3);
  EXPECT_EQ(est.mean, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(est.std_error, (std::vector<double>{0.0, 0.0}));
}

TEST(MonteCarlo, AgreesWithRecursion) {
  const auto est = estimate_gap_expectation(20, 2, 200000, 42);
  for (std::int64_t r = 2; r <= 4; ++r) {
    const double exact = exact_gap_expectation(20, {2, r});
    const double z = (est.mean[r - 2] - exact) / est.std_error[r - 2];
    EXPECT_LE(std::abs(z), 4.0) << "r=" << r;
  }
}

TEST(MonteCarlo, SingleTrialMatchesDirectRun) {
  const auto est = estimate_gap_expectation(30, 2, 1, 11);
  stream_rng rng(11, 0);
  const auto h = simulate_lot(30, 2, rng);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    EXPECT_EQ(est.mean[i], static_cast<double>(h.counts[i]));
    EXPECT_EQ(est.std_error[i], 0.0);
  }
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  const auto one = estimate_gap_expectation(50, 3, 5000, 8, 1);
  const auto three = estimate_gap_expectation(50, 3, 5000, 8, 3);
  EXPECT_EQ(one.mean, three.mean);
  EXPECT_EQ(one.std_error, three.std_error);
  EXPECT_THROW(estimate_gap_expectation(50, 3, 0, 8), usage_error);
}

TEST(MonteCarlo, FirstCarIsUniform) {
  const std::int64_t n = 12, k = 2;
  const std::int64_t choices = n - 1 - k;  // centers k+1..n-1
  constexpr int trials = 90000;
  std::vector<int> hist(static_cast<std::size_t>(choices));
  for (int t = 0; t < trials; ++t) {
    lot_state lot(n, k);
    stream_rng rng(17, static_cast<std::uint64_t>(t));
    const auto c = lot.nth_valid(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(lot.valid_count()))));
    ++hist[static_cast<std::size_t>(c - k - 1)];
  }
  const double p = 1.0 / static_cast<double>(choices);
  const double sigma = std::sqrt(trials * p * (1.0 - p));
  for (int h : hist) EXPECT_LT(std::abs(h - trials * p), 4.0 * sigma);
}

}  // namespace
