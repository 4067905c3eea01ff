#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "parking/rng.hpp"

namespace parking {

/// Terminal gap sizes of one realization, counts indexed by r - k. Boundary
/// gaps (before the first car, after the last) count like interior ones; an
/// empty lot is a single gap of n+k-1 slots.
struct gap_histogram {
  std::int64_t k = 0;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::int64_t r) const { return counts.at(static_cast<std::size_t>(r - k)); }
};

/// A lot of n+k-1 slots (1-based) where car centers keep >= k empty slots to
/// either side and to the lot ends, so centers lie in [k+1, n-1] and differ
/// pairwise by >= k+1.
///
/// The admissible centers form disjoint runs. A car only shrinks the run it
/// lands in, so the runs live in an ordered map plus a Fenwick tree of run
/// lengths keyed by run start; uniform sampling and placement are O(log n).
class lot_state {
 public:
  lot_state(std::int64_t n, std::int64_t k);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t k() const noexcept { return k_; }
  std::int64_t slots() const noexcept { return n_ + k_ - 1; }
  const std::set<std::int64_t>& occupied() const noexcept { return occupied_; }

  std::int64_t valid_count() const noexcept { return valid_count_; }
  bool jammed() const noexcept { return valid_count_ == 0; }
  bool is_valid(std::int64_t center) const;
  /// The index-th admissible center in increasing order, 0 <= index < valid_count().
  std::int64_t nth_valid(std::int64_t index) const;
  std::vector<std::int64_t> valid_positions() const;

  /// Parks a car; throws usage_error if the center is not admissible.
  void place(std::int64_t center);

  /// Empty runs in slot order, boundary runs included (possibly of size 0
  /// only when k = 0, which is rejected).
  std::vector<std::int64_t> gaps() const;
  /// Histogram of gaps(); requires jammed().
  gap_histogram terminal_histogram() const;

 private:
  void fenwick_add(std::int64_t pos, std::int64_t delta);

  std::int64_t n_;
  std::int64_t k_;
  std::set<std::int64_t> occupied_;
  std::map<std::int64_t, std::int64_t> runs_;  // start -> inclusive end
  std::vector<std::int64_t> tree_;             // Fenwick over slot positions
  std::int64_t log_span_ = 0;
  std::int64_t valid_count_ = 0;
};

/// One realization: cars arrive until no admissible center remains, each
/// choosing uniformly among the admissible centers.
gap_histogram simulate_lot(std::int64_t n, std::int64_t k, stream_rng& rng);

struct gap_estimate {
  std::int64_t k = 0;
  std::int64_t trials = 0;
  std::vector<double> mean;    // indexed by r - k
  std::vector<double> std_error;  // standard error of the mean (0 when trials == 1)
};

/// Monte Carlo estimate of a_n^{(r)} for every r. Trial t draws from
/// stream_rng(seed, t) and sums are integer, so the result is bit-identical
/// for any worker count.
gap_estimate estimate_gap_expectation(std::int64_t n, std::int64_t k, std::int64_t trials,
                                      std::uint64_t seed, std::size_t workers = 0);

inline constexpr std::int64_t default_brute_force_limit = 14;

/// Exact expectation by enumerating the whole placement tree (double weights).
std::vector<double> brute_force_expectation(std::int64_t n, std::int64_t k,
                                            std::int64_t n_limit = default_brute_force_limit);

}  // namespace parking
