#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parking/compensated_sum.hpp"

namespace parking {

/// Identifies one gap-count sequence: the exclusion half-width k (cars keep
/// at least k empty slots on each side) and the gap size r, k <= r <= 2k.
struct gap_params {
  std::int64_t k = 1;
  std::int64_t r = 1;

  /// Builds the pair, throwing usage_error when k < 1 or r is outside [k, 2k].
  static gap_params checked(std::int64_t k, std::int64_t r);

  friend bool operator==(const gap_params&, const gap_params&) = default;
};

void validate(const gap_params& params);

/// Expected r-gap count for lots too short to take a car (1 <= n <= k+1).
double initial_a(std::int64_t n, const gap_params& params);

/// u_n = t_n - t_{n-1} for the warm-up indices 2 <= n <= k+1.
double initial_u(std::int64_t n, const gap_params& params);

/// Certificate for a truncated u-series.
struct truncation_report {
  std::int64_t n_stop = 0;  // last index summed
  double bound = 0.0;       // certified bound on the omitted tail
  std::int64_t p = 0;       // block index of n_stop+1 = p*k + s, 2 <= s <= k+1
};

/// M * k * e^2 * 2^p / p!, evaluated in log-space.
double truncation_bound(double trunc_const, std::int64_t k, std::int64_t p);

/// Block index p of n = p*k + s with 2 <= s <= k+1.
constexpr std::int64_t block_index(std::int64_t n, std::int64_t k) noexcept {
  return (n - 2) / k;
}

/// Sliding state of the k-step recursion
///
///   u_{n+1} = -2(n+1+k) / ((n+1)(n+2k+2)) * (u_{n-k+1} + ... + u_n).
///
/// The window is seeded with the k warm-up values u_2..u_{k+1}, so the object
/// always holds exactly k entries and n() starts at k+1. The recursion has no
/// r-dependence, so the same window also drives sums of trajectories.
class recursion_window {
 public:
  /// `warmup` holds u_2..u_{k+1}; `t_offset` is the n = 1 term of the t-series;
  /// the truncation constant reported is `trunc_scale` times the largest
  /// |u_i| over 2 <= i <= min(n, 2k).
  recursion_window(std::int64_t k, std::span<const double> warmup, double t_offset,
                   double trunc_scale = 1.0);

  /// Window for the sequence u^{(r)} seeded from initial_u.
  static recursion_window for_gap(const gap_params& params);

  /// Steps once and returns the new u_{n+1}.
  double advance();

  std::int64_t k() const noexcept { return k_; }
  std::int64_t n() const noexcept { return n_; }
  double newest() const noexcept;

  /// Incrementally maintained window sum.
  double window_sum() const noexcept { return window_sum_.value(); }
  /// Window sum re-derived from the stored entries.
  double resummed_window_sum() const noexcept;
  /// Entries u_{n-k+1..n}, oldest first.
  std::vector<double> window() const;
  double max_window_magnitude() const noexcept;

  /// t-series partial sum through index n.
  double t_partial() const noexcept { return t_partial_.value(); }
  double trunc_const() const noexcept { return trunc_scale_ * max_early_; }

  /// Certified bound on |t_inf - t_partial()|. Only final once n() >= 2k.
  double tail_bound() const;

  /// The incremental window sum is re-derived every min(k, resum_period)
  /// steps: its absolute error tracks the largest values ever held, while u
  /// shrinks by a bounded factor per block of k steps.
  static constexpr std::int64_t resum_period = 4096;

 private:
  void resum() noexcept;

  std::int64_t k_;
  std::int64_t n_;
  std::vector<double> ring_;
  std::size_t head_ = 0;  // slot of the oldest entry
  compensated_sum window_sum_;
  compensated_sum t_partial_;
  double trunc_scale_;
  double max_early_ = 0.0;
  std::int64_t since_resum_ = 0;
  std::int64_t resum_every_;
};

struct t_limit_result {
  double t_inf = 0.0;
  truncation_report report;
};

/// Default step budget: 128*k + 4096.
constexpr std::int64_t default_step_budget(std::int64_t k) noexcept { return 128 * k + 4096; }

/// Advances `window` until the certified tail bound is <= eps. Throws
/// convergence_error if n would exceed `max_steps` (0 selects the default).
t_limit_result run_to_tolerance(recursion_window& window, double eps, std::int64_t max_steps = 0);

/// t_inf^{(r)} = lim t_n^{(r)} with a certified truncation bound.
t_limit_result t_limit(const gap_params& params, double eps, std::int64_t max_steps = 0);

/// a_n, s_n, t_n for n = 1..n_max (element i holds index n = i+1).
struct gap_sequences {
  std::vector<double> a;
  std::vector<double> s;
  std::vector<double> t;
};

inline constexpr std::int64_t default_sequence_limit = std::int64_t{1} << 26;

/// Reconstructs a, s, t from the u-recursion. Throws resource_error when
/// n_max exceeds `n_limit`.
gap_sequences finite_sequences(const gap_params& params, std::int64_t n_max,
                               std::int64_t n_limit = default_sequence_limit);

/// a_1..a_{n_max} straight from the averaging recursion over first-car
/// positions, a_n = 2/(n-k-1) * (a_1 + ... + a_{n-k-1}).
std::vector<double> exact_gap_expectations(const gap_params& params, std::int64_t n_max);
double exact_gap_expectation(std::int64_t n, const gap_params& params);

/// 3(n+1)(-2)^{n-1}/(n+3)!, the closed form of u_n for k = r = 1. Test oracle.
double closed_form_u_k1(std::int64_t n);

}  // namespace parking
