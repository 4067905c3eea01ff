#pragma once

#include <cfloat>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parking/gap_recursion.hpp"

namespace parking {

/// Smallest table-level tolerance accepted by the density routines.
inline constexpr double min_density_eps = 16.0 * DBL_EPSILON;
/// Largest k for which a full r = k..2k table is built unless overridden.
inline constexpr std::int64_t default_table_limit = std::int64_t{1} << 14;

/// Limiting gap densities D(k, r) for one k, indexed by r - k.
struct density_table {
  std::int64_t k = 0;
  std::vector<double> d;           // D(k, r)
  std::vector<double> cumulative;  // sum_{s=k}^{r} D(k, s)
  std::vector<double> scaled;      // k * D(k, r)
  double filling = 0.0;            // D(k) = sum (k+1)/(r+1) D(k, r)
  double eps = 0.0;
  std::vector<truncation_report> reports;

  double at(std::int64_t r) const { return d.at(static_cast<std::size_t>(r - k)); }
};

struct density_result {
  double value = 0.0;
  truncation_report report;
};

/// D(k, r) = 2(r+1) t_inf^{(r)}, with the t-series truncated at eps/(2(r+1)).
density_result density_certified(const gap_params& params, double eps);
double density(std::int64_t k, std::int64_t r, double eps);

/// Every D(k, r), r = k..2k, computed in parallel. Throws resource_error when
/// k > table_limit and convergence_error (carrying r) on a failed trajectory.
density_table make_density_table(std::int64_t k, double eps,
                                 std::int64_t table_limit = default_table_limit,
                                 std::size_t workers = 0);

/// v_n = sum_r u_n^{(r)} for n = 2..k+1.
std::vector<double> aggregate_initial_values(std::int64_t k);

/// Filling density D(k) from one summed trajectory: D(k) = 2(k+1) * sum_r t_inf^{(r)}.
/// The recursion is linear with r-free coefficients, so the summed sequence
/// v_n obeys it too. O(k p) instead of the table's O(k^2 p).
density_result filling_density_aggregate(std::int64_t k, double eps);

struct sweep_point {
  std::int64_t k = 0;
  double kDkk = 0.0;      // k D(k, k)
  double kDk2k = 0.0;     // k D(k, 2k)
  double filling = 0.0;   // D(k) via the aggregate path
  double gap_to_m = 0.0;  // D(k) - m
  truncation_report filling_report;
  std::string error;      // empty on success

  bool ok() const noexcept { return error.empty(); }
};

/// Endpoint densities and filling density per k. Failures are recorded per
/// point; the sweep carries on.
std::vector<sweep_point> sweep(std::span<const std::int64_t> k_list, double eps, double m,
                               std::size_t workers = 0);

struct profile_sample {
  double t = 0.0;
  std::int64_t r = 0;     // floor((1+t) k)
  double d = 0.0;         // D(k, r)
  double F = 0.0;         // sum_{s=k}^{r} D(k, s)
  double Fprime = 0.0;    // k D(k, r)
};

/// Finite-k samples of the limiting distribution function and its density.
std::vector<profile_sample> profile(const density_table& table, std::span<const double> t_grid);
std::vector<profile_sample> profile(std::int64_t k, std::span<const double> t_grid, double eps,
                                    std::int64_t table_limit = default_table_limit);

/// Gap index floor((1+t) k) for t in [0, 1], robust to round-off at integers.
std::int64_t profile_gap(std::int64_t k, double t);

}  // namespace parking
