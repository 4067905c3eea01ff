#include "parking/densities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parking/compensated_sum.hpp"
#include "parking/errors.hpp"
#include "parking/parallel.hpp"

namespace parking {

namespace {

void check_eps(double eps) {
  if (!(eps >= min_density_eps) || !std::isfinite(eps)) {
    throw usage_error("eps must be finite and >= 16 * machine epsilon, got " +
                      std::to_string(eps));
  }
}

void check_k(std::int64_t k) {
  if (k < 1) throw usage_error("k must be >= 1, got " + std::to_string(k));
}

}  // namespace

density_result density_certified(const gap_params& params, double eps) {
  validate(params);
  check_eps(eps);
  const double weight = 2.0 * static_cast<double>(params.r + 1);
  const auto limit = t_limit(params, eps / weight);
  return {weight * limit.t_inf, limit.report};
}

double density(std::int64_t k, std::int64_t r, double eps) {
  return density_certified(gap_params::checked(k, r), eps).value;
}

density_table make_density_table(std::int64_t k, double eps, std::int64_t table_limit,
                                 std::size_t workers) {
  check_k(k);
  check_eps(eps);
  if (k > table_limit) {
    throw resource_error("k = " + std::to_string(k) + " exceeds the full-table limit " +
                         std::to_string(table_limit));
  }
  const auto count = static_cast<std::size_t>(k + 1);
  density_table table;
  table.k = k;
  table.eps = eps;
  table.d.resize(count);
  table.reports.resize(count);

  parallel_for(
      count,
      [&](std::size_t i) {
        const auto result = density_certified({k, k + static_cast<std::int64_t>(i)}, eps);
        table.d[i] = result.value;
        table.reports[i] = result.report;
      },
      workers);

  table.cumulative.resize(count);
  table.scaled.resize(count);
  compensated_sum running;
  compensated_sum filling;
  const double kd = static_cast<double>(k);
  for (std::size_t i = 0; i < count; ++i) {
    const auto r = k + static_cast<std::int64_t>(i);
    running += table.d[i];
    table.cumulative[i] = running.value();
    table.scaled[i] = kd * table.d[i];
    filling += static_cast<double>(k + 1) / static_cast<double>(r + 1) * table.d[i];
  }
  table.filling = filling.value();
  return table;
}

std::vector<double> aggregate_initial_values(std::int64_t k) {
  check_k(k);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(k));
  for (std::int64_t n = 2; n <= k + 1; ++n) {
    const double nd = static_cast<double>(n);
    const double here = 1.0 / (nd * static_cast<double>(n + 2 * k + 1));
    const double before = 1.0 / ((nd - 1.0) * static_cast<double>(n + 2 * k));
    // One r has its first nonzero term at n; n-1 others are past it.
    v.push_back(here + (nd - 1.0) * (here - before));
  }
  return v;
}

density_result filling_density_aggregate(std::int64_t k, double eps) {
  check_k(k);
  check_eps(eps);
  const auto warmup = aggregate_initial_values(k);
  const double weight = 2.0 * static_cast<double>(k + 1);
  // Only r = k contributes an n = 1 term, 1/(2k+2).
  recursion_window window(k, warmup, 1.0 / weight, static_cast<double>(k + 1));
  const auto limit = run_to_tolerance(window, eps / weight);
  return {weight * limit.t_inf, limit.report};
}

std::vector<sweep_point> sweep(std::span<const std::int64_t> k_list, double eps, double m,
                               std::size_t workers) {
  check_eps(eps);
  std::vector<sweep_point> points(k_list.size());
  parallel_for(
      k_list.size(),
      [&](std::size_t i) {
        sweep_point& pt = points[i];
        pt.k = k_list[i];
        try {
          check_k(pt.k);
          const double kd = static_cast<double>(pt.k);
          pt.kDkk = kd * density(pt.k, pt.k, eps);
          pt.kDk2k = kd * density(pt.k, 2 * pt.k, eps);
          const auto filling = filling_density_aggregate(pt.k, eps);
          pt.filling = filling.value;
          pt.filling_report = filling.report;
          pt.gap_to_m = pt.filling - m;
        } catch (const std::exception& e) {
          pt.error = e.what();
        }
      },
      workers);
  return points;
}

std::int64_t profile_gap(std::int64_t k, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw usage_error("profile: t must lie in [0, 1], got " + std::to_string(t));
  }
  const double offset = std::floor(t * static_cast<double>(k) + 1e-7);
  return std::clamp(k + static_cast<std::int64_t>(offset), k, 2 * k);
}

std::vector<profile_sample> profile(const density_table& table, std::span<const double> t_grid) {
  std::vector<profile_sample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const std::int64_t r = profile_gap(table.k, t);
    const auto i = static_cast<std::size_t>(r - table.k);
    out.push_back({t, r, table.d[i], table.cumulative[i], table.scaled[i]});
  }
  return out;
}

std::vector<profile_sample> profile(std::int64_t k, std::span<const double> t_grid, double eps,
                                    std::int64_t table_limit) {
  for (double t : t_grid) profile_gap(std::max<std::int64_t>(k, 1), t);
  return profile(make_density_table(k, eps, table_limit), t_grid);
}

}  // namespace parking
