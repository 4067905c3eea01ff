#include "parking/continuum.hpp"

#include <algorithm>
#include <cfloat>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "parking/compensated_sum.hpp"
#include "parking/errors.hpp"
#include "parking/quadrature.hpp"

namespace parking {

void quadrature_config::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw usage_error("quadrature tolerances must be positive");
  }
  if (!(outer_cutoff >= 10.0) || !std::isfinite(outer_cutoff)) {
    throw usage_error("outer cutoff must be >= 10");
  }
  if (max_refinements < 0) throw usage_error("max_refinements must be >= 0");
}

double inner_integrand(double y) {
  constexpr double series_cutoff = 0x1p-10;
  if (std::abs(y) < series_cutoff) {
    return 1.0 - y / 2.0 * (1.0 - y / 3.0 * (1.0 - y / 4.0 * (1.0 - y / 5.0 * (1.0 - y / 6.0))));
  }
  return -std::expm1(-y) / y;
}

namespace {

// Inner integrals are evaluated far below the outer tolerance so their error
// is negligible after the exp(-2 Ein) map.
constexpr double inner_rel_tol = 1e-15;
constexpr double inner_abs_tol = 1e-16;

}  // namespace

double inner_integral(double x, quadrature_rule rule) {
  if (x < 0.0) throw usage_error("inner_integral: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (rule == quadrature_rule::gauss_kronrod) {
    const auto res = quadrature::gauss_kronrod(inner_integrand, 0.0, x, inner_abs_tol,
                                               inner_rel_tol);
    if (!res.converged) throw convergence_error("inner integral did not converge");
    return res.value;
  }
  const auto res = quadrature::adaptive_simpson(inner_integrand, 0.0, x, 1e-15);
  if (!res.converged) throw convergence_error("inner integral did not converge");
  return res.value;
}

renyi_result renyi_constant(const quadrature_config& cfg) {
  cfg.validate();
  const double c = std::exp(-2.0 * std::numbers::egamma);
  auto integrand = [](double x) { return std::exp(-2.0 * inner_integral(x)); };

  double cutoff = cfg.outer_cutoff;
  for (int refinement = 0; refinement <= cfg.max_refinements; ++refinement, cutoff *= 2.0) {
    const double correction = c * std::exp(-cutoff) / (cutoff * cutoff * cutoff);
    if (correction > 0.25 * cfg.abs_tol) continue;
    const double tail = c / cutoff - correction;

    const auto outer = quadrature::gauss_kronrod(integrand, 0.0, cutoff, 0.5 * cfg.abs_tol,
                                                 cfg.rel_tol);
    const double propagated = 4.0 * inner_rel_tol * std::log(cutoff + 1.0) * outer.value;
    const double error = outer.error + correction + propagated;
    if (outer.converged && error <= cfg.abs_tol) {
      return {outer.value + tail, error, cutoff};
    }
  }
  throw convergence_error("renyi_constant: tolerance " + std::to_string(cfg.abs_tol) +
                          " not reached within " + std::to_string(cfg.max_refinements) +
                          " refinements");
}

double coverage_grid::at(double xq) const {
  if (values.empty()) throw usage_error("coverage_grid is empty");
  if (xq <= 0.0) return values.front();
  const double pos = xq / h;
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

namespace {

std::vector<double> march_coverage(std::size_t nodes, std::size_t per_unit, double h) {
  std::vector<double> m(nodes, 0.0);
  std::vector<double> integral(nodes, 0.0);  // int_0^{x_j} M
  compensated_sum running;
  for (std::size_t i = 1; i < nodes; ++i) {
    if (i >= per_unit) {
      const std::size_t j = i - per_unit;
      m[i] = j == 0 ? 1.0 : 1.0 + 2.0 / (static_cast<double>(j) * h) * integral[j];
    }
    // M jumps from 0 to 1 at x = 1; the panel ending there uses the left limit.
    const double right = i == per_unit ? 0.0 : m[i];
    running += 0.5 * h * (m[i - 1] + right);
    integral[i] = running.value();
  }
  return m;
}

}  // namespace

coverage_grid solve_coverage(double x_max, double h, bool estimate_error) {
  if (!(x_max >= 2.0) || !std::isfinite(x_max)) {
    throw usage_error("solve_coverage: x_max must be >= 2");
  }
  if (!(h > 0.0) || h > 1.0 / 64.0) {
    throw usage_error("solve_coverage: h must lie in (0, 1/64]");
  }
  const double per_unit_real = 1.0 / h;
  const double per_unit_rounded = std::round(per_unit_real);
  if (std::abs(per_unit_real - per_unit_rounded) > 1e-9 * per_unit_real) {
    throw usage_error("solve_coverage: h must divide 1 so that x = 1 is a node");
  }
  const auto per_unit = static_cast<std::size_t>(per_unit_rounded);
  h = 1.0 / per_unit_rounded;
  const auto nodes = static_cast<std::size_t>(std::floor(x_max / h + 1e-9)) + 1;

  coverage_grid grid;
  grid.h = h;
  grid.x_max = x_max;
  grid.values = march_coverage(nodes, per_unit, h);
  if (estimate_error) {
    const auto fine = march_coverage(2 * nodes - 1, 2 * per_unit, 0.5 * h);
    grid.error.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      // Second-order scheme: M_h - M ~ (4/3)(M_h - M_{h/2}); doubled for safety.
      const double diff = std::abs(grid.values[i] - fine[2 * i]);
      grid.error[i] = 2.0 * (4.0 / 3.0) * diff + 8.0 * DBL_EPSILON * grid.values[i];
    }
  }
  return grid;
}

double asymptote_check(const coverage_grid& grid, double m) {
  if (grid.x_max < 10.0) throw usage_error("asymptote_check: x_max must be >= 10");
  double worst = 0.0;
  const double from = 0.5 * grid.x_max;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    if (x + 1e-12 < from) continue;
    worst = std::max(worst, std::abs(grid.values[i] - (m * x + m - 1.0)));
  }
  return worst;
}

bracket dr_bracket(const coverage_grid& grid, double x) {
  if (x < 0.0 || x + 1.0 > grid.x(grid.size() - 1) + 1e-9) {
    throw usage_error("dr_bracket: need 0 <= x and x + 1 <= x_max");
  }
  bracket out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const auto first = static_cast<std::size_t>(std::ceil(x / grid.h - 1e-9));
  for (std::size_t i = first; i < grid.size(); ++i) {
    const double t = grid.x(i);
    if (t > x + 1.0 + 1e-9) break;
    const double err = grid.error.empty() ? 0.0 : grid.error[i];
    out.lo = std::min(out.lo, (grid.values[i] - err + 1.0) / (t + 1.0));
    out.hi = std::max(out.hi, (grid.values[i] + err + 1.0) / (t + 1.0));
  }
  return out;
}

}  // namespace parking
