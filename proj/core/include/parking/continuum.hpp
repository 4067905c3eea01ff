#pragma once

#include <cstdint>
#include <vector>

namespace parking {

struct quadrature_config {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double outer_cutoff = 30.0;  // X; the analytic tail covers [X, inf)
  int max_refinements = 8;     // doublings of X allowed

  void validate() const;
};

enum class quadrature_rule { gauss_kronrod, adaptive_simpson };

/// (1 - e^{-y}) / y, with its Maclaurin series below 2^-10.
double inner_integrand(double y);

/// Ein(x) = int_0^x (1 - e^{-y}) / y dy by the chosen rule.
double inner_integral(double x, quadrature_rule rule = quadrature_rule::gauss_kronrod);

struct renyi_result {
  double m = 0.0;
  double error = 0.0;  // estimated absolute error
  double cutoff = 0.0; // X actually used
};

/// m = int_0^inf exp(-2 Ein(x)) dx. The integrand beyond X equals
/// e^{-2 gamma} x^{-2} e^{-2 E1(x)} with 0 < E1(x) <= e^{-x}/x, so the tail is
/// e^{-2 gamma}/X up to a correction bounded by 2 e^{-2 gamma} e^{-X}/X^3.
/// Throws convergence_error if abs_tol cannot be met within max_refinements.
renyi_result renyi_constant(const quadrature_config& cfg = {});

/// Expected covered length M(x) on the nodes x_i = i*h.
struct coverage_grid {
  double h = 0.0;
  double x_max = 0.0;
  std::vector<double> values;
  /// Step-doubling estimate of |M_h(x_i) - M(x_i)|; empty if not requested.
  std::vector<double> error;

  std::size_t size() const noexcept { return values.size(); }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * h; }
  /// Linear interpolation between nodes.
  double at(double x) const;
};

/// Marches M(x) = 1 + 2/(x-1) int_0^{x-1} M with a trapezoidal running
/// integral; M = 0 below 1 and the jump at x = 1 sits on a node. h must
/// divide 1 and be <= 1/64; x_max >= 2.
coverage_grid solve_coverage(double x_max, double h, bool estimate_error = true);

/// Sup over nodes in [x_max/2, x_max] of |M(x) - (m x + m - 1)|.
double asymptote_check(const coverage_grid& grid, double m);

struct bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
  double width() const noexcept { return hi - lo; }
};

/// inf and sup of (M(t)+1)/(t+1) over nodes t in [x, x+1], widened by the
/// grid's error estimate so the enclosure of m survives discretization.
bracket dr_bracket(const coverage_grid& grid, double x);

}  // namespace parking
