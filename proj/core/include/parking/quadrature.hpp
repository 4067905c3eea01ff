#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace parking::quadrature {

struct result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::int64_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct panel {
  double a, b, value, error;
  friend bool operator<(const panel& x, const panel& y) { return x.error < y.error; }
};

template <class F>
panel gauss_kronrod_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[j] * pair;
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, std::int64_t& evals, bool& ok, double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    if (depth <= 0 && std::abs(delta) > 15.0 * tol) ok = false;
    err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals, ok, err) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals, ok, err);
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature: the panel with the
/// largest error estimate is bisected until the total estimate meets
/// max(abs_tol, rel_tol * |value|) or max_panels is reached.
template <class F>
result gauss_kronrod(F&& f, double a, double b, double abs_tol, double rel_tol,
                     int max_panels = 4000) {
  result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::panel> heap;
  heap.push(detail::gauss_kronrod_panel(f, a, b));
  out.evaluations = 15;
  double value = heap.top().value;
  double error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) &&
         static_cast<int>(heap.size()) < max_panels) {
    const detail::panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_panel(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_panel(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-add from the panels so the running update's round-off does not leak.
  value = 0.0;
  error = 0.0;
  std::vector<detail::panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::panel& x, const detail::panel& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  out.value = value;
  out.error = error;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return out;
}

/// Recursive adaptive Simpson with Richardson correction.
template <class F>
result adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
  result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  out.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  bool ok = true;
  out.value = detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth, out.evaluations,
                                   ok, out.error);
  out.converged = ok;
  return out;
}

}  // namespace parking::quadrature
