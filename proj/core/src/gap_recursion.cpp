#include "parking/gap_recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "parking/errors.hpp"

namespace parking {

gap_params gap_params::checked(std::int64_t k, std::int64_t r) {
  gap_params p{k, r};
  validate(p);
  return p;
}

void validate(const gap_params& params) {
  if (params.k < 1) {
    throw usage_error("k must be >= 1, got " + std::to_string(params.k));
  }
  if (params.r < params.k || params.r > 2 * params.k) {
    throw usage_error("r must lie in [k, 2k] = [" + std::to_string(params.k) + ", " +
                      std::to_string(2 * params.k) + "], got " + std::to_string(params.r));
  }
}

double initial_a(std::int64_t n, const gap_params& params) {
  validate(params);
  if (n < 1 || n > params.k + 1) {
    throw usage_error("initial_a: n must lie in [1, k+1], got " + std::to_string(n));
  }
  // A lot with n <= k+1 admits no car: it is a single gap of n+k-1 slots.
  return n == params.r - params.k + 1 ? 1.0 : 0.0;
}

namespace {

// t_n for the empty-lot indices, 1/(n(n+2k+1)).
double empty_lot_t(std::int64_t n, std::int64_t k) {
  return 1.0 / (static_cast<double>(n) * static_cast<double>(n + 2 * k + 1));
}

}  // namespace

double initial_u(std::int64_t n, const gap_params& params) {
  validate(params);
  const std::int64_t k = params.k;
  const std::int64_t r = params.r;
  if (n < 2 || n > k + 1) {
    throw usage_error("initial_u: n must lie in [2, k+1], got " + std::to_string(n));
  }
  if (n <= r - k) return 0.0;
  if (n == r - k + 1 && r >= k + 1) {
    return 1.0 / (static_cast<double>(r - k + 1) * static_cast<double>(r + k + 2));
  }
  return empty_lot_t(n, k) - empty_lot_t(n - 1, k);
}

double truncation_bound(double trunc_const, std::int64_t k, std::int64_t p) {
  if (trunc_const <= 0.0) return 0.0;
  const double pd = static_cast<double>(p);
  const double log_bound = std::log(trunc_const) + std::log(static_cast<double>(k)) + 2.0 +
                           pd * std::numbers::ln2 - std::lgamma(pd + 1.0);
  return std::exp(log_bound);
}

recursion_window::recursion_window(std::int64_t k, std::span<const double> warmup,
                                   double t_offset, double trunc_scale)
    : k_(k), n_(k + 1), ring_(warmup.begin(), warmup.end()), t_partial_(t_offset),
      trunc_scale_(trunc_scale), resum_every_(std::min(k, resum_period)) {
  if (k < 1) throw usage_error("recursion_window: k must be >= 1");
  if (static_cast<std::int64_t>(warmup.size()) != k) {
    throw usage_error("recursion_window: warm-up must hold exactly k values");
  }
  for (double u : ring_) {
    window_sum_ += u;
    t_partial_ += u;
    max_early_ = std::max(max_early_, std::abs(u));
  }
}

recursion_window recursion_window::for_gap(const gap_params& params) {
  validate(params);
  std::vector<double> warmup;
  warmup.reserve(static_cast<std::size_t>(params.k));
  for (std::int64_t n = 2; n <= params.k + 1; ++n) warmup.push_back(initial_u(n, params));
  const double s1 = params.r == params.k ? 1.0 : 0.0;
  return recursion_window(params.k, warmup, s1 / static_cast<double>(2 * params.k + 2));
}

double recursion_window::advance() {
  const std::int64_t next = n_ + 1;
  const double coef = -2.0 * static_cast<double>(next + k_) /
                      (static_cast<double>(next) * static_cast<double>(next + 2 * k_ + 1));
  const double u = coef * window_sum_.value();

  const double oldest = ring_[head_];
  ring_[head_] = u;
  if (++head_ == ring_.size()) head_ = 0;

  window_sum_ += u;
  window_sum_ -= oldest;
  if (++since_resum_ == resum_every_) resum();

  t_partial_ += u;
  if (next <= 2 * k_) max_early_ = std::max(max_early_, std::abs(u));
  n_ = next;
  return u;
}

double recursion_window::newest() const noexcept {
  return ring_[head_ == 0 ? ring_.size() - 1 : head_ - 1];
}

void recursion_window::resum() noexcept {
  window_sum_ = compensated_sum{};
  for (double u : ring_) window_sum_ += u;
  since_resum_ = 0;
}

double recursion_window::resummed_window_sum() const noexcept { return compensated_total(ring_); }

std::vector<double> recursion_window::window() const {
  std::vector<double> out;
  out.reserve(ring_.size());
  for (std::size_t i = 0; i < ring_.size(); ++i) out.push_back(ring_[(head_ + i) % ring_.size()]);
  return out;
}

double recursion_window::max_window_magnitude() const noexcept {
  double m = 0.0;
  for (double u : ring_) m = std::max(m, std::abs(u));
  return m;
}

double recursion_window::tail_bound() const {
  return truncation_bound(trunc_const(), k_, block_index(n_ + 1, k_));
}

t_limit_result run_to_tolerance(recursion_window& window, double eps, std::int64_t max_steps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw usage_error("tolerance must be positive and finite");
  }
  const std::int64_t k = window.k();
  if (max_steps <= 0) max_steps = default_step_budget(k);

  std::int64_t cached_p = -1;
  double bound = std::numeric_limits<double>::infinity();
  for (;;) {
    // The envelope constant is final once u_2..u_{2k} have all been seen.
    if (window.n() >= 2 * k) {
      const std::int64_t p = block_index(window.n() + 1, k);
      if (p != cached_p) {
        bound = truncation_bound(window.trunc_const(), k, p);
        cached_p = p;
      }
      if (bound <= eps) {
        return {window.t_partial(), truncation_report{window.n(), bound, p}};
      }
    }
    if (window.n() >= max_steps) {
      throw convergence_error("step budget of " + std::to_string(max_steps) +
                              " exhausted with tail bound " + std::to_string(bound));
    }
    window.advance();
  }
}

t_limit_result t_limit(const gap_params& params, double eps, std::int64_t max_steps) {
  auto window = recursion_window::for_gap(params);
  try {
    return run_to_tolerance(window, eps, max_steps);
  } catch (const convergence_error& e) {
    throw convergence_error("t_limit(k=" + std::to_string(params.k) + ", r=" +
                                std::to_string(params.r) + "): " + e.what(),
                            params.r);
  }
}

gap_sequences finite_sequences(const gap_params& params, std::int64_t n_max,
                               std::int64_t n_limit) {
  validate(params);
  if (n_max < 1) throw usage_error("finite_sequences: n_max must be >= 1");
  if (n_max > n_limit) {
    throw resource_error("finite_sequences: n_max " + std::to_string(n_max) +
                         " exceeds limit " + std::to_string(n_limit));
  }
  const std::int64_t k = params.k;
  const auto size = static_cast<std::size_t>(n_max);
  gap_sequences out;
  out.a.resize(size);
  out.s.resize(size);
  out.t.resize(size);

  const double s1 = params.r == k ? 1.0 : 0.0;
  compensated_sum t_acc(s1 / static_cast<double>(2 * k + 2));
  out.a[0] = s1;
  out.s[0] = s1;
  out.t[0] = t_acc.value();

  auto record = [&](std::int64_t n, double u) {
    const double t_prev = t_acc.value();
    t_acc += u;
    const double nn = static_cast<double>(n);
    const double w = nn * static_cast<double>(n + 2 * k + 1);
    const auto i = static_cast<std::size_t>(n - 1);
    out.t[i] = t_acc.value();
    out.s[i] = w * out.t[i];
    // s_n - s_{n-1} rearranged so the O(n^2) parts cancel symbolically.
    out.a[i] = 2.0 * static_cast<double>(n + k) * t_prev + w * u;
  };

  const std::int64_t warm_end = std::min(n_max, k + 1);
  for (std::int64_t n = 2; n <= warm_end; ++n) record(n, initial_u(n, params));
  if (n_max > k + 1) {
    auto window = recursion_window::for_gap(params);
    while (window.n() < n_max) {
      const double u = window.advance();
      record(window.n(), u);
    }
  }
  return out;
}

std::vector<double> exact_gap_expectations(const gap_params& params, std::int64_t n_max) {
  validate(params);
  if (n_max < 1) throw usage_error("exact_gap_expectations: n_max must be >= 1");
  const std::int64_t k = params.k;
  std::vector<double> a(static_cast<std::size_t>(n_max));
  compensated_sum lagged;  // a_1 + ... + a_{n-k-1}
  std::int64_t lag_end = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double value;
    if (n <= k + 1) {
      value = n == params.r - k + 1 ? 1.0 : 0.0;
    } else {
      while (lag_end < n - k - 1) lagged += a[static_cast<std::size_t>(lag_end++)];
      value = 2.0 * lagged.value() / static_cast<double>(n - k - 1);
    }
    a[static_cast<std::size_t>(n - 1)] = value;
  }
  return a;
}

double exact_gap_expectation(std::int64_t n, const gap_params& params) {
  if (n < 1) throw usage_error("exact_gap_expectation: n must be >= 1");
  return exact_gap_expectations(params, n).back();
}

double closed_form_u_k1(std::int64_t n) {
  if (n < 2) throw usage_error("closed_form_u_k1: n must be >= 2");
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  if (n + 3 <= 160) {
    // Doubling is exact, so only the n+3 divisions round.
    double v = 3.0 * static_cast<double>(n + 1);
    for (std::int64_t j = 1; j <= n + 3; ++j) {
      v /= static_cast<double>(j);
      if (j <= n - 1) v *= 2.0;
    }
    return sign * v;
  }
  const double nd = static_cast<double>(n);
  const double log_mag = std::log(3.0 * (nd + 1.0)) + (nd - 1.0) * std::numbers::ln2 -
                         std::lgamma(nd + 4.0);
  return sign * std::exp(log_mag);
}

}  // namespace parking
