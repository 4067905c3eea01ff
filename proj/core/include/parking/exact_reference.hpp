#pragma once

// Reference evaluation of the gap sequences in a caller-chosen number type
// (an exact rational or a wide binary float). Works straight from the
// first-car averaging recursion and the definitions of s, t and u; it never
// touches the k-step u-recursion, so it can check that path independently.

#include <cstdint>
#include <string>
#include <vector>

#include "parking/errors.hpp"
#include "parking/gap_recursion.hpp"

namespace parking {

template <class Number>
struct reference_sequences {
  // Element i holds index n = i+1; u[0] is unused and left at zero.
  std::vector<Number> a, s, t, u;
};

inline constexpr std::int64_t default_reference_limit = 2000;

template <class Number>
reference_sequences<Number> reference_gap_sequences(const gap_params& params, std::int64_t n_max,
                                                    std::int64_t n_limit = default_reference_limit) {
  validate(params);
  if (n_max < 1) throw usage_error("reference_gap_sequences: n_max must be >= 1");
  if (n_max > n_limit) {
    throw resource_error("reference_gap_sequences: n_max " + std::to_string(n_max) +
                         " exceeds limit " + std::to_string(n_limit));
  }
  const std::int64_t k = params.k;
  const auto size = static_cast<std::size_t>(n_max);
  reference_sequences<Number> out;
  out.a.assign(size, Number(0));
  out.s.assign(size, Number(0));
  out.t.assign(size, Number(0));
  out.u.assign(size, Number(0));

  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    if (n <= k + 1) {
      out.a[i] = Number(n == params.r - k + 1 ? 1 : 0);
    } else {
      out.a[i] = Number(2) * out.s[static_cast<std::size_t>(n - k - 2)] / Number(n - k - 1);
    }
    out.s[i] = (i == 0 ? Number(0) : out.s[i - 1]) + out.a[i];
    out.t[i] = out.s[i] / Number(n * (n + 2 * k + 1));
    if (i > 0) out.u[i] = out.t[i] - out.t[i - 1];
  }
  return out;
}

}  // namespace parking
