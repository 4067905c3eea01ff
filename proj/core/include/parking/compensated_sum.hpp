#pragma once

#include <cmath>

namespace parking {

/// Running sum with an error-free TwoSum correction term.
///
/// The correction accumulates the exact rounding error of every addition, so
/// value() is accurate to about one ulp of the result even when the addends
/// alternate in sign and span many orders of magnitude.
class compensated_sum {
 public:
  constexpr compensated_sum() noexcept = default;
  constexpr explicit compensated_sum(double v) noexcept : hi_(v) {}

  constexpr compensated_sum& operator+=(double x) noexcept {
    const double s = hi_ + x;
    const double bp = s - hi_;
    lo_ += (hi_ - (s - bp)) + (x - bp);
    hi_ = s;
    return *this;
  }

  constexpr compensated_sum& operator-=(double x) noexcept { return *this += -x; }

  constexpr double value() const noexcept { return hi_ + lo_; }
  constexpr double high() const noexcept { return hi_; }
  constexpr double low() const noexcept { return lo_; }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

template <class Range>
double compensated_total(const Range& values) noexcept {
  compensated_sum acc;
  for (double v : values) acc += v;
  return acc.value();
}

}  // namespace parking
