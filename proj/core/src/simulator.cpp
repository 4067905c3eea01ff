#include "parking/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parking/brute_force.hpp"
#include "parking/errors.hpp"
#include "parking/parallel.hpp"

namespace parking {

lot_state::lot_state(std::int64_t n, std::int64_t k) : n_(n), k_(k) {
  if (n < 1 || k < 1) {
    throw usage_error("lot_state: need n >= 1 and k >= 1 (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  tree_.assign(static_cast<std::size_t>(slots()) + 1, 0);
  log_span_ = 1;
  while (log_span_ * 2 <= slots()) log_span_ *= 2;
  if (n - 1 >= k + 1) {
    runs_.emplace(k + 1, n - 1);
    fenwick_add(k + 1, n - k - 1);
    valid_count_ = n - k - 1;
  }
}

void lot_state::fenwick_add(std::int64_t pos, std::int64_t delta) {
  for (auto i = pos; i <= slots(); i += i & -i) tree_[static_cast<std::size_t>(i)] += delta;
}

bool lot_state::is_valid(std::int64_t center) const {
  auto it = runs_.upper_bound(center);
  if (it == runs_.begin()) return false;
  --it;
  return center <= it->second;
}

std::int64_t lot_state::nth_valid(std::int64_t index) const {
  if (index < 0 || index >= valid_count_) {
    throw usage_error("nth_valid: index " + std::to_string(index) + " out of range");
  }
  // Largest pos with prefix(pos) <= index; the run containing the target starts at pos+1.
  std::int64_t pos = 0;
  std::int64_t remaining = index;
  for (std::int64_t step = log_span_; step > 0; step /= 2) {
    const std::int64_t next = pos + step;
    if (next <= slots() && tree_[static_cast<std::size_t>(next)] <= remaining) {
      pos = next;
      remaining -= tree_[static_cast<std::size_t>(next)];
    }
  }
  return pos + 1 + remaining;
}

std::vector<std::int64_t> lot_state::valid_positions() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(valid_count_));
  for (const auto& [lo, hi] : runs_) {
    for (auto c = lo; c <= hi; ++c) out.push_back(c);
  }
  return out;
}

void lot_state::place(std::int64_t center) {
  auto it = runs_.upper_bound(center);
  if (it == runs_.begin() || center > std::prev(it)->second) {
    throw usage_error("place: center " + std::to_string(center) + " is not admissible");
  }
  --it;
  const auto [lo, hi] = *it;
  runs_.erase(it);
  fenwick_add(lo, -(hi - lo + 1));
  valid_count_ -= hi - lo + 1;

  const std::int64_t left_hi = center - k_ - 1;
  if (left_hi >= lo) {
    runs_.emplace(lo, left_hi);
    fenwick_add(lo, left_hi - lo + 1);
    valid_count_ += left_hi - lo + 1;
  }
  const std::int64_t right_lo = center + k_ + 1;
  if (right_lo <= hi) {
    runs_.emplace(right_lo, hi);
    fenwick_add(right_lo, hi - right_lo + 1);
    valid_count_ += hi - right_lo + 1;
  }
  occupied_.insert(center);
}

std::vector<std::int64_t> lot_state::gaps() const {
  std::vector<std::int64_t> out;
  out.reserve(occupied_.size() + 1);
  std::int64_t previous = 0;
  for (std::int64_t c : occupied_) {
    out.push_back(c - previous - 1);
    previous = c;
  }
  out.push_back(slots() - previous);
  return out;
}

gap_histogram lot_state::terminal_histogram() const {
  if (!jammed()) throw usage_error("terminal_histogram: lot still admits a car");
  gap_histogram h{k_, std::vector<std::int64_t>(static_cast<std::size_t>(k_ + 1), 0)};
  for (std::int64_t g : gaps()) {
    if (g < k_ || g > 2 * k_) {
      throw std::logic_error("terminal gap of " + std::to_string(g) + " slots outside [k, 2k]");
    }
    ++h.counts[static_cast<std::size_t>(g - k_)];
  }
  return h;
}

gap_histogram simulate_lot(std::int64_t n, std::int64_t k, stream_rng& rng) {
  lot_state lot(n, k);
  while (!lot.jammed()) {
    const auto index = rng.below(static_cast<std::uint64_t>(lot.valid_count()));
    lot.place(lot.nth_valid(static_cast<std::int64_t>(index)));
  }
  return lot.terminal_histogram();
}

gap_estimate estimate_gap_expectation(std::int64_t n, std::int64_t k, std::int64_t trials,
                                      std::uint64_t seed, std::size_t workers) {
  if (trials < 1) throw usage_error("estimate_gap_expectation: trials must be >= 1");
  lot_state probe(n, k);  // validates n, k

  constexpr std::int64_t block = 1024;
  const auto width = static_cast<std::size_t>(k + 1);
  const auto blocks = static_cast<std::size_t>((trials + block - 1) / block);
  std::vector<std::int64_t> sums(blocks * width, 0);
  std::vector<std::int64_t> squares(blocks * width, 0);

  parallel_for(
      blocks,
      [&](std::size_t b) {
        const auto first = static_cast<std::int64_t>(b) * block;
        const auto last = std::min(trials, first + block);
        for (auto t = first; t < last; ++t) {
          stream_rng rng(seed, static_cast<std::uint64_t>(t));
          const auto h = simulate_lot(n, k, rng);
          for (std::size_t r = 0; r < width; ++r) {
            sums[b * width + r] += h.counts[r];
            squares[b * width + r] += h.counts[r] * h.counts[r];
          }
        }
      },
      workers);

  gap_estimate out{k, trials, std::vector<double>(width), std::vector<double>(width)};
  const auto count = static_cast<double>(trials);
  for (std::size_t r = 0; r < width; ++r) {
    std::int64_t sum = 0;
    std::int64_t sq = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      sum += sums[b * width + r];
      sq += squares[b * width + r];
    }
    const double mean = static_cast<double>(sum) / count;
    out.mean[r] = mean;
    if (trials > 1) {
      // Integer numerator keeps the variance exact for the deterministic case.
      const auto centered = static_cast<long double>(trials) * static_cast<long double>(sq) -
                            static_cast<long double>(sum) * static_cast<long double>(sum);
      const double variance =
          static_cast<double>(centered / (static_cast<long double>(trials) * (trials - 1)));
      out.std_error[r] = std::sqrt(std::max(variance, 0.0) / count);
    }
  }
  return out;
}

std::vector<double> brute_force_expectation(std::int64_t n, std::int64_t k,
                                            std::int64_t n_limit) {
  return brute_force_expectation_as<double>(n, k, n_limit);
}

}  // namespace parking
