#pragma once

// Exhaustive expectation over the full placement tree, generic in the weight
// type so tests can run it in exact rational arithmetic. It operates on the
// raw slot array and recomputes admissible centers by scanning, with no use of
// the fact that a car splits the lot into independent sub-lots.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "parking/errors.hpp"

namespace parking {

namespace detail {

template <class Number>
class placement_tree {
 public:
  placement_tree(std::int64_t n, std::int64_t k, bool memoize)
      : n_(n), k_(k), memoize_(memoize), slots_(static_cast<std::size_t>(n + k - 1) + 1, 0) {}

  std::vector<Number> run() { return expand(); }

 private:
  bool admissible(std::int64_t c) const {
    for (std::int64_t s = c - k_; s <= c + k_; ++s) {
      if (slots_[static_cast<std::size_t>(s)] != 0) return false;
    }
    return true;
  }

  std::vector<Number> terminal() const {
    std::vector<Number> counts(static_cast<std::size_t>(k_ + 1), Number(0));
    std::int64_t run = 0;
    const std::int64_t last = n_ + k_ - 1;
    for (std::int64_t s = 1; s <= last + 1; ++s) {
      if (s <= last && slots_[static_cast<std::size_t>(s)] == 0) {
        ++run;
        continue;
      }
      if (run < k_ || run > 2 * k_) {
        throw std::logic_error("terminal gap of " + std::to_string(run) +
                               " slots outside [k, 2k]");
      }
      counts[static_cast<std::size_t>(run - k_)] += Number(1);
      run = 0;
    }
    return counts;
  }

  std::vector<Number> expand() {
    if (memoize_) {
      if (auto it = memo_.find(slots_); it != memo_.end()) return it->second;
    }
    std::vector<std::int64_t> valid;
    for (std::int64_t c = k_ + 1; c <= n_ - 1; ++c) {
      if (admissible(c)) valid.push_back(c);
    }
    std::vector<Number> out;
    if (valid.empty()) {
      out = terminal();
    } else {
      out.assign(static_cast<std::size_t>(k_ + 1), Number(0));
      for (std::int64_t c : valid) {
        slots_[static_cast<std::size_t>(c)] = 1;
        const auto child = expand();
        slots_[static_cast<std::size_t>(c)] = 0;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += child[i];
      }
      const Number count(static_cast<std::int64_t>(valid.size()));
      for (auto& v : out) v /= count;
    }
    if (memoize_) memo_.emplace(slots_, out);
    return out;
  }

  std::int64_t n_;
  std::int64_t k_;
  bool memoize_;
  std::vector<char> slots_;
  std::map<std::vector<char>, std::vector<Number>> memo_;
};

}  // namespace detail

/// Expected r-gap counts (indexed r - k) for a lot with parameter n. Throws
/// resource_error when n exceeds `n_limit`.
template <class Number>
std::vector<Number> brute_force_expectation_as(std::int64_t n, std::int64_t k,
                                               std::int64_t n_limit, bool memoize = false) {
  if (n < 1 || k < 1) throw usage_error("brute_force_expectation: need n >= 1 and k >= 1");
  if (n > n_limit) {
    throw resource_error("brute_force_expectation: n = " + std::to_string(n) +
                         " exceeds limit " + std::to_string(n_limit));
  }
  return detail::placement_tree<Number>(n, k, memoize).run();
}

}  // namespace parking
