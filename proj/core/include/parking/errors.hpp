#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace parking {

// Invalid parameters or flags. Maps to CLI exit code 2.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A truncated series or quadrature did not reach its tolerance within budget.
// Maps to CLI exit code 3.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what, std::int64_t r = -1)
      : std::runtime_error(what), r_(r) {}

  // Gap size of the failing trajectory, or -1 when not tied to one.
  std::int64_t gap_size() const noexcept { return r_; }

 private:
  std::int64_t r_;
};

// A size guard tripped (table limit, memory limit, brute-force limit).
// Maps to CLI exit code 4.
class resource_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace parking
