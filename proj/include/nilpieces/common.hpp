#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilp {

// Thrown when a computation exceeds its configured resource budget.
// Callers translate this into an explicit Undecided verdict; it must never
// be swallowed into a definite answer.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Resource caps for a single Groebner-basis computation (and for the
// symbolic evaluation feeding it). Zero means "no limit".
struct Budget {
  long max_pairs = 100000;        // S-pairs processed per GB call
  long max_monomials = 2000000;   // total monomials held in a basis
  double timeout_secs = 60.0;     // wall clock per GB call
  int max_splits = 12;            // case-split depth in the classifier

  using Clock = std::chrono::steady_clock;

  struct Timer {
    Clock::time_point start = Clock::now();
    double elapsed() const {
      return std::chrono::duration<double>(Clock::now() - start).count();
    }
  };
};

inline void check_deadline(const Budget& b, const Budget::Timer& t, const char* where) {
  if (b.timeout_secs > 0 && t.elapsed() > b.timeout_secs)
    throw BudgetExceeded(std::string(where) + ": wall clock budget exceeded");
}

}  // namespace nilp
