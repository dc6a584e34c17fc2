#pragma once

/*
 * Shared low-level helpers: 128-bit integer aliases, exact integer square
 * roots, and the error types the command-line tool maps to exit codes.
 */

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cuspdim {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);
std::string to_string(u128 v);

// Floor of sqrt(n), exact over the whole uint64 range (float seed, then an
// integer fix-up so no rounding slip survives).
uint64_t isqrt64(uint64_t n);

bool is_perfect_square(uint64_t n);

// Raised when a requested table would exceed its memory budget.  Callers are
// expected to shrink the request, not to catch-and-retry blindly.
struct MemoryBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on file/stream failures (cache read/write, report output).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cuspdim
