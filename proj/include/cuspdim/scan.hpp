#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cuspdim/dim_formulas.hpp"

namespace cuspdim {

/*
 * Streaming level scanner.
 *
 * Enumerates every level N in [lo, hi] in increasing order and hands the
 * caller the fully multiplied local data for one space: the four local
 * factors (psi, nu_inf, nu2, nu3), the Moebius value, the number of distinct
 * prime factors, and the squarefull part H(N) = prod_{e_p >= 2} p^{e_p}.
 *
 * The scanner works on fixed-size segments: for each prime p <= sqrt(hi) it
 * walks the multiples of p inside the segment, peels off the exact power
 * p^e | N, and multiplies the local factor values into per-index
 * accumulators.  Whatever remainder exceeds 1 after all small primes is a
 * single prime > sqrt(hi) with exponent 1.  Memory is O(segment) + the prime
 * list, so ranges far beyond any sieve table (e.g. windows near 10^13) cost
 * only the primes below sqrt(hi).
 */
struct LevelData {
  uint64_t n = 0;
  DimensionParts parts;      // local factors for the chosen space, mu_slot unset (1)
  int8_t mu = 0;             // Moebius function of n
  uint8_t omega = 0;         // number of distinct primes
  uint64_t squarefull_part = 1;
};

struct ScanOptions {
  uint64_t segment_size = uint64_t{1} << 18;
  // Levels divisible by any of these primes are skipped entirely (the
  // callback never sees them).  Used to enumerate cofactors coprime to a
  // fixed squarefull kernel.
  std::vector<uint64_t> skip_prime_multiples;
};

// Calls fn(level) for every level in [lo, hi] ascending.  Requires
// 1 <= lo <= hi.  Throws std::invalid_argument on a bad range.
void scan_levels(Space space, uint64_t lo, uint64_t hi,
                 const std::function<void(const LevelData&)>& fn,
                 const ScanOptions& options = {});

// Splits [lo, hi] into at most `parts` non-empty contiguous blocks covering
// the range in order.  Used to parallelize scans deterministically: workers
// process blocks independently and results are merged in block order (or via
// order-independent reductions).
std::vector<std::pair<uint64_t, uint64_t>> split_range(uint64_t lo, uint64_t hi,
                                                       int parts);

}  // namespace cuspdim
