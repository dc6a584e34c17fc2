#pragma once

/*
 * Exact integer arithmetic layer.
 *
 * Everything downstream (dimension formulas, spectrum scans, certified
 * envelopes) reduces to prime factorizations, so this header provides:
 *
 *   - deterministic 64-bit primality (Miller-Rabin with a fixed witness set
 *     that is exact for all n < 2^64),
 *   - factorization, both sieve-backed (smallest-prime-factor table) for bulk
 *     ranges and Pollard-rho/Brent for isolated large inputs,
 *   - the standard multiplicative gadgets (mu, omega, phi, squarefull part),
 *   - enumeration of squarefull numbers via their unique a^2*b^3 form
 *     (b squarefree), which is what the conditioned certificates walk over,
 *   - a generic evaluator for multiplicative functions given their values on
 *     prime powers (empty product = 1 at n = 1).
 */

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cuspdim/util.hpp"

namespace cuspdim {

struct PrimePower {
  uint64_t p = 0;
  uint32_t e = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Exact primality for any 64-bit n.
bool is_prime(uint64_t n);

// A validated factorization: factors sorted by prime, exponents >= 1, and the
// product reconstitutes n.  n = 1 has an empty factor list.
class Factorization {
 public:
  Factorization() = default;

  uint64_t n() const { return n_; }
  std::span<const PrimePower> factors() const {
    return {factors_.data(), factors_.size()};
  }
  int omega() const { return static_cast<int>(factors_.size()); }
  int mobius() const;              // 0 unless squarefree, else (-1)^omega
  bool squarefree() const;
  uint64_t euler_phi() const;
  uint64_t squarefull_part() const;  // product of p^e over factors with e >= 2
  uint64_t radical() const;          // product of the distinct primes

  // Builds from explicit prime-power parts; throws std::invalid_argument if
  // the parts are unsorted, repeat a prime, have a zero exponent, or do not
  // multiply out to n.  Primality of the parts is the caller's contract.
  static Factorization from_parts(uint64_t n, std::vector<PrimePower> parts);

 private:
  uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

// General-purpose factorization: trial division over small primes, then
// recursive Pollard-rho (Brent variant) splitting certified by is_prime.
Factorization factorize(uint64_t n);

// Smallest-prime-factor table for 1..limit.  Entries are 32 bits, so limit
// must be < 2^32, and the allocation is checked against a byte budget first:
// an oversized request throws MemoryBudgetError instead of swapping the
// machine to death.
class SpfSieve {
 public:
  static constexpr uint64_t kDefaultMemoryBudget = 5ull << 30;  // 5 GiB

  explicit SpfSieve(uint64_t limit,
                    uint64_t memory_budget_bytes = kDefaultMemoryBudget);

  uint64_t limit() const { return limit_; }
  // Smallest prime factor of n, for 2 <= n <= limit.
  uint32_t spf(uint64_t n) const { return spf_[n]; }
  std::span<const uint32_t> primes() const {
    return {primes_.data(), primes_.size()};
  }

  Factorization factorize(uint64_t n) const;  // n <= limit

 private:
  uint64_t limit_ = 0;
  std::vector<uint32_t> spf_;
  std::vector<uint32_t> primes_;
};

// Plain prime list up to limit (inclusive), by Eratosthenes.
std::vector<uint32_t> primes_up_to(uint32_t limit);

// All squarefull n <= limit (every prime divides at least twice; includes 1),
// ascending.  Uses the unique representation n = a^2 * b^3 with b squarefree.
std::vector<uint64_t> enumerate_squarefull(uint64_t limit);

// Same walk, but hands each squarefull value to fn together with its
// factorization (order unspecified).  The factorizations are assembled from
// the a/b decomposition, so no Pollard calls happen even for limits far above
// any sieve.
void for_each_squarefull(uint64_t limit,
                         const std::function<void(const Factorization&)>& fn);

// Evaluates a multiplicative function at f.n() from its prime-power values.
// local(p, e) supplies the value at p^e; n = 1 yields the empty product 1.
template <typename Local>
auto eval_multiplicative(const Factorization& f, Local&& local)
    -> decltype(local(uint64_t{2}, uint32_t{1})) {
  auto acc = static_cast<decltype(local(uint64_t{2}, uint32_t{1}))>(1);
  for (const PrimePower& pp : f.factors()) acc *= local(pp.p, pp.e);
  return acc;
}

}  // namespace cuspdim
