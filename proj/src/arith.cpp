#include "cuspdim/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cuspdim {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t acc = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

uint64_t ipow(uint64_t base, uint32_t exp) {
  uint64_t acc = 1;
  while (exp-- > 0) acc *= base;
  return acc;
}

// One strong-probable-prime round; n odd, n - 1 = d * 2^s.
bool sprp(uint64_t n, uint64_t a, uint64_t d, int s) {
  uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent-cycle Pollard rho.  Returns a nontrivial factor of odd composite n.
uint64_t pollard_brent(uint64_t n) {
  for (uint64_t c = 1;; ++c) {
    auto step = [n, c](uint64_t x) {
      return static_cast<uint64_t>((static_cast<u128>(x) * x + c) % n);
    };
    uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = step(y);
      for (uint64_t k = 0; k < r && g == 1; k += 128) {
        ys = y;
        uint64_t batch = std::min<uint64_t>(128, r - k);
        for (uint64_t i = 0; i < batch; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      // The batched gcd overshot; replay one step at a time from ys.
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
    // Rare degenerate cycle for this c; retry with the next increment.
  }
}

void factor_recursive(uint64_t n, std::vector<uint64_t>& primes_out) {
  while (n > 1) {
    if (is_prime(n)) {
      primes_out.push_back(n);
      return;
    }
    uint64_t d = pollard_brent(n);
    factor_recursive(d, primes_out);
    n /= d;
  }
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // This witness set decides primality exactly for every n < 2^64.
  static constexpr std::array<uint64_t, 7> kWitnesses = {
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : kWitnesses) {
    if (a % n == 0) continue;
    if (!sprp(n, a, d, s)) return false;
  }
  return true;
}

int Factorization::mobius() const {
  for (const PrimePower& pp : factors_) {
    if (pp.e >= 2) return 0;
  }
  return (factors_.size() % 2 == 0) ? 1 : -1;
}

bool Factorization::squarefree() const {
  for (const PrimePower& pp : factors_) {
    if (pp.e >= 2) return false;
  }
  return true;
}

uint64_t Factorization::euler_phi() const {
  uint64_t acc = 1;
  for (const PrimePower& pp : factors_) {
    acc *= ipow(pp.p, pp.e - 1) * (pp.p - 1);
  }
  return acc;
}

uint64_t Factorization::squarefull_part() const {
  uint64_t acc = 1;
  for (const PrimePower& pp : factors_) {
    if (pp.e >= 2) acc *= ipow(pp.p, pp.e);
  }
  return acc;
}

uint64_t Factorization::radical() const {
  uint64_t acc = 1;
  for (const PrimePower& pp : factors_) acc *= pp.p;
  return acc;
}

Factorization Factorization::from_parts(uint64_t n,
                                        std::vector<PrimePower> parts) {
  if (n == 0) throw std::invalid_argument("Factorization: n must be >= 1");
  u128 product = 1;
  uint64_t prev_p = 0;
  for (const PrimePower& pp : parts) {
    if (pp.p <= prev_p) {
      throw std::invalid_argument(
          "Factorization: parts must be sorted by strictly increasing prime");
    }
    if (pp.e == 0) {
      throw std::invalid_argument("Factorization: exponents must be >= 1");
    }
    prev_p = pp.p;
    for (uint32_t i = 0; i < pp.e; ++i) {
      product *= pp.p;
      if (product > n) {
        throw std::invalid_argument(
            "Factorization: parts do not multiply to n");
      }
    }
  }
  if (product != n) {
    throw std::invalid_argument("Factorization: parts do not multiply to n");
  }
  Factorization f;
  f.n_ = n;
  f.factors_ = std::move(parts);
  return f;
}

Factorization factorize(uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> parts;
  uint64_t m = n;
  // Strip small primes cheaply before handing the rest to rho.
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
    if (p * p > m) break;
    if (m % p != 0) continue;
    uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    parts.push_back({p, e});
  }
  if (m > 1) {
    std::vector<uint64_t> primes;
    factor_recursive(m, primes);
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
      size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      parts.push_back({primes[i], static_cast<uint32_t>(j - i)});
      i = j;
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  return Factorization::from_parts(n, std::move(parts));
}

SpfSieve::SpfSieve(uint64_t limit, uint64_t memory_budget_bytes)
    : limit_(limit) {
  if (limit < 1) throw std::invalid_argument("SpfSieve: limit must be >= 1");
  if (limit >= (1ull << 32)) {
    throw std::invalid_argument("SpfSieve: limit must fit 32-bit entries");
  }
  // Table plus the prime list (pi(x) < 1.3 x / ln x for x >= 17).
  double pi_bound =
      limit < 17 ? 8.0 : 1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
  uint64_t needed =
      4 * (limit + 1) + 4 * static_cast<uint64_t>(pi_bound) + (1 << 16);
  if (needed > memory_budget_bytes) {
    throw MemoryBudgetError("SpfSieve: limit " + std::to_string(limit) +
                            " needs ~" + std::to_string(needed) +
                            " bytes, budget is " +
                            std::to_string(memory_budget_bytes));
  }
  spf_.assign(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<uint32_t>(i);
      primes_.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

Factorization SpfSieve::factorize(uint64_t n) const {
  if (n == 0) throw std::invalid_argument("SpfSieve::factorize: n must be >= 1");
  if (n > limit_) {
    throw std::out_of_range("SpfSieve::factorize: n exceeds sieve limit");
  }
  std::vector<PrimePower> parts;
  while (n > 1) {
    uint32_t p = spf_[n];
    uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    parts.push_back({p, e});
  }
  std::sort(parts.begin(), parts.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  Factorization f;
  // Parts came from repeated division, so they are valid by construction.
  uint64_t m = 1;
  for (const PrimePower& pp : parts) m *= ipow(pp.p, pp.e);
  return Factorization::from_parts(m, std::move(parts));
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
  std::vector<uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(static_cast<size_t>(limit) + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

namespace {

uint64_t icbrt64(uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<uint64_t>(std::cbrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<uint64_t> enumerate_squarefull(uint64_t limit) {
  std::vector<uint64_t> out;
  if (limit == 0) return out;
  uint64_t bmax = icbrt64(limit);
  // Squarefree flags for the cube part via a tiny sieve (marking multiples of
  // p^2; composite p are already marked by a smaller prime when reached).
  std::vector<char> squarefree(bmax + 1, 1);
  for (uint64_t p = 2; p * p <= bmax; ++p) {
    if (!squarefree[p * p]) continue;
    for (uint64_t j = p * p; j <= bmax; j += p * p) squarefree[j] = 0;
  }
  for (uint64_t b = 1; b <= bmax; ++b) {
    if (!squarefree[b]) continue;
    uint64_t b3 = b * b * b;
    uint64_t amax = isqrt64(limit / b3);
    for (uint64_t a = 1; a <= amax; ++a) {
      out.push_back(a * a * b3);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_squarefull(
    uint64_t limit, const std::function<void(const Factorization&)>& fn) {
  if (limit == 0) return;
  uint64_t amax_total = isqrt64(limit);
  SpfSieve sieve(std::max<uint64_t>(amax_total, 2));
  uint64_t bmax = icbrt64(limit);
  for (uint64_t b = 1; b <= bmax; ++b) {
    Factorization fb = sieve.factorize(b);
    if (!fb.squarefree()) continue;
    uint64_t b3 = b * b * b;
    uint64_t amax = isqrt64(limit / b3);
    for (uint64_t a = 1; a <= amax; ++a) {
      Factorization fa = sieve.factorize(a);
      // Merge exponents: n = a^2 * b^3, with a and b not necessarily coprime.
      std::vector<PrimePower> parts;
      auto sa = fa.factors();
      auto sb = fb.factors();
      size_t i = 0, j = 0;
      while (i < sa.size() || j < sb.size()) {
        if (j == sb.size() || (i < sa.size() && sa[i].p < sb[j].p)) {
          parts.push_back({sa[i].p, 2 * sa[i].e});
          ++i;
        } else if (i == sa.size() || sb[j].p < sa[i].p) {
          parts.push_back({sb[j].p, 3});
          ++j;
        } else {
          parts.push_back({sa[i].p, 2 * sa[i].e + 3});
          ++i;
          ++j;
        }
      }
      fn(Factorization::from_parts(a * a * b3, std::move(parts)));
    }
  }
}

}  // namespace cuspdim
