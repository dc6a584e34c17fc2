/*
 * Checks for the dimension formulas.
 *
 * The independent oracle here is the classical genus-based route: index via
 * the product over primes, cusp count as a divisor sum of totients, elliptic
 * point counts from quadratic characters, genus from the standard relation,
 * and dim = (k-1)(g-1) + (k/2-1)nu_inf + floor(k/4)nu2 + floor(k/3)nu3 for
 * even k >= 4 (genus itself at k = 2).  None of that shares code, or even
 * formula shape, with the per-prime-power tables under test.
 *
 * The new subspace is pinned against the full space by Moebius inversion of
 * the level-raising decomposition, the minimal subspace against the new one
 * on squarefree levels, and both against hand-frozen values elsewhere.
 */

#include "cuspdim/dim_formulas.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

#include "cuspdim/arith.hpp"
#include "test_util.hpp"

using cuspdim::Factorization;
using cuspdim::LocalFactor;
using cuspdim::Space;
using cuspdim::u128;

// ---------------------------------------------------------------------------
// Classical oracle for the full space (independent route).
// ---------------------------------------------------------------------------

static std::vector<uint64_t> oracle_distinct_primes(uint64_t n) {
  std::vector<uint64_t> ps;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

static uint64_t oracle_index(uint64_t n) {  // [SL2(Z) : Gamma_0(N)]
  uint64_t m = n;
  for (uint64_t p : oracle_distinct_primes(n)) m = m / p * (p + 1);
  return m;
}

static uint64_t oracle_phi(uint64_t n) {
  uint64_t m = n;
  for (uint64_t p : oracle_distinct_primes(n)) m = m / p * (p - 1);
  return m;
}

static uint64_t oracle_cusps(uint64_t n) {
  uint64_t total = 0;
  for (uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) total += oracle_phi(std::gcd(d, n / d));
  }
  return total;
}

static uint64_t oracle_elliptic2(uint64_t n) {
  if (n % 4 == 0) return 0;
  uint64_t acc = 1;
  for (uint64_t p : oracle_distinct_primes(n)) {
    if (p == 2) continue;            // character value 0 -> factor 1
    if (p % 4 == 1) acc *= 2;        // 1 + 1
    else return 0;                   // 1 + (-1)
  }
  return acc;
}

static uint64_t oracle_elliptic3(uint64_t n) {
  if (n % 9 == 0) return 0;
  uint64_t acc = 1;
  for (uint64_t p : oracle_distinct_primes(n)) {
    if (p == 3) continue;
    if (p % 3 == 1) acc *= 2;
    else return 0;
  }
  return acc;
}

static int64_t oracle_genus(uint64_t n) {
  int64_t twelve_g = 12 + static_cast<int64_t>(oracle_index(n)) -
                     6 * static_cast<int64_t>(oracle_cusps(n)) -
                     3 * static_cast<int64_t>(oracle_elliptic2(n)) -
                     4 * static_cast<int64_t>(oracle_elliptic3(n));
  CHECK_EQ(twelve_g % 12, 0);
  return twelve_g / 12;
}

static int64_t oracle_full_dim(int k, uint64_t n) {
  int64_t g = oracle_genus(n);
  if (k == 2) return g;
  return (k - 1) * (g - 1) +
         (k / 2 - 1) * static_cast<int64_t>(oracle_cusps(n)) +
         (k / 4) * static_cast<int64_t>(oracle_elliptic2(n)) +
         (k / 3) * static_cast<int64_t>(oracle_elliptic3(n));
}

// ---------------------------------------------------------------------------
// Frozen values and parsing.
// ---------------------------------------------------------------------------

static void test_parsing_and_weights() {
  CHECK(cuspdim::parse_space("full") == Space::Full);
  CHECK(cuspdim::parse_space("new") == Space::New);
  CHECK(cuspdim::parse_space("min") == Space::Min);
  CHECK_THROWS(cuspdim::parse_space("all"), std::invalid_argument);
  CHECK_EQ(cuspdim::space_name(Space::Min), "min");
  CHECK(cuspdim::parse_local_factor("nu_inf") == LocalFactor::NuInf);
  CHECK_THROWS(cuspdim::parse_local_factor("nu4"), std::invalid_argument);

  CHECK_THROWS(cuspdim::validate_weight(3), std::invalid_argument);
  CHECK_THROWS(cuspdim::validate_weight(0), std::invalid_argument);
  CHECK_THROWS(cuspdim::validate_weight(-2), std::invalid_argument);
  CHECK_THROWS(cuspdim::dimension(Space::Full, 5, 1), std::invalid_argument);

  // 12*c2 alternates with (k-1) mod 4; 12*c3 cycles with (k-1) mod 3.
  CHECK_EQ(cuspdim::twelve_c2(2), -3);
  CHECK_EQ(cuspdim::twelve_c2(4), 3);
  CHECK_EQ(cuspdim::twelve_c2(6), -3);
  CHECK_EQ(cuspdim::twelve_c3(2), -4);
  CHECK_EQ(cuspdim::twelve_c3(4), 0);
  CHECK_EQ(cuspdim::twelve_c3(6), 4);
  CHECK_EQ(cuspdim::twelve_c3(8), -4);
  CHECK_EQ(cuspdim::delta_weight2(2), 1);
  CHECK_EQ(cuspdim::delta_weight2(4), 0);
}

static void test_frozen_local_values() {
  using cuspdim::local_factor_value;
  // Full space.
  CHECK_EQ(cuspdim::psi_local(Space::Full, 2, 3), 12ull);   // 8 + 4
  CHECK_EQ(cuspdim::psi_local(Space::Full, 3, 2), 12ull);   // 9 + 3
  CHECK_EQ(cuspdim::nu_inf_local(Space::Full, 3, 3), 6ull); // 2 * 3
  CHECK_EQ(cuspdim::nu_inf_local(Space::Full, 2, 1), 2ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Full, 2, 2), 3ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Full, 2, 3), 4ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Full, 3, 2), 4ull);
  CHECK_EQ(cuspdim::nu2_local(Space::Full, 2, 1), 1);
  CHECK_EQ(cuspdim::nu2_local(Space::Full, 2, 2), 0);
  CHECK_EQ(cuspdim::nu2_local(Space::Full, 5, 1), 2);
  CHECK_EQ(cuspdim::nu2_local(Space::Full, 7, 1), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::Full, 3, 1), 1);
  CHECK_EQ(cuspdim::nu3_local(Space::Full, 3, 2), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::Full, 7, 1), 2);
  CHECK_EQ(cuspdim::nu3_local(Space::Full, 5, 1), 0);

  // New space.
  CHECK_EQ(cuspdim::psi_local(Space::New, 2, 2), 1ull);     // 4 - 2 - 1
  CHECK_EQ(cuspdim::psi_local(Space::New, 11, 1), 10ull);
  CHECK_EQ(cuspdim::psi_local(Space::New, 2, 4), 2ull * 1 * 1 * 3);
  CHECK_EQ(cuspdim::nu_inf_local(Space::New, 7, 1), 0ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::New, 7, 2), 5ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::New, 2, 4), 1ull);  // 2^0 * 1 * 1
  CHECK_EQ(cuspdim::nu_inf_local(Space::New, 2, 3), 0ull);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 11, 1), -2);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 11, 2), 1);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 2, 1), -1);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 2, 2), -1);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 2, 3), 1);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 2, 4), 0);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 5, 2), -1);
  CHECK_EQ(cuspdim::nu2_local(Space::New, 5, 1), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 2, 1), -2);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 2, 2), 1);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 3, 1), -1);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 3, 2), -1);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 3, 3), 1);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 3, 4), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::New, 7, 2), -1);

  // Minimal space.
  CHECK_EQ(cuspdim::psi_local(Space::Min, 3, 2), 2ull);   // (3-1)/2 * (3-1)
  CHECK_EQ(cuspdim::psi_local(Space::Min, 7, 2), 18ull);  // (6/2) * 6
  CHECK_EQ(cuspdim::psi_local(Space::Min, 2, 1), 1ull);
  CHECK_EQ(cuspdim::psi_local(Space::Min, 2, 2), 1ull);
  CHECK_EQ(cuspdim::psi_local(Space::Min, 2, 3), 3ull);
  CHECK_EQ(cuspdim::psi_local(Space::Min, 2, 4), 6ull);
  CHECK_EQ(cuspdim::psi_local(Space::Min, 3, 3), 16ull);  // 2 * (1 * 8)
  CHECK_EQ(cuspdim::nu_inf_local(Space::Min, 2, 4), 1ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Min, 2, 6), 2ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Min, 2, 2), 0ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Min, 2, 5), 0ull);
  CHECK_EQ(cuspdim::nu_inf_local(Space::Min, 3, 4), 0ull);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 2, 1), -1);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 2, 2), -1);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 2, 3), 1);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 2, 4), 0);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 3, 1), -2);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 3, 2), 2);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 3, 3), 0);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 5, 1), 0);
  CHECK_EQ(cuspdim::nu2_local(Space::Min, 5, 2), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 2, 1), -2);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 2, 2), 1);   // 4 is carved out
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 2, 3), 0);   // -2 * mu(4)
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 2, 4), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 3, 1), -1);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 3, 2), -1);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 3, 3), 1);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 3, 4), 0);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 5, 1), -2);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 5, 2), 2);
  CHECK_EQ(cuspdim::nu3_local(Space::Min, 7, 1), 0);   // 7 = 1 mod 3

  // Dispatch through the LocalFactor enum agrees.
  CHECK_EQ(local_factor_value(Space::Full, LocalFactor::NuInf, 3, 3), 6);
  CHECK_EQ(local_factor_value(Space::New, LocalFactor::Psi, 2, 2), 1);
  CHECK_EQ(local_factor_value(Space::Min, LocalFactor::Nu2, 2, 3), 1);
  CHECK_EQ(local_factor_value(Space::Min, LocalFactor::Nu3, 2, 2), 1);
}

static void test_frozen_evaluations() {
  auto f12 = cuspdim::factorize(12);
  auto f15 = cuspdim::factorize(15);
  auto f11 = cuspdim::factorize(11);
  CHECK_EQ(cuspdim::psi(Space::Full, f12), 24ull);
  CHECK_EQ(cuspdim::nu_inf(Space::Min, f15), 0ull);
  CHECK_EQ(cuspdim::nu2(Space::New, f11), -2);
  CHECK_EQ(cuspdim::psi(Space::New, f11), 10ull);
  CHECK_EQ(cuspdim::psi(Space::Full, cuspdim::factorize(8)), 12ull);
  CHECK_EQ(cuspdim::psi(Space::Full, cuspdim::factorize(9)), 12ull);
  CHECK_EQ(cuspdim::psi(Space::Full, cuspdim::factorize(1)), 1ull);
  CHECK_EQ(cuspdim::nu_inf(Space::Full, cuspdim::factorize(1)), 1ull);
  CHECK_EQ(cuspdim::nu2(Space::Min, cuspdim::factorize(1)), 1);
}

static void test_frozen_dimensions() {
  using cuspdim::dimension;
  CHECK_EQ(dimension(Space::Full, 12, 1), 1);
  CHECK_EQ(dimension(Space::Full, 2, 1), 0);
  CHECK_EQ(dimension(Space::Full, 4, 1), 0);
  CHECK_EQ(dimension(Space::Full, 16, 1), 1);
  CHECK_EQ(dimension(Space::Full, 24, 1), 2);
  CHECK_EQ(dimension(Space::Full, 2, 22), 2);
  CHECK_EQ(dimension(Space::Full, 2, 37), 2);
  CHECK_EQ(dimension(Space::Full, 2, 50), 2);
  CHECK_EQ(dimension(Space::New, 2, 11), 1);
  CHECK_EQ(dimension(Space::New, 2, 9), 0);
  CHECK_EQ(dimension(Space::New, 2, 37), 2);
  CHECK_EQ(dimension(Space::New, 2, 49), 1);
  CHECK_EQ(dimension(Space::Min, 2, 9), 0);
  CHECK_EQ(dimension(Space::Min, 2, 36), 1);
  CHECK_EQ(dimension(Space::Min, 2, 49), 1);

  // Genus-zero and genus-one levels (classical lists).
  for (uint64_t n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25}) {
    CHECK_EQ(dimension(Space::Full, 2, n), 0);
  }
  for (uint64_t n : {11, 14, 15, 17, 19, 20, 21, 24, 27, 32, 36, 49}) {
    CHECK_EQ(dimension(Space::Full, 2, n), 1);
  }

  // Level 1 closed form: floor(k/12), minus one when k = 2 mod 12 (k >= 4).
  for (int k = 4; k <= 120; k += 2) {
    int64_t want = k / 12 - (k % 12 == 2 ? 1 : 0);
    CHECK_EQ(dimension(Space::Full, k, 1), want);
  }

  CHECK_EQ(cuspdim::discrepancy12(Space::New, 2, 11), 2);
  CHECK_EQ(cuspdim::discrepancy12(Space::New, 4, 1), -3);
}

// ---------------------------------------------------------------------------
// Oracle sweeps and cross-space identities.
// ---------------------------------------------------------------------------

static void test_full_vs_classical_oracle() {
  cuspdim::SpfSieve sieve(3000);
  for (int k : {2, 4, 6, 8, 10, 12, 14, 16, 22, 36}) {
    for (uint64_t n = 1; n <= 3000; ++n) {
      int64_t got = cuspdim::dimension(Space::Full, k, sieve.factorize(n));
      int64_t want = oracle_full_dim(k, n);
      if (got != want) {
        std::printf("  mismatch at k=%d N=%llu: got %lld want %lld\n", k,
                    (unsigned long long)n, (long long)got, (long long)want);
        CHECK_EQ(got, want);
        return;
      }
    }
  }
  CHECK(true);
}

// dim_full(k, N) = sum over d | N of tau(N/d) * dim_new(k, d), so by Moebius
// inversion dim_new(k, N) = sum over d | N of w(N/d) * dim_full(k, d) with
// w multiplicative, w(p) = -2, w(p^2) = 1, w(p^e) = 0 for e > 2.
static int64_t inversion_weight(const Factorization& f) {
  int64_t acc = 1;
  for (const auto& pp : f.factors()) {
    if (pp.e == 1) acc *= -2;
    else if (pp.e == 2) acc *= 1;
    else return 0;
  }
  return acc;
}

static void test_new_by_moebius_inversion() {
  cuspdim::SpfSieve sieve(4000);
  for (int k : {2, 4, 6, 12}) {
    for (uint64_t n = 1; n <= 4000; ++n) {
      int64_t total = 0;
      for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        uint64_t e = n / d;
        total += inversion_weight(sieve.factorize(e)) *
                 cuspdim::dimension(Space::Full, k, sieve.factorize(d));
        if (d != e) {
          total += inversion_weight(sieve.factorize(d)) *
                   cuspdim::dimension(Space::Full, k, sieve.factorize(e));
        }
      }
      int64_t direct = cuspdim::dimension(Space::New, k, sieve.factorize(n));
      if (direct != total) {
        std::printf("  inversion mismatch at k=%d N=%llu: new=%lld sum=%lld\n",
                    k, (unsigned long long)n, (long long)direct,
                    (long long)total);
        CHECK_EQ(direct, total);
        return;
      }
    }
  }
  CHECK(true);
}

static void test_min_equals_new_on_squarefree() {
  cuspdim::SpfSieve sieve(100000);
  for (uint64_t n = 1; n <= 100000; ++n) {
    auto f = sieve.factorize(n);
    if (!f.squarefree()) continue;
    for (int k : {2, 6}) {
      if (cuspdim::dimension(Space::Min, k, f) !=
          cuspdim::dimension(Space::New, k, f)) {
        CHECK_EQ(n, ~0ull);
        return;
      }
    }
  }
  CHECK(true);
}

static void test_structural_inequalities() {
  cuspdim::SpfSieve sieve(50000);
  for (uint64_t n = 1; n <= 50000; ++n) {
    auto f = sieve.factorize(n);
    uint64_t psi_full = cuspdim::psi(Space::Full, f);
    uint64_t psi_new = cuspdim::psi(Space::New, f);
    uint64_t psi_min = cuspdim::psi(Space::Min, f);
    uint64_t phi = f.euler_phi();
    uint64_t two_omega = 1ull << f.omega();
    bool ok = psi_full >= psi_new && psi_new >= psi_min;
    // psi_min >= phi(N)^2 / (2^omega * N), compared exactly.
    ok = ok && static_cast<u128>(psi_min) * two_omega * n >=
                   static_cast<u128>(phi) * phi;
    // nu_inf <= psi / sqrt(N), squared to stay exact.
    for (Space s : {Space::Full, Space::New, Space::Min}) {
      uint64_t ni = cuspdim::nu_inf(s, f);
      uint64_t ps = cuspdim::psi(s, f);
      ok = ok && static_cast<u128>(ni) * ni * n <= static_cast<u128>(ps) * ps;
    }
    // Elliptic contribution bounded by 7 * 2^omega for every weight class.
    for (int k : {2, 4, 6, 8, 10, 12}) {
      int64_t elliptic = cuspdim::twelve_c2(k) * cuspdim::nu2(Space::Full, f) +
                         cuspdim::twelve_c3(k) * cuspdim::nu3(Space::Full, f);
      ok = ok && static_cast<uint64_t>(elliptic < 0 ? -elliptic : elliptic) <=
                     7 * two_omega;
      for (Space s : {Space::New, Space::Min}) {
        int64_t e2 = cuspdim::twelve_c2(k) * cuspdim::nu2(s, f) +
                     cuspdim::twelve_c3(k) * cuspdim::nu3(s, f);
        ok = ok && static_cast<uint64_t>(e2 < 0 ? -e2 : e2) <= 7 * two_omega;
      }
    }
    if (!ok) {
      CHECK_EQ(n, ~0ull);
      return;
    }
  }
  CHECK(true);
}

// The 12-divisibility and nonnegativity guards inside dimension() turn any
// table error into a throw; a wide quiet sweep is itself a strong check.
static void test_consistency_sweep() {
  cuspdim::SpfSieve sieve(200000);
  for (uint64_t n = 1; n <= 200000; ++n) {
    auto f = sieve.factorize(n);
    for (Space s : {Space::Full, Space::New, Space::Min}) {
      for (int k : {2, 4, 6}) {
        (void)cuspdim::dimension(s, k, f);
      }
    }
  }
  CHECK(true);
  // A few larger random levels through the rho path.
  for (int i = 0; i < 50; ++i) {
    uint64_t n = testutil::rand_in(1, 1000000000000ull);
    auto f = cuspdim::factorize(n);
    for (Space s : {Space::Full, Space::New, Space::Min}) {
      (void)cuspdim::dimension(s, 2, f);
      (void)cuspdim::dimension(s, 12, f);
    }
  }
  CHECK(true);
}

int main() {
  test_parsing_and_weights();
  test_frozen_local_values();
  test_frozen_evaluations();
  test_frozen_dimensions();
  test_full_vs_classical_oracle();
  test_new_by_moebius_inversion();
  test_min_equals_new_on_squarefree();
  test_structural_inequalities();
  test_consistency_sweep();
  return testutil::summary("test_dim_formulas");
}
