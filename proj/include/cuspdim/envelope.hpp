#pragma once

#include <cstdint>

namespace cuspdim::envelope {

/*
 * Explicit analytic bounds used by the scan-bound certificates.  Every
 * function implements a classical, fully-proved inequality (no asymptotics,
 * no conjectural input); constants are rounded in the safe direction and the
 * test suite re-verifies each bound against exact integer data.
 *
 * Conventions: *_lower(n) returns a value <= the named arithmetic function
 * at every integer n in the stated domain; *_upper(n) returns a value >= it.
 */

// e^gamma (gamma = Euler-Mascheroni), correctly rounded to 17 digits.
inline constexpr double kExpGamma = 1.7810724179901980;

// Rosser-Schoenfeld: phi(n) > n / (e^gamma·lnln n + 3/lnln n) for n >= 3.
// Strictly increasing in n on [3, inf): the denominator den(L) with
// L = lnln n is decreasing until L = sqrt(3/e^gamma) (n ~ 39.1) and grows
// slower than n afterwards (n·den'(n) = (e^gamma - 3/L^2)/ln n < 1/L < den).
double phi_lower(double n);

// Rosser-Schoenfeld: sigma(n) < e^gamma·n·lnln n + 0.6483·n/lnln n for n >= 3.
double sigma_upper(double n);

// 2^omega(n) <= kElomAll·n^{1/4} for every n >= 1.  The ratio is
// multiplicative and a prime power p^e contributes 2/p^{e/4} <= 2/p^{1/4},
// which is < 1 once p > 16, so the product is at most
// prod_{p in {2,3,5,7,11,13}} 2/p^{1/4} = 64/30030^{1/4} = 4.86173...,
// attained at n = 30030.
inline constexpr double kElomAll = 4.8618;

// Robin: omega(n) <= kRobinOmega·ln n/lnln n for n >= 26.
inline constexpr double kRobinOmega = 1.3841;

// Upper bound for 2^omega(n), valid for every n >= 1:
//   min( kElomAll·n^{1/4},  n < 26 ? n : 2^{kRobinOmega·ln n/lnln n} ).
// Nondecreasing in n for n >= 26 (both branches increase once lnln n > 1).
double two_omega_upper(double n);

// Certified lower bound for Artin's constant prod_p (1 - 1/(p(p-1))):
// exact partial product over p <= 10^4 (long double, deflated), times the
// certified tail factor  prod_{p > 10^4} (1 - 1/(p(p-1)))
//   >= exp(-sum_{n > 10^4} 1/(n(n-1)) - (10^-4)^2) >= 1 - 1.02e-4.
double artin_lower();

// psi_new(N) >= artin_lower()·phi(N): the local ratios psi_new(p^e)/phi(p^e)
// equal 1 (e=1), 1 - 1/(p(p-1)) (e=2), 1 - 1/p^2 (e>=3); the e=2 value is
// the minimum, and the product of the minima over all primes is Artin's
// constant.  Combined with phi_lower:
double psi_new_lower(double n);  // <= psi_new(N) for all N >= 3

// psi_min(N) >= phi(N)^2/(2^omega(N)·N) (local ratio check per prime power),
// hence psi_min(N) >= phi_lower(n)^2/(two_omega_upper(n)·n) for n >= 3.
double psi_min_lower(double n);

// Elementary chain ln u <= (16/e)·u^{1/16} applied twice:
//   lnln n <= (16/e^2)·n^{1/16} = 2.16536...·n^{1/16}  for n >= 3.
inline constexpr double kLnLnPower = 2.1654;

// First 15 primes and their running products (primorials); prime_count(j)
// conventions: kFirstPrimes[0] = 2, kPrimorial[j] = product of the first j
// primes, kPrimorial[0] = 1.  P_15# = 614889782588491410 still fits u64.
inline constexpr int kPrimorialCount = 15;
extern const uint64_t kFirstPrimes[kPrimorialCount];
extern const uint64_t kPrimorial[kPrimorialCount + 1];

// Largest j with (P_j#)^2 <= n, capped at kPrimorialCount.  For squarefull
// N, omega(N) <= this value at n = N, because rad(N)^2 <= N.
int primorial_squared_index(uint64_t n);

// R(j) = prod_{i <= j} p_i/(p_i - 1) over the first j primes (R(0) = 1),
// rounded up.  For any n with omega(n) <= j: phi(n)/n >= 1/R(j).
// Also R(j) <= j + 1 (since p_i >= i + 1).
double coprime_density_ratio(int j);

// Rigorous upper bound for  sum_{squarefull N > y} 2^{omega(N)}·N/phi(N)^2
// (i.e. for sum 1/f(N) with f = phi^2/(2^omega·N) <= psi_min), y >= 16.
// Grouped by j = primorial_squared_index(N) using the squarefull tail bound
// sum_{squarefull N > t} 1/N <= 2·eta/sqrt(t).
double squarefull_inv_fmin_tail_bound(double y);

// Riemann zeta for real s in [1.2, 8] by Euler-Maclaurin (M = 50 terms,
// Bernoulli corrections through B_8; first omitted term < 4e-20).
double zeta_em(double s);

// eta = zeta(3/2)/zeta(3) = 2.1732543125... : for all x >= 1 the number of
// squarefull N <= x is at most eta·sqrt(x), and sum_{squarefull N > x} 1/N
// <= 2·eta/sqrt(x).
double eta_value();

// One-sided slack for floating-point certificate checks: main terms are
// deflated by (1 - kEps), subtracted terms inflated by (1 + kEps).  All
// certificate inequalities hold with relative margins far above 1e-6, so
// 1e-9 of slack absorbs rounding without weakening anything real.
inline constexpr double kEps = 1e-9;

inline double deflate(double v) { return v > 0 ? v * (1.0 - kEps) : v * (1.0 + kEps); }
inline double inflate(double v) { return v > 0 ? v * (1.0 + kEps) : v * (1.0 - kEps); }

}  // namespace cuspdim::envelope
