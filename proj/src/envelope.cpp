#include "cuspdim/envelope.hpp"

#include <cmath>
#include <stdexcept>

#include "cuspdim/arith.hpp"

namespace cuspdim::envelope {

namespace {

double lnln(double n) { return std::log(std::log(n)); }

}  // namespace

double phi_lower(double n) {
  if (n < 3) throw std::domain_error("phi_lower: need n >= 3");
  const double L = lnln(n);
  return n / (kExpGamma * L + 3.0 / L);
}

double sigma_upper(double n) {
  if (n < 3) throw std::domain_error("sigma_upper: need n >= 3");
  const double L = lnln(n);
  return kExpGamma * n * L + 0.6483 * n / L;
}

double two_omega_upper(double n) {
  if (n < 1) throw std::domain_error("two_omega_upper: need n >= 1");
  const double elom = kElomAll * std::pow(n, 0.25);
  if (n < 26) return std::min(n, elom);
  const double robin = std::exp2(kRobinOmega * std::log(n) / lnln(n));
  return std::min(robin, elom);
}

double artin_lower() {
  static const double value = [] {
    long double partial = 1.0L;
    for (uint32_t p : primes_up_to(10000)) {
      partial *= 1.0L - 1.0L / (static_cast<long double>(p) * (p - 1));
    }
    // ~1240 long double multiplications: relative rounding error far below
    // 1e-15; deflate by 1e-14 to stay one-sided, then apply the certified
    // tail factor for the primes above 10^4.
    partial *= 1.0L - 1e-14L;
    partial *= 1.0L - 1.02e-4L;
    return static_cast<double>(partial);
  }();
  return value;
}

double psi_new_lower(double n) { return artin_lower() * phi_lower(n); }

double psi_min_lower(double n) {
  const double p = phi_lower(n);
  return p * p / (two_omega_upper(n) * n);
}

const uint64_t kFirstPrimes[kPrimorialCount] = {2,  3,  5,  7,  11, 13, 17, 19,
                                                23, 29, 31, 37, 41, 43, 47};

const uint64_t kPrimorial[kPrimorialCount + 1] = {
    1ull,
    2ull,
    6ull,
    30ull,
    210ull,
    2310ull,
    30030ull,
    510510ull,
    9699690ull,
    223092870ull,
    6469693230ull,
    200560490130ull,
    7420738134810ull,
    304250263527210ull,
    13082761331670030ull,
    614889782588491410ull};

int primorial_squared_index(uint64_t n) {
  int j = 0;
  while (j < kPrimorialCount) {
    const unsigned __int128 sq =
        static_cast<unsigned __int128>(kPrimorial[j + 1]) * kPrimorial[j + 1];
    if (sq > n) break;
    ++j;
  }
  return j;
}

double coprime_density_ratio(int j) {
  if (j < 0) throw std::domain_error("coprime_density_ratio: need j >= 0");
  long double r = 1.0L;
  for (int i = 0; i < j; ++i) {
    const long double p = (i < kPrimorialCount)
                              ? static_cast<long double>(kFirstPrimes[i])
                              : static_cast<long double>(i + 2);
    // For i beyond the table, p_i >= i + 2 > i + 1, and p/(p-1) decreases in
    // p, so substituting the smaller i + 2 keeps the product an upper bound.
    r *= p / (p - 1.0L);
  }
  return static_cast<double>(r) * (1.0 + kEps);
}

double squarefull_inv_fmin_tail_bound(double y) {
  if (y < 16) throw std::domain_error("squarefull_inv_fmin_tail_bound: y >= 16");
  /*
   * For squarefull N with j = primorial_squared_index(N): omega(N) <= j
   * (rad(N)^2 <= N forces P_omega#^2 <= N) and phi(N)/N >= 1/R(j), so
   *   1/f(N) = 2^omega(N)·N/phi(N)^2 <= R(j)^2·2^j / N.
   * Split the range (y, inf) at the primorial-square breakpoints and apply
   * sum_{squarefull N > t} 1/N <= 2·eta/sqrt(t) to each piece from its left
   * endpoint:
   *   piece j from t_j:  R(j)^2·2^j·2·eta/sqrt(t_j),
   * where t_j = max(y, P_j#^2).  Beyond the 15-entry primorial table,
   * P_j# >= P_15#·53^{j-15} (every later prime is >= 53).
   */
  const double eta = eta_value();
  const uint64_t y_int = (y >= 1.8e19) ? ~0ull : static_cast<uint64_t>(y);
  const int j0 = primorial_squared_index(y_int);
  double total = 0.0;
  double sqrt_t = std::sqrt(y);
  for (int j = j0;; ++j) {
    if (j > j0) {
      if (j <= kPrimorialCount) {
        sqrt_t = static_cast<double>(kPrimorial[j]);
      } else {
        sqrt_t = static_cast<double>(kPrimorial[kPrimorialCount]) *
                 std::pow(53.0, j - kPrimorialCount);
      }
    }
    const double rj = coprime_density_ratio(j);
    const double term = rj * rj * std::exp2(j) * 2.0 * eta / sqrt_t;
    total += term;
    if (j > j0 + 4 && term < total * 1e-18) break;
    if (j > 400) break;  // unreachable: terms shrink by ~53/2 per step here
  }
  return inflate(total) + 1e-300;
}

double zeta_em(double s) {
  if (s < 1.2 || s > 8.0) throw std::domain_error("zeta_em: s in [1.2, 8]");
  /*
   * Euler-Maclaurin with M = 50:
   *   zeta(s) = sum_{n<M} n^-s + M^{1-s}/(s-1) + M^-s/2
   *           + sum_{j=1..4} B_{2j}/(2j)!·(prod_{i=0}^{2j-2}(s+i))·M^{-s-2j+1}
   *           + R,
   * with |R| bounded by the first omitted term (real s > 0), which at M = 50
   * is below 4e-20 throughout [1.2, 8].
   */
  constexpr int M = 50;
  constexpr long double kB2jOver2jFact[4] = {
      1.0L / 12.0L,          // B_2/2!  = (1/6)/2
      -1.0L / 720.0L,        // B_4/4!  = (-1/30)/24
      1.0L / 30240.0L,       // B_6/6!  = (1/42)/720
      -1.0L / 1209600.0L};   // B_8/8!  = (-1/30)/40320
  const long double ls = s;
  long double sum = 0.0L;
  for (int n = M - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -ls);
  sum += std::pow(static_cast<long double>(M), 1.0L - ls) / (ls - 1.0L);
  sum += 0.5L * std::pow(static_cast<long double>(M), -ls);
  long double rising = ls;  // prod_{i=0}^{2j-2} (s+i), updated per j
  long double mpow = std::pow(static_cast<long double>(M), -ls - 1.0L);
  for (int j = 0; j < 4; ++j) {
    if (j > 0) {
      rising *= (ls + 2 * j - 1) * (ls + 2 * j);
      mpow /= static_cast<long double>(M) * M;
    }
    sum += kB2jOver2jFact[j] * rising * mpow;
  }
  return static_cast<double>(sum);
}

double eta_value() {
  static const double value = zeta_em(1.5) / zeta_em(3.0);
  return value;
}

}  // namespace cuspdim::envelope
