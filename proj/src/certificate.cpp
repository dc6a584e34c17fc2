#include "cuspdim/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspdim/arith.hpp"
#include "cuspdim/envelope.hpp"
#include "cuspdim/util.hpp"

namespace cuspdim {

namespace env = envelope;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/*
 * Canonical grid anchors.  Both certify and validate walk the SAME geometric
 * grid from these fixed anchors: the per-interval bounds involve step
 * functions (prime-count caps, primorial indices), so a grid anchored
 * elsewhere can fail on an interval that straddles a step even though the
 * canonical partition passes.  validate() therefore recomputes the canonical
 * walk and checks the stored limit is at least as large as the recomputed
 * one, which is exactly the soundness condition.
 */
constexpr double kFlatGridStart = 64.0;
constexpr double kSGridStart = 1024.0;
constexpr double kQGridStart = 1.0;

void fail_note(std::string* why, const std::string& msg) {
  if (why) *why = msg;
}

// ---------------------------------------------------------------------------
// Shared interval bounds
// ---------------------------------------------------------------------------

// Lower bound for psi_space(N) over integer N in [a, b], 3 <= a <= b.
double psi_low_interval(Space space, double a, double b) {
  switch (space) {
    case Space::Full:
      return a;  // psi_full(N) >= N: every local factor is >= p^e
    case Space::New:
      // artin_lower·phi_lower, and phi_lower is increasing on [3, inf).
      return env::deflate(env::psi_new_lower(a));
    case Space::Min: {
      const double pl = env::deflate(env::phi_lower(a));
      return pl * pl / (env::inflate(env::two_omega_upper(b)) * b);
    }
  }
  return kNegInf;
}

// Lower bound for dim(space, k, N) over integer N in [a, b].  Uses
//   dim >= psi·((k-1)/12 - 1/(2 sqrt N)) - (7/12)·2^omega - 1,
// where the final -1 covers the |delta_2(k)·mu(N)| <= 1 weight-2 term (it is
// absent for k > 2; keeping it unconditionally only weakens the bound).
double dim_low_interval(Space space, int k, double a, double b) {
  const double bracket =
      env::deflate((k - 1) / 12.0) - env::inflate(0.5 / std::sqrt(a));
  if (bracket <= 0) return kNegInf;
  const double psi_low = psi_low_interval(space, a, b);
  const double sub = (7.0 / 12.0) * env::inflate(env::two_omega_upper(b)) + 1.0;
  return env::deflate(psi_low * bracket) - sub;
}

// Power-form closure past G: dim(space,k,N) > target for ALL N >= G.
//
// With L = lnln and chain lnln N <= kLnLnPower·N^{1/16} (N >= 3):
//   den(N) = e^gamma·L(N) + 3/L(N) <= denc·N^{1/16},
//   denc = e^gamma·kLnLnPower + 3/(L(G)·G^{1/16})      (N >= G),
// so  psi_low(N) >= cm·N^{em} with
//   full: cm = 1,                em = 1
//   new:  cm = artin/denc,       em = 15/16
//   min:  cm = 1/(denc^2·elom),  em = 5/8   (phi^2/(2^omega·N) route)
// Folding the bracket at G (valid for all N >= G since it increases):
//   dim(N) >= cm'·N^{em} - cs·N^{1/4} - (target+1) - ...  where
//   cm' = cm·bracket(G), cs = (7/12)·kElomAll.
// Dyadic check: if  cm'·G^{em} >= 2·(cs·(2G)^{1/4} + target + 1)  then for
// N in [G·2^j, G·2^{j+1}) the main term gains 2^{em·j} while the subtracted
// side gains at most 2^{j/4}, and em·j >= j/4 - 1 holds for every j >= 0
// (em >= 1/4), so the inequality propagates to all N >= G.
bool flat_closure_ok(Space space, int k, double g, int64_t target) {
  if (g < 100) return false;
  const double bracket =
      env::deflate((k - 1) / 12.0) - env::inflate(0.5 / std::sqrt(g));
  if (bracket <= 0) return false;
  const double L = std::log(std::log(g));
  const double denc = env::inflate(env::kExpGamma * env::kLnLnPower +
                                   3.0 / (L * std::pow(g, 1.0 / 16.0)));
  double cm = 0.0, em = 1.0;
  switch (space) {
    case Space::Full:
      cm = bracket;
      em = 1.0;
      break;
    case Space::New:
      cm = env::deflate(env::artin_lower() * bracket / denc);
      em = 15.0 / 16.0;
      break;
    case Space::Min:
      cm = env::deflate(bracket / (denc * denc * env::inflate(env::kElomAll)));
      em = 5.0 / 8.0;
      break;
  }
  const double main = env::deflate(cm * std::pow(g, em));
  const double sub = env::inflate((7.0 / 12.0) * env::kElomAll *
                                  std::pow(2.0 * g, 0.25)) +
                     static_cast<double>(target) + 1.0;
  return main >= 2.0 * sub;
}

// Walks the geometric grid [start, g] and returns the right endpoint of the
// last failing interval (0 if every interval passes).
double flat_grid_last_failure(Space space, int k, int64_t target, double start,
                              double g, double ratio) {
  double last_fail = 0.0;
  double a = start;
  while (a < g) {
    const double b = std::min(a * ratio, g);
    if (!(dim_low_interval(space, k, a, b) > static_cast<double>(target))) {
      last_fail = b;
    }
    if (b >= g) break;
    a = b;
  }
  return last_fail;
}

}  // namespace

// ---------------------------------------------------------------------------
// Flat certificates
// ---------------------------------------------------------------------------

bool FlatTailCertificate::validate(std::string* why) const {
  validate_weight(k);
  if (grid_ratio <= 1.0 || grid_ratio > 2.0) {
    fail_note(why, "flat: grid_ratio out of range");
    return false;
  }
  if (scan_limit < kFlatGridStart || grid_end <= scan_limit) {
    fail_note(why, "flat: bad scan_limit/grid_end");
    return false;
  }
  if (!flat_closure_ok(space, k, static_cast<double>(grid_end), target)) {
    fail_note(why, "flat: power closure fails at grid_end");
    return false;
  }
  // Recompute the canonical grid walk; every level above the last failing
  // right endpoint is certified, so the stored scan_limit is sound iff it is
  // at least that endpoint (levels in (last_fail, 64] are covered because
  // scan_limit >= 64 is enforced above).
  const double fail_at =
      flat_grid_last_failure(space, k, target, kFlatGridStart,
                             static_cast<double>(grid_end), grid_ratio);
  if (static_cast<double>(scan_limit) < fail_at) {
    fail_note(why, "flat: scan_limit below last failing interval at " +
                       std::to_string(fail_at));
    return false;
  }
  return true;
}

FlatTailCertificate certify_flat(Space space, int k, int64_t target,
                                 uint64_t max_scan_limit) {
  validate_weight(k);
  if (target < 0) throw std::invalid_argument("certify_flat: target < 0");

  // Find the closure point first: the smallest power-of-two-stepped G where
  // the fixed-power form dominates.
  double g = 1.0e6;
  while (!flat_closure_ok(space, k, g, target)) {
    g *= 2.0;
    if (g > 1.0e30) {
      throw CertificationError("certify_flat: no power closure point found");
    }
  }

  // One pass over the grid from the canonical anchor: the scan limit is the
  // right endpoint of the last failing interval.
  const double ratio = 1.01;
  double last_fail =
      flat_grid_last_failure(space, k, target, kFlatGridStart, g, ratio);
  uint64_t scan_limit = std::max<uint64_t>(
      64, last_fail == 0.0 ? 0 : static_cast<uint64_t>(std::ceil(last_fail)));

  if (scan_limit > max_scan_limit) {
    throw CertificationError(
        "certify_flat: required scan limit " + std::to_string(scan_limit) +
        " exceeds configured maximum " + std::to_string(max_scan_limit));
  }

  FlatTailCertificate cert;
  cert.space = space;
  cert.k = k;
  cert.target = target;
  cert.scan_limit = scan_limit;
  cert.grid_end = static_cast<uint64_t>(g);
  cert.grid_ratio = ratio;
  std::string why;
  if (!cert.validate(&why)) {
    throw CertificationError("certify_flat: self-validation failed: " + why);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Psi floor bounds
// ---------------------------------------------------------------------------

namespace {

// Min-space psi grid: psi_min(N) > x on [a, b]?
bool psi_min_interval_ok(double a, double b, double x) {
  return psi_low_interval(Space::Min, a, b) > x;
}

// Min-space closure: psi_min(N) >= N^{5/8}/(denc^2·elom) for N >= G, which
// is increasing, so a single evaluation at G covers the whole tail.
bool psi_min_closure_ok(double g, double x) {
  if (g < 100) return false;
  const double L = std::log(std::log(g));
  const double denc = env::inflate(env::kExpGamma * env::kLnLnPower +
                                   3.0 / (L * std::pow(g, 1.0 / 16.0)));
  const double cm =
      env::deflate(1.0 / (denc * denc * env::inflate(env::kElomAll)));
  return env::deflate(cm * std::pow(g, 5.0 / 8.0)) > x;
}

}  // namespace

bool PsiFloorBound::validate(std::string* why) const {
  if (x < 1.0) return true;  // psi >= 1 everywhere; empty scan suffices
  switch (space) {
    case Space::Full:
      // psi_full(N) >= N, so N > bound >= floor(x) implies psi > x.
      if (static_cast<double>(bound) >= x) return true;
      fail_note(why, "psi floor (full): bound below x");
      return false;
    case Space::New: {
      if (bound < 2) {
        fail_note(why, "psi floor (new): bound must be >= 2");
        return false;
      }
      // psi_new_lower is increasing, so one check at bound+1 covers the tail.
      const double next = static_cast<double>(bound + 1);
      if (env::deflate(env::psi_new_lower(next)) > x) return true;
      fail_note(why, "psi floor (new): envelope not above x at bound+1");
      return false;
    }
    case Space::Min: {
      if (bound < 64 || grid_end <= bound || grid_ratio <= 1.0) {
        fail_note(why, "psi floor (min): bad parameters");
        return false;
      }
      if (!psi_min_closure_ok(static_cast<double>(grid_end), x)) {
        fail_note(why, "psi floor (min): closure fails at grid_end");
        return false;
      }
      // Canonical walk; bound must dominate the last failing right endpoint.
      double last_fail = 0.0;
      double a = 64.0;
      const double g = static_cast<double>(grid_end);
      while (a < g) {
        const double b = std::min(a * grid_ratio, g);
        if (!psi_min_interval_ok(a, b, x)) last_fail = b;
        if (b >= g) break;
        a = b;
      }
      if (static_cast<double>(bound) < last_fail) {
        fail_note(why, "psi floor (min): bound below last failing interval at " +
                           std::to_string(last_fail));
        return false;
      }
      return true;
    }
  }
  return false;
}

PsiFloorBound certify_psi_floor(Space space, double x, uint64_t max_bound) {
  PsiFloorBound r;
  r.space = space;
  r.x = x;
  if (x < 1.0) {
    r.bound = 0;
    return r;
  }
  switch (space) {
    case Space::Full:
      r.bound = static_cast<uint64_t>(std::floor(x));
      break;
    case Space::New: {
      // Geometric walk + binary refine on the increasing envelope.
      uint64_t hi = 4;
      while (!(env::deflate(env::psi_new_lower(static_cast<double>(hi + 1))) > x)) {
        hi *= 2;
        if (hi > max_bound * 2 + 16) {
          throw CertificationError("certify_psi_floor: bound exceeds maximum");
        }
      }
      uint64_t lo = std::max<uint64_t>(2, hi / 2);
      while (lo < hi) {
        const uint64_t mid = lo + (hi - lo) / 2;
        if (env::deflate(env::psi_new_lower(static_cast<double>(mid + 1))) > x) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      r.bound = hi;
      break;
    }
    case Space::Min: {
      double g = 1.0e6;
      while (!psi_min_closure_ok(g, x)) {
        g *= 2.0;
        if (g > 1.0e30) {
          throw CertificationError("certify_psi_floor: no closure point");
        }
      }
      r.grid_end = static_cast<uint64_t>(g);
      double last_fail = 0.0;
      double a = 64.0;
      while (a < g) {
        const double b = std::min(a * r.grid_ratio, g);
        if (!psi_min_interval_ok(a, b, x)) last_fail = b;
        if (b >= g) break;
        a = b;
      }
      r.bound = last_fail == 0.0 ? 64 : static_cast<uint64_t>(std::ceil(last_fail));
      break;
    }
  }
  if (r.bound > max_bound) {
    throw CertificationError("certify_psi_floor: bound " + std::to_string(r.bound) +
                             " exceeds maximum " + std::to_string(max_bound));
  }
  std::string why;
  if (!r.validate(&why)) {
    throw CertificationError("certify_psi_floor: self-validation failed: " + why);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Squarefull-kernel certificate (min space)
// ---------------------------------------------------------------------------

namespace {

// Exponents of the fixed-power closure for squarefull s (see header):
//   2^{jsq} <= 2·(s/4)^{ln2/ln9},     R(jsq)^2 <= 21.9·(s/4)^{1/8},
//   psi_min(s) >= f(s) >= s / (R^2·2^jsq) >= kSfPowCoef·s^{kSfPowExp}.
constexpr double kSfExp2 = 0.31546487678572871;  // ln 2 / ln 9
constexpr double kSfPowExp = 1.0 - 0.125 - kSfExp2;  // 0.559535...
// 4^{0.125+kSfExp2} / (21.9·2) = 4^{0.440465}/43.8
const double kSfPowCoef = std::pow(4.0, 0.125 + kSfExp2) / 43.8;

// The first `count` primes not dividing s.
std::vector<uint64_t> coprime_primes(uint64_t s, int count) {
  static const std::vector<uint32_t> table = primes_up_to(1000);
  std::vector<uint64_t> out;
  out.reserve(count);
  for (uint32_t p : table) {
    if (s % p != 0) {
      out.push_back(p);
      if (static_cast<int>(out.size()) == count) break;
    }
  }
  return out;
}

// Max number of primes coprime to s whose product stays <= q.  Exhausting the
// list with the product still <= q would make the returned value an
// UNDER-estimate (unsound), so that case throws; the list is sized so the
// product of its primes (> 10^70 for 40 entries) dwarfs every grid range.
int coprime_jmax(const std::vector<uint64_t>& cp, double q) {
  long double prod = 1.0L;
  int j = 0;
  for (uint64_t p : cp) {
    prod *= static_cast<long double>(p);
    if (static_cast<double>(prod) > q) return j;
    ++j;
  }
  throw CertificationError("coprime prime list exhausted; q range too large");
}

// prod over the first j primes in cp of p/(p-1), rounded up.
double coprime_ratio(const std::vector<uint64_t>& cp, int j) {
  long double r = 1.0L;
  for (int i = 0; i < j && i < static_cast<int>(cp.size()); ++i) {
    r *= static_cast<long double>(cp[i]) / (cp[i] - 1.0L);
  }
  return static_cast<double>(r) * (1.0 + env::kEps);
}

// Lower bound for dim(min,k,q·s) over squarefree q in [qa, qb], gcd(q,s)=1:
//   dim >= psi_s·phi(q)·((k-1)/12 - 1/(2 sqrt(q s)))
//          - (7/12)·2^{omega(s)}·2^{omega(q)} - [s=1],
// with omega(q) <= jmax(qb) and phi(q) >= qa / prod_{i<=jmax}(p_i/(p_i-1)).
double kernel_q_interval_low(uint64_t s, uint64_t psi_s, uint32_t omega_s,
                             int k, double qa, double qb,
                             const std::vector<uint64_t>& cp) {
  const double bracket = env::deflate((k - 1) / 12.0) -
                         env::inflate(0.5 / std::sqrt(qa * static_cast<double>(s)));
  if (bracket <= 0) return kNegInf;
  const int jmax = coprime_jmax(cp, qb);
  const double phi_q_low = env::deflate(qa / coprime_ratio(cp, jmax));
  const double main =
      env::deflate(static_cast<double>(psi_s) * phi_q_low * bracket);
  const double sub = (7.0 / 12.0) * std::exp2(omega_s) * std::exp2(jmax) +
                     (s == 1 ? 1.0 : 0.0);
  return main - sub;
}

// Quadratic tail in u = q^{1/4}: for q >= q_from,
//   dim >= a·u^2 - b·u - [s=1],  a = psi_s·bracket(q_from)/sqrt 2,
//   b = (7/12)·2^{omega_s}·kElomAll,
// using phi(q) >= sqrt(q/2) and 2^{omega(q)} <= kElomAll·q^{1/4}.  The form
// increases in u beyond b/(2a) and in q through the bracket, so checking
//   a·u^2 - b·u > target + [s=1]  and  u >= b/(2a)   at u = q_from^{1/4}
// covers every q >= q_from.
bool kernel_quad_tail_ok(uint64_t s, uint64_t psi_s, uint32_t omega_s, int k,
                         int64_t target, double q_from) {
  const double bracket =
      env::deflate((k - 1) / 12.0) -
      env::inflate(0.5 / std::sqrt(q_from * static_cast<double>(s)));
  if (bracket <= 0) return false;
  const double a =
      env::deflate(static_cast<double>(psi_s) * bracket / std::sqrt(2.0));
  const double b = (7.0 / 12.0) * std::exp2(omega_s) * env::inflate(env::kElomAll);
  const double u = std::pow(q_from, 0.25);
  if (u < b / (2.0 * a)) return false;
  const double need = static_cast<double>(target) + (s == 1 ? 1.0 : 0.0);
  return env::deflate(a * u * u) - env::inflate(b * u) > need;
}

// Smallest q_from (as a power walk) where the quadratic tail closes.
double kernel_quad_point(uint64_t s, uint64_t psi_s, uint32_t omega_s, int k,
                         int64_t target) {
  double q = 256.0;
  while (!kernel_quad_tail_ok(s, psi_s, omega_s, k, target, q)) {
    q *= 2.0;
    if (q > 1.0e30) {
      throw CertificationError("kernel quad tail never closes");
    }
  }
  return q;
}

// Right endpoint of the last failing interval on the kernel q-grid from
// `start` to the quadratic point (0 if all pass).
double kernel_grid_last_failure(uint64_t s, uint64_t psi_s, uint32_t omega_s,
                                int k, int64_t target, double start,
                                double q_quad, double ratio,
                                const std::vector<uint64_t>& cp) {
  double last_fail = 0.0;
  double a = start;
  while (a < q_quad) {
    const double b = std::min(a * ratio, q_quad);
    if (!(kernel_q_interval_low(s, psi_s, omega_s, k, a, b, cp) >
          static_cast<double>(target))) {
      last_fail = b;
    }
    if (b >= q_quad) break;
    a = b;
  }
  return last_fail;
}

// Exclusion check with exact psi_s/omega_s: is dim(min,k,q·s) > target for
// EVERY squarefree q >= 1 coprime to s?  Quadratic in u = q^{1/4} with the
// bracket taken at q = 1 (it only grows); min over u >= 1 is at u = 1 when
// b <= 2a.
bool kernel_excluded(uint64_t s, uint64_t psi_s, uint32_t omega_s, int k,
                     int64_t target) {
  const double bracket = env::deflate((k - 1) / 12.0) -
                         env::inflate(0.5 / std::sqrt(static_cast<double>(s)));
  if (bracket <= 0) return false;
  const double a =
      env::deflate(static_cast<double>(psi_s) * bracket / std::sqrt(2.0));
  const double b = (7.0 / 12.0) * std::exp2(omega_s) * env::inflate(env::kElomAll);
  if (b > 2.0 * a) return false;
  const double need = static_cast<double>(target) + (s == 1 ? 1.0 : 0.0);
  return env::deflate(a) - env::inflate(b) > need;
}

// Wholesale rejection of squarefull s in [sa, sb] (for every cofactor q):
// psi_min(s) >= sa/(R(j)^2·2^j) with j = primorial_squared_index(sb).
double s_interval_low(int k, double sa, double sb) {
  const uint64_t sb_int =
      sb >= 1.8e19 ? ~uint64_t{0} : static_cast<uint64_t>(sb);
  const int j = env::primorial_squared_index(sb_int);
  const double rj = env::coprime_density_ratio(j);
  const double psi_s_low = env::deflate(sa / (rj * rj * std::exp2(j)));
  const double bracket = env::deflate((k - 1) / 12.0) -
                         env::inflate(0.5 / std::sqrt(sa));
  if (bracket <= 0) return kNegInf;
  const double a = env::deflate(psi_s_low * bracket / std::sqrt(2.0));
  const double b =
      (7.0 / 12.0) * std::exp2(j) * env::inflate(env::kElomAll);
  if (b > 2.0 * a) return kNegInf;
  return env::deflate(a) - env::inflate(b);
}

// Fixed-power closure for the squarefull tail: for all s >= z (and all q),
//   a(s) = kSfPowCoef·s^{kSfPowExp}·bracket/sqrt 2   (grows like s^0.5595)
//   b(s) = (7/12)·2·(s/4)^{kSfExp2}·kElomAll         (grows like s^0.3155)
// and a(z) >= 2·(b(z) + target) propagates dyadically: over [z·2^j, z·2^{j+1})
// the main term gains 2^{0.5595 j} >= the subtracted side's 2^{0.3155(j+1)}/2,
// keeping a - b > target throughout (and b <= 2a, so the u-minimum stays at
// u = 1).
bool s_power_closure_ok(int k, double z, int64_t target) {
  if (z < 1.0e6) return false;
  const double bracket =
      env::deflate((k - 1) / 12.0) - env::inflate(0.5 / std::sqrt(z));
  if (bracket <= 0) return false;
  const double a = env::deflate(kSfPowCoef * std::pow(z, kSfPowExp) * bracket /
                                std::sqrt(2.0));
  const double b = env::inflate((7.0 / 12.0) * 2.0 *
                                std::pow(z / 4.0, kSfExp2) * env::kElomAll);
  return a >= 2.0 * (b + static_cast<double>(target));
}

}  // namespace

bool HybridTailCertificate::validate(std::string* why) const {
  validate_weight(k);
  if (s_grid_ratio <= 1.0 || q_grid_ratio <= 1.0) {
    fail_note(why, "hybrid: bad grid ratios");
    return false;
  }
  if (s_limit < kSGridStart || s_power_point <= s_limit ||
      s_power_point > 1000000000000000000ull) {
    fail_note(why, "hybrid: bad s_limit/s_power_point");
    return false;
  }

  // (1) Fixed-power closure for s >= s_power_point.
  if (!s_power_closure_ok(k, static_cast<double>(s_power_point), target)) {
    fail_note(why, "hybrid: s power closure fails");
    return false;
  }

  // (2) Canonical s-grid walk: every squarefull s above the last failing
  // right endpoint is rejected wholesale, so s_limit must dominate it.
  {
    double last_fail = 0.0;
    double a = kSGridStart;
    const double z = static_cast<double>(s_power_point);
    while (a < z) {
      const double b = std::min(a * s_grid_ratio, z);
      if (!(s_interval_low(k, a, b) > static_cast<double>(target))) {
        last_fail = b;
      }
      if (b >= z) break;
      a = b;
    }
    if (static_cast<double>(s_limit) < last_fail) {
      fail_note(why, "hybrid: s_limit below last failing s interval at " +
                         std::to_string(last_fail));
      return false;
    }
  }

  // (3) Kernel completeness: every squarefull s <= s_limit (plus s = 1) is
  // either excluded outright or listed with matching exact invariants.
  size_t listed = 0;
  bool ok = true;
  std::string local_why;
  auto check_kernel = [&](const Factorization& f) {
    if (!ok) return;
    const uint64_t s = f.n();
    const uint64_t psi_s = psi(Space::Min, f);
    const uint32_t omega_s = static_cast<uint32_t>(f.omega());
    const auto it =
        std::lower_bound(kernels.begin(), kernels.end(), s,
                         [](const HybridKernel& kn, uint64_t v) { return kn.s < v; });
    const bool in_list = it != kernels.end() && it->s == s;
    if (kernel_excluded(s, psi_s, omega_s, k, target)) {
      // Exclusion is sound whether or not it is also listed; listing it
      // would merely add settlement work, but we require exact invariants.
      if (in_list && (it->psi_s != psi_s || it->omega_s != omega_s)) {
        local_why = "hybrid: kernel invariants mismatch at s=" + std::to_string(s);
        ok = false;
      }
      if (in_list) ++listed;
      return;
    }
    if (!in_list) {
      local_why = "hybrid: unexcluded squarefull s missing from kernels: s=" +
                  std::to_string(s);
      ok = false;
      return;
    }
    ++listed;
    if (it->psi_s != psi_s || it->omega_s != omega_s) {
      local_why = "hybrid: kernel invariants mismatch at s=" + std::to_string(s);
      ok = false;
    }
  };
  for_each_squarefull(s_limit, check_kernel);  // includes s = 1
  if (!ok) {
    fail_note(why, local_why);
    return false;
  }
  if (listed != kernels.size()) {
    fail_note(why, "hybrid: kernel list contains extraneous entries");
    return false;
  }

  // (4) Per-kernel cofactor tails: recompute the canonical q-grid walk and
  // require the stored q_limit to dominate its last failing right endpoint.
  for (const HybridKernel& kn : kernels) {
    if (kn.q_limit < 1) {
      fail_note(why, "hybrid: kernel q_limit < 1 at s=" + std::to_string(kn.s));
      return false;
    }
    const auto cp = coprime_primes(kn.s, 40);
    const double q_quad = kernel_quad_point(kn.s, kn.psi_s, kn.omega_s, k, target);
    const double fail_at =
        kernel_grid_last_failure(kn.s, kn.psi_s, kn.omega_s, k, target,
                                 kQGridStart, q_quad, q_grid_ratio, cp);
    if (static_cast<double>(kn.q_limit) < fail_at) {
      fail_note(why, "hybrid: q_limit for s=" + std::to_string(kn.s) +
                         " below last failing interval at " +
                         std::to_string(fail_at));
      return false;
    }
  }
  return true;
}

uint64_t HybridTailCertificate::total_cofactor_scan() const {
  uint64_t total = 0;
  for (const HybridKernel& kn : kernels) total += kn.q_limit;
  return total;
}

HybridTailCertificate certify_hybrid_min(int k, int64_t target) {
  validate_weight(k);
  if (target < 0) throw std::invalid_argument("certify_hybrid_min: target < 0");

  HybridTailCertificate cert;
  cert.k = k;
  cert.target = target;

  // Fixed-power closure point.
  double z = 1.0e6;
  while (!s_power_closure_ok(k, z, target)) {
    z *= 2.0;
    if (z > 9.0e17) {
      throw CertificationError("certify_hybrid_min: no s power closure point");
    }
  }
  cert.s_power_point = static_cast<uint64_t>(z);

  // One pass over the canonical s-grid: s_limit = last failing right endpoint.
  {
    double last_fail = 0.0;
    double a = kSGridStart;
    while (a < z) {
      const double b = std::min(a * cert.s_grid_ratio, z);
      if (!(s_interval_low(k, a, b) > static_cast<double>(target))) {
        last_fail = b;
      }
      if (b >= z) break;
      a = b;
    }
    cert.s_limit = std::max<uint64_t>(
        1024, last_fail == 0.0 ? 0 : static_cast<uint64_t>(std::ceil(last_fail)));
  }

  // Enumerate kernels among squarefull s <= s_limit (plus s = 1).
  std::vector<HybridKernel> kernels;
  auto consider = [&](const Factorization& f) {
    const uint64_t s = f.n();
    const uint64_t psi_s = psi(Space::Min, f);
    const uint32_t omega_s = static_cast<uint32_t>(f.omega());
    if (kernel_excluded(s, psi_s, omega_s, k, target)) return;
    HybridKernel kn;
    kn.s = s;
    kn.psi_s = psi_s;
    kn.omega_s = omega_s;
    const auto cp = coprime_primes(s, 40);
    const double q_quad = kernel_quad_point(s, psi_s, omega_s, k, target);
    const double fail_at = kernel_grid_last_failure(s, psi_s, omega_s, k, target,
                                                    kQGridStart, q_quad,
                                                    cert.q_grid_ratio, cp);
    kn.q_limit = fail_at == 0.0 ? 1 : static_cast<uint64_t>(std::ceil(fail_at));
    kernels.push_back(kn);
  };
  for_each_squarefull(cert.s_limit, consider);  // includes s = 1
  std::sort(kernels.begin(), kernels.end(),
            [](const HybridKernel& a, const HybridKernel& b) { return a.s < b.s; });
  cert.kernels = std::move(kernels);

  std::string why;
  if (!cert.validate(&why)) {
    throw CertificationError("certify_hybrid_min: self-validation failed: " + why);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Umbrella
// ---------------------------------------------------------------------------

bool TailCertificate::validate(std::string* why) const {
  if (flat) {
    if (flat->space != space || flat->k != k || flat->target != target) {
      fail_note(why, "umbrella: flat certificate parameters disagree");
      return false;
    }
    return flat->validate(why);
  }
  if (hybrid) {
    if (space != Space::Min || hybrid->k != k || hybrid->target != target) {
      fail_note(why, "umbrella: kernel certificate parameters disagree");
      return false;
    }
    return hybrid->validate(why);
  }
  fail_note(why, "umbrella: empty certificate");
  return false;
}

uint64_t TailCertificate::settlement_cost() const {
  if (flat) return flat->scan_limit;
  if (hybrid) return hybrid->total_cofactor_scan();
  return 0;
}

TailCertificate certify_scan_bound(Space space, int k, int64_t target,
                                   uint64_t max_flat_scan) {
  TailCertificate cert;
  cert.space = space;
  cert.k = k;
  cert.target = target;
  if (space == Space::Min) {
    // Both forms can exist; settle with whichever scans fewer levels.  The
    // kernel form wins by orders of magnitude except at tiny targets, where
    // a short flat scan beats enumerating kernels.
    std::optional<FlatTailCertificate> flat;
    try {
      flat = certify_flat(space, k, target, max_flat_scan);
    } catch (const CertificationError&) {
    }
    std::optional<HybridTailCertificate> hybrid;
    try {
      hybrid = certify_hybrid_min(k, target);
    } catch (const CertificationError&) {
    }
    if (!flat && !hybrid) {
      throw CertificationError(
          "certify_scan_bound: no certificate for the min space at target " +
          std::to_string(target) + " within flat scan limit " +
          std::to_string(max_flat_scan));
    }
    if (flat && (!hybrid || flat->scan_limit <= hybrid->total_cofactor_scan())) {
      cert.flat = std::move(flat);
    } else {
      cert.hybrid = std::move(hybrid);
    }
    return cert;
  }
  cert.flat = certify_flat(space, k, target, max_flat_scan);
  return cert;
}

}  // namespace cuspdim
