#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspdim/dim_formulas.hpp"

namespace cuspdim {

// Raised when no certificate exists within the configured search range.
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/*
 * Scan-bound certificates.
 *
 * A certificate is a finite set of verified real inequalities proving a
 * statement of the form "every level N outside an explicitly scannable set
 * has dim(space, k, N) > target".  Scanning the complement ("settlement")
 * then determines the attained dimension values <= target exactly, over all
 * of N, not merely up to the scan bound.
 *
 * All verification is re-runnable: validate() recomputes every inequality
 * from the stored parameters (plus the versioned constants in envelope.hpp)
 * and accepts only if each check passes with one-sided floating-point slack.
 *
 * The underlying pointwise bound, valid for every space and every N >= 1:
 *   dim >= psi*(N)·((k-1)/12 - 1/(2·sqrt N)) - (7/12)·2^omega(N) - [k=2],
 * combining the exact twelfth-term decomposition with |nu2| <= 2^omega,
 * |nu3| <= 2^omega, nu_inf*(N) <= psi*(N)/sqrt(N) and |mu(N)| <= 1.
 * psi*(N) is then bounded below by the space envelope (N for full,
 * artin_lower·phi_lower for new, phi_lower^2/(2^omega_upper·N) for min) on
 * a geometric grid of intervals, with a power-form closure past the grid.
 */

// Proves: every N > scan_limit has dim(space, k, N) > target.
struct FlatTailCertificate {
  Space space = Space::Full;
  int k = 2;
  int64_t target = 0;
  uint64_t scan_limit = 0;  // X: settlement scans [1, X]
  uint64_t grid_end = 0;    // G: closure covers N >= G
  double grid_ratio = 1.01;

  bool validate(std::string* why = nullptr) const;
};

// Builds a flat certificate with the smallest grid-certifiable scan limit.
// Throws CertificationError if none exists with scan_limit <= max_scan_limit.
FlatTailCertificate certify_flat(Space space, int k, int64_t target,
                                 uint64_t max_scan_limit);

// Proves: every N > bound has psi_space(N) > x.  (Used to enumerate the
// complete set of psi values <= x.)
struct PsiFloorBound {
  Space space = Space::Full;
  double x = 0;
  uint64_t bound = 0;
  uint64_t grid_end = 0;   // used by the min-space grid; 0 otherwise
  double grid_ratio = 1.01;

  bool validate(std::string* why = nullptr) const;
};

PsiFloorBound certify_psi_floor(Space space, double x, uint64_t max_bound);

/*
 * Squarefull-kernel certificate for the min space.
 *
 * A flat scan bound is impossible for large targets: e.g. for k = 2,
 * N = (2·3·5·7·11·41)^2 = 8 969 984 100 has psi_min(N) = 11 520 000 and
 * dim ~ 9.6e5, so certifying target = 10^6 flat would require scanning
 * past 8.9e9.  Instead, write N = q·s with
 * s = H(N) its squarefull part and q squarefree, coprime to s; then
 *   psi_min(N) = psi_min(s)·phi(q),  2^omega(N) = 2^omega(s)·2^omega(q),
 * and smallness of dim forces either s into an explicit finite kernel list
 * (each with an explicit cofactor bound q <= q_limit) or a contradiction.
 *
 * Per kernel the cofactor tail (q beyond q_limit) is certified on a
 * geometric grid using the sharp coprime-cofactor bounds
 *   omega(q) <= jmax = max #{primes coprime to s with product <= q},
 *   phi(q)/q >= prod over those jmax primes of (1 - 1/p),
 * closed past the grid by the quadratic in u = q^{1/4} coming from
 * phi(q) >= sqrt(q/2) and 2^omega(q) <= kElomAll·q^{1/4}.
 *
 * Kernels s > s_limit are rejected wholesale on a coarser geometric grid
 * via psi_min(s) >= s/(R(j)^2·2^j) with j = primorial_squared_index(s),
 * closed past s_power_point by the fixed-power form
 *   psi_min(s) >= s^{0.559535}/23.8  (squarefull s),
 * which outgrows the subtracted term (exponent 0.315465) under dyadic
 * doubling once it leads by a factor of 2.
 */
struct HybridKernel {
  uint64_t s = 1;         // squarefull kernel (or 1)
  uint64_t psi_s = 1;     // exact psi_min(s)
  uint32_t omega_s = 0;   // exact omega(s)
  uint64_t q_limit = 0;   // settlement scans squarefree q <= q_limit, gcd(q,s)=1
};

struct HybridTailCertificate {
  int k = 2;
  int64_t target = 0;
  uint64_t s_limit = 0;        // kernels enumerated among squarefull s <= s_limit
  uint64_t s_power_point = 0;  // fixed-power closure from here on
  double s_grid_ratio = 1.5;
  double q_grid_ratio = 1.01;
  std::vector<HybridKernel> kernels;  // ascending s; includes s = 1

  bool validate(std::string* why = nullptr) const;
  uint64_t total_cofactor_scan() const;  // sum of q_limit over kernels
};

HybridTailCertificate certify_hybrid_min(int k, int64_t target);

// Umbrella type: flat for full/new; for min, whichever of the flat and
// squarefull-kernel forms settles with the smaller scan.
struct TailCertificate {
  Space space = Space::Full;
  int k = 2;
  int64_t target = 0;
  std::optional<FlatTailCertificate> flat;
  std::optional<HybridTailCertificate> hybrid;

  bool validate(std::string* why = nullptr) const;
  // Number of levels (or cofactors) the settlement scan must visit.
  uint64_t settlement_cost() const;
};

TailCertificate certify_scan_bound(Space space, int k, int64_t target,
                                   uint64_t max_flat_scan = 400000000ull);

}  // namespace cuspdim
