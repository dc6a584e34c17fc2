#pragma once

/*
 * Exact dimension formulas for weight-k cusp form spaces on Gamma_0(N), in
 * three flavors:
 *
 *   Full : the whole cusp space S_k(N)
 *   New  : the new subspace (forms not coming from lower level)
 *   Min  : the twist-minimal subspace (new forms that are not twists of
 *          lower-conductor forms)
 *
 * Each flavor has the same skeleton
 *
 *   12 * dim = (k-1) * psi(N) - 6 * nu_inf(N)
 *            + c2(k) * nu_2(N) + c3(k) * nu_3(N) + 12 * [k=2] * mu_slot(N)
 *
 * where psi, nu_inf, nu_2, nu_3 are multiplicative with flavor-specific
 * values on prime powers (tabulated below in the .cpp), c2(k)/c3(k) are the
 * elliptic-point weights (we carry 12*c2 in {-3,+3} and 12*c3 in {-4,0,+4}
 * to stay in integers), and mu_slot is 1 for Full and the Moebius value
 * mu(N) for New/Min.
 *
 * The right-hand side being divisible by 12 and nonnegative is a theorem,
 * not an input assumption, so dimension() checks both unconditionally and
 * throws std::logic_error on violation — any transcription error in the
 * prime-power tables trips this within a handful of evaluations.
 */

#include <cstdint>
#include <string>
#include <string_view>

#include "cuspdim/arith.hpp"
#include "cuspdim/util.hpp"

namespace cuspdim {

enum class Space { Full, New, Min };
enum class LocalFactor { Psi, NuInf, Nu2, Nu3 };

// "full" / "new" / "min"; throws std::invalid_argument on anything else.
Space parse_space(std::string_view name);
std::string_view space_name(Space space);

// "psi" / "nu_inf" / "nu2" / "nu3".
LocalFactor parse_local_factor(std::string_view name);
std::string_view local_factor_name(LocalFactor lf);

// Weights are even integers >= 2; anything else throws std::invalid_argument.
void validate_weight(int k);

// 12*c2(k) and 12*c3(k); k must be a valid weight.
int twelve_c2(int k);
int twelve_c3(int k);
int delta_weight2(int k);  // 1 if k == 2 else 0

// Values on prime powers (e >= 1, p prime; primality is the caller's
// contract).  psi and nu_inf are nonnegative; nu2/nu3 lie in {-2,...,2}.
uint64_t psi_local(Space space, uint64_t p, uint32_t e);
uint64_t nu_inf_local(Space space, uint64_t p, uint32_t e);
int nu2_local(Space space, uint64_t p, uint32_t e);
int nu3_local(Space space, uint64_t p, uint32_t e);
int64_t local_factor_value(Space space, LocalFactor lf, uint64_t p, uint32_t e);

// Multiplicative extensions; N = 1 gives the empty product 1 for all four.
uint64_t psi(Space space, const Factorization& f);
uint64_t nu_inf(Space space, const Factorization& f);
int64_t nu2(Space space, const Factorization& f);
int64_t nu3(Space space, const Factorization& f);
int64_t local_factor_value(Space space, LocalFactor lf, const Factorization& f);

// The assembled ingredients of one dimension evaluation, exposed for reports
// and for scan engines that compute the components incrementally.
struct DimensionParts {
  uint64_t psi = 1;
  uint64_t nu_inf = 1;
  int64_t nu2 = 1;
  int64_t nu3 = 1;
  int mu_slot = 1;
};

// Core evaluation from precomputed parts.  Checks 12-divisibility and
// nonnegativity of the weighted sum; N is used only in error messages.
int64_t dimension_from_parts(Space space, int k, uint64_t N,
                             const DimensionParts& parts);

DimensionParts dimension_parts(Space space, const Factorization& f);
int64_t dimension(Space space, int k, const Factorization& f);
int64_t dimension(Space space, int k, uint64_t N);

// 12*dim - (k-1)*psi(N): the exact defect of the leading term.  Sign and
// size of this quantity drive all the certified bounds downstream.
int64_t discrepancy12(Space space, int k, const Factorization& f);
int64_t discrepancy12(Space space, int k, uint64_t N);

}  // namespace cuspdim
