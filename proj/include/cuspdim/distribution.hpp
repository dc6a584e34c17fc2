#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspdim/dim_formulas.hpp"
#include "cuspdim/spectrum.hpp"

namespace cuspdim {

/*
 * Distribution-side checks: the reference density shape for the count of
 * attained dimensions, exact counts of small psi values, and the quantitative
 * inequalities (cusp/elliptic envelopes, squarefull counting constants,
 * reciprocal tails) that the certificates lean on.  Everything here either
 * verifies an inequality exactly over a range or pairs an exact enumeration
 * with a certified truncation bound, so a passing report is a proof for the
 * stated range, not a heuristic.
 */

// Constants of the reference density shape.  The quadratic coefficient has a
// known numeric value; the linear coefficient is not pinned down by theory,
// so evaluation requires the caller to supply it explicitly.
struct FordConstants {
  double c = 0.8178146;
  std::optional<double> d;
};

struct RhoValue {
  double x = 0.0;
  double value = 0.0;
  // The fourth-iterate term ln ln ln ln x is negative (meaningless as a
  // correction) until x > e^(e^e) ~ 3.81e6; below that it is omitted and the
  // value is only a shape, not the asymptotic formula.
  bool shape_only = false;
};

/*
 * rho(x) = exp(C·ln(ll/lll)^2 + D·lll + (D + 1/2 - 2C)·llll) / ln x
 * with ll = lnln x, lll = lnlnln x, llll = lnlnlnln x.  Requires x >= 16
 * (so lll > 0) and fc.d set; throws std::domain_error / invalid_argument.
 */
RhoValue rho_reference(double x, const FordConstants& fc);

// Exact count of distinct values of psi*(N) <= x over ALL levels N.  The
// certified psi floor bound caps the scan; max_bound limits how far the
// certificate search may go (CertificationError beyond it).
struct PsiCountReport {
  Space space = Space::Full;
  double x = 0.0;
  uint64_t scan_bound = 0;
  uint64_t count = 0;
};

PsiCountReport v_psi_exact(Space space, double x,
                           uint64_t max_bound = 2000000000ull);

/*
 * Exhaustive check of the two level-local inequalities the tail certificates
 * use, for every space and every N <= limit:
 *   nu_inf(N)^2 * N <= psi(N)^2          (cusp count vs leading term)
 *   3|nu2(N)| + 4|nu3(N)| <= 7 * 2^omega(N)   (elliptic terms, any weight)
 * Both are weight-independent, so one pass covers all k at once.
 */
struct NuBoundsReport {
  uint64_t limit = 0;
  uint64_t levels_checked = 0;  // summed over the three spaces
  bool ok = false;
  uint64_t first_violation = 0;  // level, 0 when ok
  std::string detail;            // description of the first violation
};

NuBoundsReport verify_nu_bounds(uint64_t limit);

/*
 * Squarefull counting constant eta = zeta(3/2)/zeta(3): verifies, for each
 * grid point x,
 *   #{squarefull n <= x} <= eta * sqrt(x)
 *   sum_{squarefull n > x} 1/n <= 2 * eta / sqrt(x)
 * The tail is bounded above rigorously: exact enumeration up to
 * cutoff_factor * x, plus a closed-form bound on the remainder from the
 * a^2*b^3 representation.
 */
struct EtaRow {
  double x = 0.0;
  uint64_t squarefull_count = 0;
  double count_bound = 0.0;  // eta*sqrt(x), rounded down
  double tail_upper = 0.0;   // enumerated tail + remainder bound
  double tail_bound = 0.0;   // 2*eta/sqrt(x), rounded down
  bool ok = false;
};

struct EtaReport {
  double eta = 0.0;
  std::vector<EtaRow> rows;
  bool all_ok = false;
};

EtaReport verify_eta_bounds(const std::vector<double>& grid,
                            double cutoff_factor = 100.0);

/*
 * Upper bound on sum over squarefull N > x of 1/psi*(N): the exact Kahan sum
 * of the enumerated terms in (x, cutoff], summed largest-first, plus the
 * certified truncation bound beyond cutoff (valid for every space because
 * 1/psi_full <= 1/psi_new <= 1/psi_min <= 2^omega * N / phi(N)^2).
 * Requires cutoff >= 16*x and x >= 16.  The normalized column divides out
 * the expected sqrt(x)/ln(x) decay.
 */
struct SquarefullTailReport {
  Space space = Space::Full;
  double x = 0.0;
  double cutoff = 0.0;
  uint64_t terms = 0;
  double sum = 0.0;
  double truncation = 0.0;
  double normalized = 0.0;  // (sum + truncation) * sqrt(x) / ln(x)
};

SquarefullTailReport squarefull_reciprocal_tail(Space space, double x,
                                                double cutoff);

/*
 * Density of attained dimensions along a grid: for each x the fraction of
 * integers in [0, (k-1)x/12] that occur as a dimension, optionally compared
 * against x * rho(x).  The grid must be strictly increasing and stay within
 * the spectrum's certified range.
 */
struct DensityRow {
  double x = 0.0;
  uint64_t distinct = 0;
  double ratio = 0.0;  // distinct / ((k-1)x/12)
  std::optional<double> rho_ratio;  // distinct / (x * rho(x))
  bool rho_shape_only = false;
};

struct DensityTrend {
  Space space = Space::Full;
  int k = 2;
  std::vector<DensityRow> rows;
  bool strictly_decreasing = false;  // the ratio column
};

DensityTrend density_trend(const ValueSpectrum& vs,
                           const std::vector<double>& grid,
                           const std::optional<FordConstants>& ford = {});

}  // namespace cuspdim
