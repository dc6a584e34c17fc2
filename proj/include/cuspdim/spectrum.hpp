#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspdim/arith.hpp"
#include "cuspdim/certificate.hpp"
#include "cuspdim/dim_formulas.hpp"

namespace cuspdim {

/*
 * Attained-dimension machinery: bulk dimension tables, the exact value
 * spectrum below a certified target, and the derived reports (missing
 * values, discrepancy surveys, exceptional-level census).
 */

// Dense table of dim(space, k, N) for 1 <= N <= limit.
class DimensionTable {
 public:
  DimensionTable(Space space, int k, uint64_t limit,
                 uint64_t memory_budget_bytes = SpfSieve::kDefaultMemoryBudget);

  Space space() const { return space_; }
  int k() const { return k_; }
  uint64_t limit() const { return limit_; }
  int64_t dim(uint64_t n) const { return dims_[n]; }  // 1 <= n <= limit
  void set(uint64_t n, int64_t d) { dims_[n] = d; }

  // Versioned little-endian binary cache with a checksum; load re-validates
  // the header against the requested parameters and throws IoError on any
  // mismatch or corruption.
  void save(const std::string& path) const;
  static DimensionTable load(const std::string& path, Space space, int k,
                             uint64_t limit);

 private:
  Space space_;
  int k_;
  uint64_t limit_;
  std::vector<int64_t> dims_;
};

// Fills a table from a smallest-prime-factor sieve (limit <= sieve.limit()).
DimensionTable sieve_dimensions(Space space, int k, uint64_t limit,
                                const SpfSieve& sieve);

// Fills a table with the segmented level scanner (no sieve needed); threads
// split the range into disjoint blocks, so the result is deterministic.
DimensionTable sieve_dimensions(Space space, int k, uint64_t limit,
                                int threads = 1);

/*
 * Exact multiplicity data for every dimension value d <= max_certified:
 * counts[d] is the number of levels N (over ALL of N, not just a scan range)
 * with dim(space,k,N) = d, and first_level[d] the smallest such N.  The
 * certificate guarantees levels outside the settlement scan have dim >
 * max_certified, which is what makes the counts complete.
 */
struct ValueSpectrum {
  Space space = Space::Full;
  int k = 2;
  int64_t max_certified = -1;
  uint64_t settlement_cost = 0;
  std::vector<uint64_t> counts;       // size max_certified + 1
  std::vector<uint64_t> first_level;  // size max_certified + 1; 0 = not attained

  bool attained(int64_t d) const {
    return d >= 0 && d <= max_certified && counts[static_cast<size_t>(d)] > 0;
  }
};

// Runs the settlement scan of a validated certificate.  Throws
// CertificationError if cert.validate() fails.
ValueSpectrum build_spectrum(const TailCertificate& cert, int threads = 1);

// Number of distinct dimension values <= (k-1)·x/12 attained by the space;
// x >= 0 real.  Throws CertificationError if the implied ceiling exceeds
// vs.max_certified (the spectrum cannot answer beyond its certificate).
uint64_t count_distinct(const ValueSpectrum& vs, double x);

// All d in [0, target] attained by NO level.  Spectrum-backed:
std::vector<int64_t> missing_values(const ValueSpectrum& vs, int64_t target);
// Table-backed (flat certificates): cert must be validated, flat, with
// scan_limit <= table.limit(), matching space/k, and target <= cert.target.
std::vector<int64_t> missing_values(Space space, int k, int64_t target,
                                    const TailCertificate& cert,
                                    const DimensionTable& table);

/*
 * Distinct values of 12·dim - (k-1)·psi over restricted level families:
 *   new/min: omega(N) < r and N not a perfect square
 *            (#values <= 3·(2r+1)^2),
 *   full:    omega(N) < r and squarefull part H(N) <= h
 *            (#values <= eta·sqrt(h)·r·(r+1)^2).
 * The survey scans N <= scan_limit and reports the running distinct count at
 * each power of ten, exhibiting stabilization.
 */
struct SurveyCheckpoint {
  uint64_t scan_limit = 0;
  uint64_t distinct = 0;
};

struct SurveyReport {
  Space space = Space::Full;
  int k = 2;
  int r = 1;
  std::optional<uint64_t> h_bound;  // full space only
  double bound = 0.0;
  std::vector<SurveyCheckpoint> checkpoints;
  std::vector<int64_t> values;  // sorted distinct values at the final checkpoint

  bool within_bound() const {
    return static_cast<double>(values.size()) <= bound;
  }
};

SurveyReport delta_value_survey(Space space, int k, int r,
                                std::optional<uint64_t> h_bound,
                                uint64_t scan_limit);

/*
 * Census of exceptional levels: N with min(psi*(N), 12·dim/(k-1)) <= x that
 * are either prime-heavy (omega(N) > 3·lnln x) or perfect squares.  The scan
 * bound covering ALL such N is certified: max over the psi floor bound and
 * the dimension scan bound for target floor((k-1)x/12).
 */
struct CensusReport {
  Space space = Space::Full;
  int k = 2;
  double x = 0.0;
  uint64_t scan_bound = 0;
  uint64_t count = 0;
  double normalized = 0.0;  // count·ln x / x
};

CensusReport exceptional_census(Space space, int k, double x);

}  // namespace cuspdim
