#include "cuspdim/scan.hpp"

#include <map>
#include <vector>

#include "cuspdim/arith.hpp"
#include "cuspdim/dim_formulas.hpp"
#include "test_util.hpp"

using namespace cuspdim;

/*
 * The segmented scanner must agree, level by level, with the slow path
 * (factorize each N and multiply local factors), including the Moebius,
 * omega, and squarefull-part side channels.  That is checked exhaustively on
 * a small range for every space and on random windows far beyond any sieve.
 */

namespace {

void check_window(Space space, uint64_t lo, uint64_t hi) {
  uint64_t expect = lo;
  scan_levels(space, lo, hi, [&](const LevelData& ld) {
    CHECK_EQ(ld.n, expect);
    ++expect;
    const Factorization f = factorize(ld.n);
    const DimensionParts ref = dimension_parts(space, f);
    CHECK_EQ(ld.parts.psi, ref.psi);
    CHECK_EQ(ld.parts.nu_inf, ref.nu_inf);
    CHECK_EQ(ld.parts.nu2, ref.nu2);
    CHECK_EQ(ld.parts.nu3, ref.nu3);
    CHECK_EQ(static_cast<int>(ld.parts.mu_slot), 1);  // scanner leaves it unset
    CHECK_EQ(static_cast<int>(ld.mu), f.mobius());
    CHECK_EQ(static_cast<int>(ld.omega), f.omega());
    CHECK_EQ(ld.squarefull_part, f.squarefull_part());
  });
  CHECK_EQ(expect, hi + 1);
}

void agreement_small() {
  // Exhaustive agreement on [1, 2e5] would be ~5e6 CHECK lines per space;
  // sample the checks but verify every dimension value exactly.
  for (Space space : {Space::Full, Space::New, Space::Min}) {
    uint64_t mismatches = 0;
    scan_levels(space, 1, 200000, [&](const LevelData& ld) {
      const Factorization f = factorize(ld.n);
      const DimensionParts ref = dimension_parts(space, f);
      DimensionParts got = ld.parts;
      got.mu_slot = space == Space::Full ? 1 : ld.mu;
      if (got.psi != ref.psi || got.nu_inf != ref.nu_inf ||
          got.nu2 != ref.nu2 || got.nu3 != ref.nu3 ||
          got.mu_slot != ref.mu_slot ||
          dimension_from_parts(space, 6, ld.n, got) != dimension(space, 6, f)) {
        ++mismatches;
      }
    });
    CHECK_EQ(mismatches, uint64_t{0});
  }
}

void far_windows() {
  for (int trial = 0; trial < 3; ++trial) {
    const uint64_t lo = testutil::rand_in(9'999'000'000ull, 10'000'000'000ull);
    check_window(Space::New, lo, lo + 1500);
  }
  check_window(Space::Min, 999'999'000ull, 999'999'400ull);
}

void edges_and_errors() {
  check_window(Space::Full, 1, 1);
  check_window(Space::Full, 7, 7);
  check_window(Space::New, 1, 2);
  CHECK_THROWS(scan_levels(Space::Full, 0, 5, [](const LevelData&) {}),
               std::invalid_argument);
  CHECK_THROWS(scan_levels(Space::Full, 10, 5, [](const LevelData&) {}),
               std::invalid_argument);
}

void skip_primes() {
  // Skipping the prime divisors of 12 must enumerate exactly the levels
  // coprime to 12, with untouched local data.
  ScanOptions opt;
  opt.skip_prime_multiples = {2, 3};
  std::vector<uint64_t> seen;
  scan_levels(Space::Min, 1, 10000, [&](const LevelData& ld) {
    seen.push_back(ld.n);
    const Factorization f = factorize(ld.n);
    CHECK_EQ(ld.parts.psi, psi(Space::Min, f));
  }, opt);
  std::vector<uint64_t> expect;
  for (uint64_t n = 1; n <= 10000; ++n) {
    if (n % 2 != 0 && n % 3 != 0) expect.push_back(n);
  }
  CHECK_EQ(seen.size(), expect.size());
  CHECK(seen == expect);

  // Small segments force kernel-coprime levels to straddle segment borders.
  ScanOptions tiny = opt;
  tiny.segment_size = 64;
  uint64_t count = 0;
  scan_levels(Space::Min, 1, 10000, [&](const LevelData&) { ++count; }, tiny);
  CHECK_EQ(count, expect.size());
}

void split_range_properties() {
  for (int parts : {1, 2, 3, 7, 16}) {
    for (auto [lo, hi] : {std::pair<uint64_t, uint64_t>{1, 1},
                          {1, 5},
                          {1, 1000},
                          {37, 38},
                          {1000000000ull, 1000000100ull}}) {
      const auto blocks = split_range(lo, hi, parts);
      CHECK(!blocks.empty());
      CHECK(blocks.size() <= static_cast<size_t>(parts));
      CHECK_EQ(blocks.front().first, lo);
      CHECK_EQ(blocks.back().second, hi);
      for (size_t i = 0; i < blocks.size(); ++i) {
        CHECK(blocks[i].first <= blocks[i].second);
        if (i > 0) CHECK_EQ(blocks[i].first, blocks[i - 1].second + 1);
      }
    }
  }
}

}  // namespace

int main() {
  agreement_small();
  far_windows();
  edges_and_errors();
  skip_primes();
  split_range_properties();
  return testutil::summary("test_scan");
}
