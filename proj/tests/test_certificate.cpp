#include "cuspdim/certificate.hpp"

#include <string>
#include <vector>

#include "cuspdim/arith.hpp"
#include "cuspdim/dim_formulas.hpp"
#include "cuspdim/scan.hpp"
#include "test_util.hpp"

using namespace cuspdim;

/*
 * A certificate's claim is universally quantified ("every level beyond the
 * bound has dimension above the target"), so besides validate() these tests
 * attack it with exact data: exhaustive scans just past small bounds and
 * random sampling far past large ones.  Any single counterexample would be a
 * soundness hole, not a flake.
 */

namespace {

void flat_headline() {
  const FlatTailCertificate cert = certify_flat(Space::New, 2, 67846, 20000000);
  CHECK_EQ(cert.scan_limit, uint64_t{13359528});
  CHECK(cert.scan_limit <= uint64_t{20000000});
  std::string why;
  CHECK(cert.validate(&why));
  CHECK_EQ(why, std::string{});

  // Soundness sampling: exact dimensions beyond the bound must beat the
  // target.  1000 uniform samples in (X, 10X].
  for (int trial = 0; trial < 1000; ++trial) {
    const uint64_t n =
        testutil::rand_in(cert.scan_limit + 1, 10 * cert.scan_limit);
    CHECK(dimension(Space::New, 2, n) > 67846);
  }

  // Tampering with the stored bound must be caught.
  FlatTailCertificate bad = cert;
  bad.scan_limit /= 2;
  CHECK(!bad.validate(&why));
  CHECK(!why.empty());
  bad = cert;
  bad.target = cert.target * 2;
  CHECK(!bad.validate());
  bad = cert;
  bad.grid_ratio = 3.0;  // outside the accepted (1, 2] family
  CHECK(!bad.validate());
}

void flat_small_exhaustive() {
  // Smallest interesting target: every level past the bound has dim >= 1.
  const FlatTailCertificate cert = certify_flat(Space::Full, 2, 0, 1000000);
  CHECK_EQ(cert.scan_limit, uint64_t{241});
  CHECK(cert.validate());
  for (uint64_t n = cert.scan_limit + 1; n <= 5000; ++n) {
    CHECK(dimension(Space::Full, 2, n) > 0);
  }

  // The same exhaustively for the other spaces at a small target.
  for (Space space : {Space::New, Space::Min}) {
    const FlatTailCertificate c2 = certify_flat(space, 4, 5, 40000000);
    CHECK(c2.validate());
    uint64_t bad = 0;
    scan_levels(space, c2.scan_limit + 1,
                c2.scan_limit + 200000, [&](const LevelData& ld) {
                  DimensionParts parts = ld.parts;
                  parts.mu_slot = space == Space::Full ? 1 : ld.mu;
                  if (dimension_from_parts(space, 4, ld.n, parts) <= 5) ++bad;
                });
    CHECK_EQ(bad, uint64_t{0});
  }
}

void flat_unreachable() {
  CHECK_THROWS(certify_flat(Space::New, 2, 67846, 1000000), CertificationError);
  CHECK_THROWS(certify_flat(Space::New, 1, 5, 1000), std::invalid_argument);
  CHECK_THROWS(certify_flat(Space::New, 2, -1, 1000), std::invalid_argument);
}

void psi_floors() {
  const PsiFloorBound full = certify_psi_floor(Space::Full, 1000.0, 2000000000);
  CHECK(full.validate());
  CHECK_EQ(full.bound, uint64_t{1000});  // psi_full(N) >= N exactly

  const PsiFloorBound nw = certify_psi_floor(Space::New, 1000.0, 2000000000);
  CHECK(nw.validate());
  CHECK_EQ(nw.bound, uint64_t{14310});
  // Exhaustive: no level past the bound has psi_new <= 1000.
  uint64_t bad = 0;
  scan_levels(Space::New, nw.bound + 1, nw.bound + 300000,
              [&](const LevelData& ld) {
                if (ld.parts.psi <= 1000) ++bad;
              });
  CHECK_EQ(bad, uint64_t{0});
  for (int trial = 0; trial < 500; ++trial) {
    const uint64_t n = testutil::rand_in(nw.bound + 1, 100 * nw.bound);
    CHECK(psi(Space::New, factorize(n)) > 1000);
  }

  const PsiFloorBound mn = certify_psi_floor(Space::Min, 1000.0, 2000000000);
  CHECK(mn.validate());
  CHECK_EQ(mn.bound, uint64_t{9524988});
  for (int trial = 0; trial < 500; ++trial) {
    const uint64_t n = testutil::rand_in(mn.bound + 1, 100 * mn.bound);
    CHECK(psi(Space::Min, factorize(n)) > 1000);
  }
  // Adversarial shapes: perfect squares just past the bound (the min-space
  // envelope is weakest on squarefull levels).
  for (uint64_t r = 3087; r <= 3200; ++r) {  // 3087^2 = 9529569 > bound
    CHECK(psi(Space::Min, factorize(r * r)) > 1000);
  }

  PsiFloorBound bad_floor = mn;
  bad_floor.bound /= 2;
  CHECK(!bad_floor.validate());
}

void hybrid_small_crosscheck() {
  const HybridTailCertificate cert = certify_hybrid_min(2, 1000);
  std::string why;
  CHECK(cert.validate(&why));
  CHECK_EQ(why, std::string{});
  CHECK(!cert.kernels.empty());
  CHECK_EQ(cert.kernels.front().s, uint64_t{1});  // squarefree levels

  // Exact kernel data and a settlement budget that matches the stored parts.
  uint64_t total = 0;
  uint64_t sweep_to = 0;
  for (const HybridKernel& kn : cert.kernels) {
    const Factorization fs = factorize(kn.s);
    CHECK_EQ(kn.psi_s, psi(Space::Min, fs));
    CHECK_EQ(static_cast<int>(kn.omega_s), fs.omega());
    CHECK(kn.s == 1 || fs.squarefull_part() == kn.s);
    total += kn.q_limit;
    if (kn.s * kn.q_limit > sweep_to) sweep_to = kn.s * kn.q_limit;
  }
  CHECK_EQ(cert.total_cofactor_scan(), total);

  // Every level the kernel scans can reach is covered by [1, sweep_to]; a
  // direct scan of that window must find exactly the same attained set.
  // (Levels outside every kernel window have dim > 1000 by the certificate.)
  std::vector<uint64_t> direct_count(1001, 0), direct_first(1001, 0);
  scan_levels(Space::Min, 1, sweep_to, [&](const LevelData& ld) {
    DimensionParts parts = ld.parts;
    parts.mu_slot = ld.mu;
    const int64_t d = dimension_from_parts(Space::Min, 2, ld.n, parts);
    if (d < 0 || d > 1000) return;
    ++direct_count[static_cast<size_t>(d)];
    if (direct_first[static_cast<size_t>(d)] == 0)
      direct_first[static_cast<size_t>(d)] = ld.n;
  });

  std::vector<uint64_t> kern_count(1001, 0), kern_first(1001, 0);
  for (const HybridKernel& kn : cert.kernels) {
    const Factorization fs = factorize(kn.s);
    const DimensionParts sparts = dimension_parts(Space::Min, fs);
    ScanOptions opt;
    for (const auto& pp : fs.factors()) opt.skip_prime_multiples.push_back(pp.p);
    scan_levels(Space::Min, 1, kn.q_limit, [&](const LevelData& ld) {
      if (ld.mu == 0) return;  // q must be squarefree
      DimensionParts parts;
      parts.psi = sparts.psi * ld.parts.psi;
      parts.nu_inf = sparts.nu_inf * ld.parts.nu_inf;
      parts.nu2 = sparts.nu2 * ld.parts.nu2;
      parts.nu3 = sparts.nu3 * ld.parts.nu3;
      parts.mu_slot = kn.s == 1 ? ld.mu : 0;
      const uint64_t n = ld.n * kn.s;
      const int64_t d = dimension_from_parts(Space::Min, 2, n, parts);
      if (d < 0 || d > 1000) return;
      ++kern_count[static_cast<size_t>(d)];
      if (kern_first[static_cast<size_t>(d)] == 0 ||
          n < kern_first[static_cast<size_t>(d)])
        kern_first[static_cast<size_t>(d)] = n;
    }, opt);
  }

  // The kernel windows may extend past sweep_to for other kernels, so counts
  // could only exceed the direct ones if a kernel double-counted a level;
  // settlement counts within [1, sweep_to] must agree exactly because every
  // N = q·s decomposition is unique.
  uint64_t mismatch = 0;
  for (size_t d = 0; d <= 1000; ++d) {
    if (direct_count[d] != kern_count[d] || direct_first[d] != kern_first[d])
      ++mismatch;
  }
  CHECK_EQ(mismatch, uint64_t{0});

  HybridTailCertificate bad = cert;
  bad.s_limit /= 2;
  CHECK(!bad.validate());
  bad = cert;
  bad.kernels.pop_back();
  CHECK(!bad.validate());  // kernel list must be complete
  bad = cert;
  bad.kernels.front().q_limit /= 2;  // s = 1 carries the largest cofactor scan
  CHECK(!bad.validate());
}

void umbrella_dispatch() {
  const TailCertificate full = certify_scan_bound(Space::Full, 2, 100);
  CHECK(full.flat.has_value());
  CHECK(!full.hybrid.has_value());
  CHECK(full.validate());
  CHECK_EQ(full.settlement_cost(), full.flat->scan_limit);

  // For the min space the umbrella picks the cheaper of the two forms; at
  // target 1000 a flat bound exists near 3.7e8 but the kernel scan is ~2e5.
  const TailCertificate mn = certify_scan_bound(Space::Min, 2, 1000);
  CHECK(mn.validate());
  CHECK(mn.flat.has_value() != mn.hybrid.has_value());
  CHECK(mn.hybrid.has_value());
  CHECK_EQ(mn.settlement_cost(), mn.hybrid->total_cofactor_scan());
  CHECK(mn.settlement_cost() < uint64_t{1000000});

  TailCertificate broken = full;
  broken.k = 4;  // stored parameters must agree with the inner certificate
  CHECK(!broken.validate());
}

}  // namespace

int main() {
  flat_headline();
  flat_small_exhaustive();
  flat_unreachable();
  psi_floors();
  hybrid_small_crosscheck();
  umbrella_dispatch();
  return testutil::summary("test_certificate");
}
