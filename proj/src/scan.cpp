#include "cuspdim/scan.hpp"

#include <algorithm>
#include <stdexcept>

#include "cuspdim/arith.hpp"
#include "cuspdim/util.hpp"

namespace cuspdim {

namespace {

// Per-index accumulators for one segment.  Kept in a struct so the buffers
// survive across segments without reallocation.
struct SegmentBuffers {
  std::vector<uint64_t> remainder;
  std::vector<uint64_t> psi;
  std::vector<uint64_t> nu_inf;
  std::vector<int64_t> nu2;
  std::vector<int64_t> nu3;
  std::vector<uint8_t> omega;
  std::vector<uint8_t> squarefree;
  std::vector<uint64_t> hpart;
  std::vector<uint8_t> skip;

  void reset(size_t len, bool with_skip) {
    remainder.assign(len, 0);
    psi.assign(len, 1);
    nu_inf.assign(len, 1);
    nu2.assign(len, 1);
    nu3.assign(len, 1);
    omega.assign(len, 0);
    squarefree.assign(len, 1);
    hpart.assign(len, 1);
    if (with_skip) skip.assign(len, 0);
  }
};

// Multiplies the local factor values of p^e into the accumulators at idx.
template <Space S>
inline void apply_local(SegmentBuffers& b, size_t idx, uint64_t p, uint32_t e) {
  b.psi[idx] *= psi_local(S, p, e);
  b.nu_inf[idx] *= nu_inf_local(S, p, e);
  b.nu2[idx] *= nu2_local(S, p, e);
  b.nu3[idx] *= nu3_local(S, p, e);
  b.omega[idx] += 1;
  if (e >= 2) {
    b.squarefree[idx] = 0;
    uint64_t pe = p;
    for (uint32_t i = 1; i < e; ++i) pe *= p;
    b.hpart[idx] *= pe;
  }
}

template <Space S>
void scan_levels_impl(uint64_t lo, uint64_t hi,
                      const std::function<void(const LevelData&)>& fn,
                      const ScanOptions& options) {
  const uint64_t seg = std::max<uint64_t>(options.segment_size, 64);
  const bool have_skip = !options.skip_prime_multiples.empty();

  const uint64_t root = isqrt64(hi);
  if (root >= (uint64_t{1} << 32)) {
    throw std::invalid_argument("scan_levels: range upper end too large");
  }
  const std::vector<uint32_t> primes = primes_up_to(static_cast<uint32_t>(root));

  SegmentBuffers buf;
  LevelData out;

  for (uint64_t base = lo; base <= hi;) {
    const uint64_t end = std::min(hi, base + seg - 1);  // inclusive segment [base, end]
    const size_t len = static_cast<size_t>(end - base + 1);
    buf.reset(len, have_skip);
    for (size_t i = 0; i < len; ++i) buf.remainder[i] = base + i;

    if (have_skip) {
      for (uint64_t p : options.skip_prime_multiples) {
        uint64_t m = ((base + p - 1) / p) * p;
        for (; m <= end; m += p) buf.skip[static_cast<size_t>(m - base)] = 1;
      }
    }

    for (uint32_t p32 : primes) {
      const uint64_t p = p32;
      if (p * p > end) break;
      uint64_t m = ((base + p - 1) / p) * p;
      if (m == 0) m = p;  // unreachable for lo >= 1; keeps the loop total
      for (; m <= end; m += p) {
        const size_t idx = static_cast<size_t>(m - base);
        if (have_skip && buf.skip[idx]) {
          // Still peel the prime so the remainder stays consistent, but the
          // cheap path: we never report this index, so just mark and move on.
          continue;
        }
        uint64_t& r = buf.remainder[idx];
        uint32_t e = 0;
        while (r % p == 0) {
          r /= p;
          ++e;
        }
        apply_local<S>(buf, idx, p, e);
      }
    }

    for (size_t i = 0; i < len; ++i) {
      if (have_skip && buf.skip[i]) continue;
      const uint64_t n = base + i;
      uint64_t r = buf.remainder[i];
      if (r > 1) {
        // Prime remainder > sqrt(hi), exponent 1.
        apply_local<S>(buf, i, r, 1);
      }
      out.n = n;
      out.parts.psi = buf.psi[i];
      out.parts.nu_inf = buf.nu_inf[i];
      out.parts.nu2 = buf.nu2[i];
      out.parts.nu3 = buf.nu3[i];
      out.parts.mu_slot = 1;
      out.omega = buf.omega[i];
      out.mu = buf.squarefree[i] ? ((buf.omega[i] & 1) ? int8_t{-1} : int8_t{1})
                                 : int8_t{0};
      out.squarefull_part = buf.hpart[i];
      fn(out);
    }

    if (end == hi) break;
    base = end + 1;
  }
}

}  // namespace

void scan_levels(Space space, uint64_t lo, uint64_t hi,
                 const std::function<void(const LevelData&)>& fn,
                 const ScanOptions& options) {
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("scan_levels: need 1 <= lo <= hi");
  }
  switch (space) {
    case Space::Full:
      scan_levels_impl<Space::Full>(lo, hi, fn, options);
      return;
    case Space::New:
      scan_levels_impl<Space::New>(lo, hi, fn, options);
      return;
    case Space::Min:
      scan_levels_impl<Space::Min>(lo, hi, fn, options);
      return;
  }
  throw std::invalid_argument("scan_levels: bad space");
}

std::vector<std::pair<uint64_t, uint64_t>> split_range(uint64_t lo, uint64_t hi,
                                                       int parts) {
  if (lo > hi || parts < 1) {
    throw std::invalid_argument("split_range: need lo <= hi and parts >= 1");
  }
  const uint64_t total = hi - lo + 1;
  const uint64_t count = std::min<uint64_t>(static_cast<uint64_t>(parts), total);
  std::vector<std::pair<uint64_t, uint64_t>> blocks;
  blocks.reserve(static_cast<size_t>(count));
  uint64_t start = lo;
  for (uint64_t i = 0; i < count; ++i) {
    const uint64_t size = total / count + (i < total % count ? 1 : 0);
    blocks.emplace_back(start, start + size - 1);
    start += size;
  }
  return blocks;
}

}  // namespace cuspdim
