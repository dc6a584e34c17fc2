#include "cuspdim/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "cuspdim/envelope.hpp"
#include "cuspdim/scan.hpp"
#include "cuspdim/util.hpp"

namespace cuspdim {

namespace {

/* ------------------------------------------------------------------ */
/*  Binary cache format (native little-endian):                        */
/*    8 bytes  magic "CDIMTAB1"                                        */
/*    u32      space                                                   */
/*    i32      k                                                       */
/*    u64      limit                                                   */
/*    i64[limit]  dims for n = 1..limit                                */
/*    u64      FNV-1a checksum of everything after the magic           */
/* ------------------------------------------------------------------ */

constexpr char kCacheMagic[8] = {'C', 'D', 'I', 'M', 'T', 'A', 'B', '1'};

uint64_t fnv1a(const void* data, size_t len, uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

constexpr uint64_t kFnvSeed = 1469598103934665603ull;

template <typename T>
void write_pod(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& is, T* v) {
  is.read(reinterpret_cast<char*>(v), sizeof(T));
}

int effective_threads(int threads) {
  if (threads < 1) {
    throw std::invalid_argument("thread count must be >= 1");
  }
  return threads;
}

}  // namespace

DimensionTable::DimensionTable(Space space, int k, uint64_t limit,
                               uint64_t memory_budget_bytes)
    : space_(space), k_(k), limit_(limit) {
  validate_weight(k);
  if (limit < 1) {
    throw std::invalid_argument("dimension table limit must be >= 1");
  }
  u128 bytes = (static_cast<u128>(limit) + 1) * sizeof(int64_t);
  if (bytes > memory_budget_bytes) {
    throw MemoryBudgetError("dimension table for limit " +
                            std::to_string(limit) + " needs " +
                            to_string(bytes) + " bytes, budget is " +
                            std::to_string(memory_budget_bytes));
  }
  dims_.assign(limit + 1, 0);
}

void DimensionTable::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw IoError("cannot open cache file for writing: " + path);
  }
  os.write(kCacheMagic, sizeof(kCacheMagic));
  const auto space_tag = static_cast<uint32_t>(space_);
  const auto k_tag = static_cast<int32_t>(k_);
  write_pod(os, space_tag);
  write_pod(os, k_tag);
  write_pod(os, limit_);
  os.write(reinterpret_cast<const char*>(dims_.data() + 1),
           static_cast<std::streamsize>(limit_ * sizeof(int64_t)));
  uint64_t sum = kFnvSeed;
  sum = fnv1a(&space_tag, sizeof(space_tag), sum);
  sum = fnv1a(&k_tag, sizeof(k_tag), sum);
  sum = fnv1a(&limit_, sizeof(limit_), sum);
  sum = fnv1a(dims_.data() + 1, limit_ * sizeof(int64_t), sum);
  write_pod(os, sum);
  os.flush();
  if (!os) {
    throw IoError("write failed for cache file: " + path);
  }
}

DimensionTable DimensionTable::load(const std::string& path, Space space,
                                    int k, uint64_t limit) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open cache file for reading: " + path);
  }
  char magic[sizeof(kCacheMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
    throw IoError("bad cache magic in " + path);
  }
  uint32_t space_tag = 0;
  int32_t k_tag = 0;
  uint64_t limit_tag = 0;
  read_pod(is, &space_tag);
  read_pod(is, &k_tag);
  read_pod(is, &limit_tag);
  if (!is) {
    throw IoError("truncated cache header in " + path);
  }
  if (space_tag != static_cast<uint32_t>(space) || k_tag != k ||
      limit_tag != limit) {
    throw IoError("cache header mismatch in " + path + ": file has space=" +
                  std::to_string(space_tag) + " k=" + std::to_string(k_tag) +
                  " limit=" + std::to_string(limit_tag));
  }
  DimensionTable table(space, k, limit);
  is.read(reinterpret_cast<char*>(table.dims_.data() + 1),
          static_cast<std::streamsize>(limit * sizeof(int64_t)));
  uint64_t stored_sum = 0;
  read_pod(is, &stored_sum);
  if (!is) {
    throw IoError("truncated cache payload in " + path);
  }
  uint64_t sum = kFnvSeed;
  sum = fnv1a(&space_tag, sizeof(space_tag), sum);
  sum = fnv1a(&k_tag, sizeof(k_tag), sum);
  sum = fnv1a(&limit_tag, sizeof(limit_tag), sum);
  sum = fnv1a(table.dims_.data() + 1, limit * sizeof(int64_t), sum);
  if (sum != stored_sum) {
    throw IoError("cache checksum mismatch in " + path);
  }
  return table;
}

DimensionTable sieve_dimensions(Space space, int k, uint64_t limit,
                                const SpfSieve& sieve) {
  if (limit > sieve.limit()) {
    throw std::invalid_argument("sieve_dimensions: limit exceeds sieve range");
  }
  DimensionTable table(space, k, limit);
  for (uint64_t n = 1; n <= limit; ++n) {
    table.set(n, dimension(space, k, sieve.factorize(n)));
  }
  return table;
}

namespace {

// Scans [lo, hi] for one space/weight and writes dim(n) into out[n].
// Caller guarantees disjoint index ranges across threads.
void fill_dims_block(Space space, int k, uint64_t lo, uint64_t hi,
                     DimensionTable* out) {
  scan_levels(space, lo, hi, [&](const LevelData& ld) {
    DimensionParts parts = ld.parts;
    parts.mu_slot = space == Space::Full ? 1 : ld.mu;
    out->set(ld.n, dimension_from_parts(space, k, ld.n, parts));
  });
}

template <typename Fn>
void run_blocks(const std::vector<std::pair<uint64_t, uint64_t>>& blocks,
                const Fn& fn) {
  if (blocks.size() <= 1) {
    for (size_t i = 0; i < blocks.size(); ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(blocks.size());
  workers.reserve(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace

DimensionTable sieve_dimensions(Space space, int k, uint64_t limit,
                                int threads) {
  threads = effective_threads(threads);
  DimensionTable table(space, k, limit);
  const auto blocks = split_range(1, limit, threads);
  run_blocks(blocks, [&](size_t i) {
    fill_dims_block(space, k, blocks[i].first, blocks[i].second, &table);
  });
  return table;
}

namespace {

struct SpectrumAccumulator {
  std::vector<uint64_t> counts;
  std::vector<uint64_t> first_level;

  explicit SpectrumAccumulator(size_t size) : counts(size, 0), first_level(size, 0) {}

  void record(int64_t d, uint64_t n) {
    auto idx = static_cast<size_t>(d);
    ++counts[idx];
    if (first_level[idx] == 0 || n < first_level[idx]) {
      first_level[idx] = n;
    }
  }

  // Order-independent merge: counts add, witnesses take the minimum, so the
  // combined result does not depend on thread scheduling.
  void merge_from(const SpectrumAccumulator& other) {
    for (size_t i = 0; i < counts.size(); ++i) {
      counts[i] += other.counts[i];
      if (other.first_level[i] != 0 &&
          (first_level[i] == 0 || other.first_level[i] < first_level[i])) {
        first_level[i] = other.first_level[i];
      }
    }
  }
};

void settle_flat(const FlatTailCertificate& flat, int threads,
                 ValueSpectrum* vs) {
  const uint64_t limit = flat.scan_limit;
  if (limit == 0) {
    return;  // certificate shows every level exceeds the target
  }
  const int64_t target = flat.target;
  const auto blocks = split_range(1, limit, threads);
  std::vector<SpectrumAccumulator> acc(
      blocks.size(), SpectrumAccumulator(static_cast<size_t>(target) + 1));
  run_blocks(blocks, [&](size_t i) {
    scan_levels(flat.space, blocks[i].first, blocks[i].second,
                [&](const LevelData& ld) {
                  DimensionParts parts = ld.parts;
                  parts.mu_slot = flat.space == Space::Full ? 1 : ld.mu;
                  int64_t d =
                      dimension_from_parts(flat.space, flat.k, ld.n, parts);
                  if (d <= target) acc[i].record(d, ld.n);
                });
  });
  SpectrumAccumulator total(static_cast<size_t>(target) + 1);
  for (const auto& a : acc) total.merge_from(a);
  vs->counts = std::move(total.counts);
  vs->first_level = std::move(total.first_level);
}

/*
 * Hybrid settlement.  Every level decomposes uniquely as N = q*s with s the
 * squarefull part and q squarefree, gcd(q, s) = 1.  The certificate lists the
 * kernels s whose cofactor scans are needed; all local factors multiply
 * across the coprime split, and mu(q*s) is mu(q) for s = 1 and 0 otherwise.
 * Because the decomposition is unique, counting (s, q) pairs counts levels
 * exactly once.
 */
void settle_hybrid(const HybridTailCertificate& hybrid, int threads,
                   ValueSpectrum* vs) {
  const int64_t target = hybrid.target;
  const int k = hybrid.k;
  std::vector<SpectrumAccumulator> acc(
      static_cast<size_t>(threads),
      SpectrumAccumulator(static_cast<size_t>(target) + 1));
  std::atomic<size_t> next{0};

  auto worker = [&](size_t tid) {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= hybrid.kernels.size()) break;
      const HybridKernel& kernel = hybrid.kernels[idx];
      if (kernel.q_limit == 0) continue;
      const Factorization fs = factorize(kernel.s);
      const DimensionParts kp = dimension_parts(Space::Min, fs);
      if (kp.psi != kernel.psi_s ||
          static_cast<uint32_t>(fs.omega()) != kernel.omega_s) {
        throw CertificationError("hybrid kernel data mismatch at s = " +
                                 std::to_string(kernel.s));
      }
      if (kernel.s > 1 &&
          kernel.q_limit >
              std::numeric_limits<uint64_t>::max() / kernel.s) {
        throw std::overflow_error("hybrid settlement level overflow");
      }
      ScanOptions opts;
      for (const auto& pp : fs.factors()) {
        opts.skip_prime_multiples.push_back(pp.p);
      }
      scan_levels(Space::Min, 1, kernel.q_limit,
                  [&](const LevelData& ld) {
                    if (ld.mu == 0) return;  // cofactors must be squarefree
                    DimensionParts parts;
                    parts.psi = kp.psi * ld.parts.psi;
                    parts.nu_inf = kp.nu_inf * ld.parts.nu_inf;
                    parts.nu2 = kp.nu2 * ld.parts.nu2;
                    parts.nu3 = kp.nu3 * ld.parts.nu3;
                    parts.mu_slot = kernel.s == 1 ? ld.mu : 0;
                    uint64_t n = ld.n * kernel.s;
                    int64_t d = dimension_from_parts(Space::Min, k, n, parts);
                    if (d <= target) acc[tid].record(d, n);
                  },
                  opts);
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    workers.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          worker(static_cast<size_t>(t));
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  SpectrumAccumulator total(static_cast<size_t>(target) + 1);
  for (const auto& a : acc) total.merge_from(a);
  vs->counts = std::move(total.counts);
  vs->first_level = std::move(total.first_level);
}

}  // namespace

ValueSpectrum build_spectrum(const TailCertificate& cert, int threads) {
  threads = effective_threads(threads);
  std::string why;
  if (!cert.validate(&why)) {
    throw CertificationError("certificate failed validation: " + why);
  }
  if (cert.target < 0) {
    throw std::invalid_argument("spectrum target must be >= 0");
  }
  ValueSpectrum vs;
  vs.space = cert.space;
  vs.k = cert.k;
  vs.max_certified = cert.target;
  vs.settlement_cost = cert.settlement_cost();
  vs.counts.assign(static_cast<size_t>(cert.target) + 1, 0);
  vs.first_level.assign(static_cast<size_t>(cert.target) + 1, 0);
  if (cert.flat) {
    settle_flat(*cert.flat, threads, &vs);
  } else if (cert.hybrid) {
    settle_hybrid(*cert.hybrid, threads, &vs);
  } else {
    throw CertificationError("certificate carries no settlement plan");
  }
  return vs;
}

uint64_t count_distinct(const ValueSpectrum& vs, double x) {
  if (!(x >= 0)) {
    throw std::domain_error("count_distinct: x must be >= 0");
  }
  long double ceiling_ld =
      std::floor(static_cast<long double>(vs.k - 1) * x / 12.0L);
  if (ceiling_ld > static_cast<long double>(vs.max_certified)) {
    throw CertificationError(
        "count_distinct: dimension ceiling " + std::to_string((double)ceiling_ld) +
        " exceeds certified range " + std::to_string(vs.max_certified));
  }
  auto ceiling = static_cast<int64_t>(ceiling_ld);
  uint64_t distinct = 0;
  for (int64_t d = 0; d <= ceiling; ++d) {
    if (vs.counts[static_cast<size_t>(d)] > 0) ++distinct;
  }
  return distinct;
}

std::vector<int64_t> missing_values(const ValueSpectrum& vs, int64_t target) {
  if (target < 0) {
    throw std::invalid_argument("missing_values: target must be >= 0");
  }
  if (target > vs.max_certified) {
    throw CertificationError("missing_values: target " +
                             std::to_string(target) +
                             " exceeds certified range " +
                             std::to_string(vs.max_certified));
  }
  std::vector<int64_t> missing;
  for (int64_t d = 0; d <= target; ++d) {
    if (vs.counts[static_cast<size_t>(d)] == 0) missing.push_back(d);
  }
  return missing;
}

std::vector<int64_t> missing_values(Space space, int k, int64_t target,
                                    const TailCertificate& cert,
                                    const DimensionTable& table) {
  if (target < 0) {
    throw std::invalid_argument("missing_values: target must be >= 0");
  }
  if (cert.space != space || cert.k != k) {
    throw std::invalid_argument("missing_values: certificate space/weight mismatch");
  }
  if (table.space() != space || table.k() != k) {
    throw std::invalid_argument("missing_values: table space/weight mismatch");
  }
  if (target > cert.target) {
    throw CertificationError("missing_values: target exceeds certificate target");
  }
  if (!cert.flat) {
    throw std::invalid_argument(
        "missing_values: table-backed query needs a flat certificate");
  }
  std::string why;
  if (!cert.validate(&why)) {
    throw CertificationError("certificate failed validation: " + why);
  }
  if (cert.flat->scan_limit > table.limit()) {
    throw std::invalid_argument(
        "missing_values: table shorter than certificate scan range");
  }
  std::vector<char> attained(static_cast<size_t>(target) + 1, 0);
  for (uint64_t n = 1; n <= cert.flat->scan_limit; ++n) {
    int64_t d = table.dim(n);
    if (d >= 0 && d <= target) attained[static_cast<size_t>(d)] = 1;
  }
  std::vector<int64_t> missing;
  for (int64_t d = 0; d <= target; ++d) {
    if (!attained[static_cast<size_t>(d)]) missing.push_back(d);
  }
  return missing;
}

SurveyReport delta_value_survey(Space space, int k, int r,
                                std::optional<uint64_t> h_bound,
                                uint64_t scan_limit) {
  validate_weight(k);
  if (r < 1) {
    throw std::invalid_argument("delta_value_survey: r must be >= 1");
  }
  if (scan_limit < 1) {
    throw std::invalid_argument("delta_value_survey: scan limit must be >= 1");
  }
  if ((space == Space::Full) != h_bound.has_value()) {
    throw std::invalid_argument(
        "delta_value_survey: squarefull-part bound is required for the full "
        "space and not accepted otherwise");
  }
  SurveyReport report;
  report.space = space;
  report.k = k;
  report.r = r;
  report.h_bound = h_bound;
  if (space == Space::Full) {
    report.bound = envelope::eta_value() *
                   std::sqrt(static_cast<double>(*h_bound)) * r * (r + 1.0) *
                   (r + 1.0);
  } else {
    report.bound = 3.0 * (2.0 * r + 1.0) * (2.0 * r + 1.0);
  }

  std::set<int64_t> values;
  uint64_t next_checkpoint = 10;
  scan_levels(space, 1, scan_limit, [&](const LevelData& ld) {
    while (next_checkpoint <= scan_limit && ld.n > next_checkpoint) {
      report.checkpoints.push_back({next_checkpoint, values.size()});
      next_checkpoint *= 10;
    }
    bool in_family = ld.omega < static_cast<unsigned>(r);
    if (in_family) {
      if (space == Space::Full) {
        in_family = ld.squarefull_part <= *h_bound;
      } else {
        in_family = !is_perfect_square(ld.n);
      }
    }
    if (in_family) {
      DimensionParts parts = ld.parts;
      parts.mu_slot = space == Space::Full ? 1 : ld.mu;
      int64_t d = dimension_from_parts(space, k, ld.n, parts);
      values.insert(12 * d - static_cast<int64_t>(k - 1) *
                                 static_cast<int64_t>(parts.psi));
    }
    if (ld.n == next_checkpoint) {
      report.checkpoints.push_back({next_checkpoint, values.size()});
      next_checkpoint *= 10;
    }
  });
  if (report.checkpoints.empty() ||
      report.checkpoints.back().scan_limit != scan_limit) {
    report.checkpoints.push_back({scan_limit, values.size()});
  }
  report.values.assign(values.begin(), values.end());
  return report;
}

CensusReport exceptional_census(Space space, int k, double x) {
  validate_weight(k);
  if (!(x >= 16.0)) {
    throw std::domain_error("exceptional_census: x must be >= 16");
  }
  CensusReport report;
  report.space = space;
  report.k = k;
  report.x = x;

  const auto target = static_cast<int64_t>(
      std::floor(static_cast<long double>(k - 1) * x / 12.0L));
  // Every level with psi*(N) <= x lies below the certified psi floor, and
  // every level with dim <= (k-1)x/12 lies below the flat scan bound; their
  // max covers the census condition min(psi*, 12 dim/(k-1)) <= x.
  const PsiFloorBound psi_floor =
      certify_psi_floor(space, x, uint64_t{2000000000});
  uint64_t scan_bound = psi_floor.bound;
  if (target >= 0) {
    const FlatTailCertificate flat =
        certify_flat(space, k, target, uint64_t{2000000000});
    scan_bound = std::max(scan_bound, flat.scan_limit);
  }
  report.scan_bound = scan_bound;

  const double omega_threshold = 3.0 * std::log(std::log(x));
  uint64_t count = 0;
  if (scan_bound >= 1) {
    scan_levels(space, 1, scan_bound, [&](const LevelData& ld) {
      bool small_psi =
          static_cast<long double>(ld.parts.psi) <= static_cast<long double>(x);
      bool small_dim = false;
      if (!small_psi) {
        DimensionParts parts = ld.parts;
        parts.mu_slot = space == Space::Full ? 1 : ld.mu;
        int64_t d = dimension_from_parts(space, k, ld.n, parts);
        small_dim = static_cast<long double>(12) * d <=
                    static_cast<long double>(k - 1) * x;
      }
      if (!(small_psi || small_dim)) return;
      if (ld.omega > omega_threshold || is_perfect_square(ld.n)) ++count;
    });
  }
  report.count = count;
  report.normalized = static_cast<double>(count) * std::log(x) / x;
  return report;
}

}  // namespace cuspdim
