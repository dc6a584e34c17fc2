#pragma once

/*
 * Minimal shared test harness: counting CHECK macros, a fixed-seed RNG so
 * every failure reproduces byte-for-byte, and a summary that doubles as the
 * process exit code.  No framework on purpose; a test binary is just main().
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "cuspdim/util.hpp"

namespace testutil {

inline int checks_run = 0;
inline int checks_failed = 0;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eedu);
  return gen;
}

inline uint64_t rand_in(uint64_t lo, uint64_t hi) {
  std::uniform_int_distribution<uint64_t> dist(lo, hi);
  return dist(rng());
}

template <typename T>
std::string repr(const T& v) {
  if constexpr (requires(std::ostringstream& os) { os << v; }) {
    std::ostringstream os;
    os << v;
    return os.str();
  } else {
    return "<value>";
  }
}

inline std::string repr(cuspdim::u128 v) { return cuspdim::to_string(v); }
inline std::string repr(cuspdim::i128 v) { return cuspdim::to_string(v); }

inline int summary(const char* name) {
  if (checks_failed == 0) {
    std::printf("[OK] %s: %d checks passed\n", name, checks_run);
    return 0;
  }
  std::printf("FAIL %s: %d of %d checks failed\n", name, checks_failed,
              checks_run);
  return 1;
}

}  // namespace testutil

#define CHECK(cond)                                                     \
  do {                                                                  \
    ++testutil::checks_run;                                             \
    if (!(cond)) {                                                      \
      ++testutil::checks_failed;                                        \
      std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);       \
    }                                                                   \
  } while (0)

#define CHECK_EQ(lhs, rhs)                                              \
  do {                                                                  \
    ++testutil::checks_run;                                             \
    auto check_eq_l = (lhs);                                            \
    auto check_eq_r = (rhs);                                            \
    if (!(check_eq_l == check_eq_r)) {                                  \
      ++testutil::checks_failed;                                        \
      std::printf("FAIL %s:%d: %s == %s  (lhs=%s rhs=%s)\n", __FILE__,  \
                  __LINE__, #lhs, #rhs,                                 \
                  testutil::repr(check_eq_l).c_str(),                   \
                  testutil::repr(check_eq_r).c_str());                  \
    }                                                                   \
  } while (0)

#define CHECK_NEAR(lhs, rhs, tol)                                       \
  do {                                                                  \
    ++testutil::checks_run;                                             \
    double check_near_l = (lhs);                                        \
    double check_near_r = (rhs);                                        \
    if (!(std::fabs(check_near_l - check_near_r) <= (tol))) {           \
      ++testutil::checks_failed;                                        \
      std::printf("FAIL %s:%d: |%s - %s| <= %s  (lhs=%.17g rhs=%.17g)\n", \
                  __FILE__, __LINE__, #lhs, #rhs, #tol, check_near_l,   \
                  check_near_r);                                        \
    }                                                                   \
  } while (0)

#define CHECK_THROWS(expr, ExceptionType)                               \
  do {                                                                  \
    ++testutil::checks_run;                                             \
    bool check_threw = false;                                           \
    try {                                                               \
      (void)(expr);                                                     \
    } catch (const ExceptionType&) {                                    \
      check_threw = true;                                               \
    } catch (...) {                                                     \
    }                                                                   \
    if (!check_threw) {                                                 \
      ++testutil::checks_failed;                                        \
      std::printf("FAIL %s:%d: expected %s to throw %s\n", __FILE__,    \
                  __LINE__, #expr, #ExceptionType);                     \
    }                                                                   \
  } while (0)
