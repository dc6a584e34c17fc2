#include "cuspdim/util.hpp"

#include <algorithm>
#include <cmath>

namespace cuspdim {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-v));
  return to_string(static_cast<u128>(v));
}

uint64_t isqrt64(uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  // The double seed can be off by one in either direction near 2^52+; walk to
  // the exact floor using 128-bit squares.
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(uint64_t n) {
  uint64_t r = isqrt64(n);
  return r * r == n;
}

}  // namespace cuspdim
