#include "cuspdim/dim_formulas.hpp"

#include <stdexcept>

namespace cuspdim {

namespace {

uint64_t ipow(uint64_t base, uint32_t exp) {
  uint64_t acc = 1;
  while (exp-- > 0) acc *= base;
  return acc;
}

[[noreturn]] void bad_space() {
  throw std::invalid_argument("space must be one of full|new|min");
}

}  // namespace

Space parse_space(std::string_view name) {
  if (name == "full") return Space::Full;
  if (name == "new") return Space::New;
  if (name == "min") return Space::Min;
  bad_space();
}

std::string_view space_name(Space space) {
  switch (space) {
    case Space::Full: return "full";
    case Space::New: return "new";
    case Space::Min: return "min";
  }
  bad_space();
}

LocalFactor parse_local_factor(std::string_view name) {
  if (name == "psi") return LocalFactor::Psi;
  if (name == "nu_inf") return LocalFactor::NuInf;
  if (name == "nu2") return LocalFactor::Nu2;
  if (name == "nu3") return LocalFactor::Nu3;
  throw std::invalid_argument("factor must be one of psi|nu_inf|nu2|nu3");
}

std::string_view local_factor_name(LocalFactor lf) {
  switch (lf) {
    case LocalFactor::Psi: return "psi";
    case LocalFactor::NuInf: return "nu_inf";
    case LocalFactor::Nu2: return "nu2";
    case LocalFactor::Nu3: return "nu3";
  }
  throw std::invalid_argument("unknown local factor");
}

void validate_weight(int k) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("weight must be an even integer >= 2, got " +
                                std::to_string(k));
  }
}

int twelve_c2(int k) {
  validate_weight(k);
  // k-1 is odd, so (k-1) mod 4 is 1 or 3.
  return (k - 1) % 4 == 1 ? -3 : 3;
}

int twelve_c3(int k) {
  validate_weight(k);
  switch ((k - 1) % 3) {
    case 0: return 0;
    case 1: return -4;
    default: return 4;
  }
}

int delta_weight2(int k) {
  validate_weight(k);
  return k == 2 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Prime-power tables.
// ---------------------------------------------------------------------------

uint64_t psi_local(Space space, uint64_t p, uint32_t e) {
  switch (space) {
    case Space::Full:
      // p^e + p^(e-1)
      return ipow(p, e - 1) * (p + 1);
    case Space::New:
      if (e == 1) return p - 1;
      if (e == 2) return p * p - p - 1;
      return ipow(p, e - 3) * (p - 1) * (p - 1) * (p + 1);
    case Space::Min: {
      // (p-1)/gcd(2, p-1, e) times an e-dependent tail; the gcd is 2 exactly
      // when p is odd and e is even, so the division below is exact.
      uint64_t head = p - 1;
      if (p % 2 == 1 && e % 2 == 0) head /= 2;
      if (e == 1) return head;
      if (e == 2) return head * (p - 1);
      return head * ipow(p, e - 3) * (p - 1) * (p + 1);
    }
  }
  bad_space();
}

uint64_t nu_inf_local(Space space, uint64_t p, uint32_t e) {
  switch (space) {
    case Space::Full:
      if (e % 2 == 1) return 2 * ipow(p, (e - 1) / 2);
      return ipow(p, e / 2 - 1) * (p + 1);
    case Space::New:
      if (e == 2) return p - 2;
      if (e % 2 == 0) return ipow(p, e / 2 - 2) * (p - 1) * (p - 1);
      return 0;  // odd e, including e = 1
    case Space::Min:
      if (p == 2 && e > 2 && e % 2 == 0) return 1ull << (e / 2 - 2);
      return 0;
  }
  bad_space();
}

int nu2_local(Space space, uint64_t p, uint32_t e) {
  uint64_t pe_small = (p <= 27 && e <= 5) ? ipow(p, e) : 0;  // for membership tests
  switch (space) {
    case Space::Full:
      if (pe_small == 2) return 1;
      if (p % 4 == 1) return 2;
      return 0;
    case Space::New:
      if (p % 4 == 3 && e == 1) return -2;
      if ((p % 4 == 3 && e == 2) || pe_small == 8) return 1;
      if ((p % 4 == 1 && e == 2) || pe_small == 2 || pe_small == 4) return -1;
      return 0;
    case Space::Min:
      if (p % 4 == 3) {
        // -2 * mu(p^(e-1)): -2 at e = 1, +2 at e = 2, 0 beyond.
        if (e == 1) return -2;
        if (e == 2) return 2;
        return 0;
      }
      if (pe_small == 2 || pe_small == 4) return -1;
      if (pe_small == 8) return 1;
      return 0;
  }
  bad_space();
}

int nu3_local(Space space, uint64_t p, uint32_t e) {
  uint64_t pe_small = (p <= 27 && e <= 5) ? ipow(p, e) : 0;
  switch (space) {
    case Space::Full:
      if (pe_small == 3) return 1;
      if (p % 3 == 1) return 2;
      return 0;
    case Space::New:
      if (p % 3 == 2 && e == 1) return -2;
      if ((p % 3 == 2 && e == 2) || pe_small == 27) return 1;
      if ((p % 3 == 1 && e == 2) || pe_small == 3 || pe_small == 9) return -1;
      return 0;
    case Space::Min:
      // Case order matters: p^e = 4 is carved out of the p = 2 branch and
      // lands on +1 below; p^e = 8 hits -2*mu(4) = 0.
      if (p % 3 == 2 && pe_small != 4) {
        if (e == 1) return -2;
        if (e == 2) return 2;
        return 0;
      }
      if (pe_small == 3 || pe_small == 9) return -1;
      if (pe_small == 4 || pe_small == 27) return 1;
      return 0;
  }
  bad_space();
}

int64_t local_factor_value(Space space, LocalFactor lf, uint64_t p,
                           uint32_t e) {
  switch (lf) {
    case LocalFactor::Psi:
      return static_cast<int64_t>(psi_local(space, p, e));
    case LocalFactor::NuInf:
      return static_cast<int64_t>(nu_inf_local(space, p, e));
    case LocalFactor::Nu2: return nu2_local(space, p, e);
    case LocalFactor::Nu3: return nu3_local(space, p, e);
  }
  throw std::invalid_argument("unknown local factor");
}

// ---------------------------------------------------------------------------
// Multiplicative extensions and assembly.
// ---------------------------------------------------------------------------

uint64_t psi(Space space, const Factorization& f) {
  return eval_multiplicative(
      f, [space](uint64_t p, uint32_t e) { return psi_local(space, p, e); });
}

uint64_t nu_inf(Space space, const Factorization& f) {
  return eval_multiplicative(f, [space](uint64_t p, uint32_t e) {
    return nu_inf_local(space, p, e);
  });
}

int64_t nu2(Space space, const Factorization& f) {
  return eval_multiplicative(f, [space](uint64_t p, uint32_t e) {
    return static_cast<int64_t>(nu2_local(space, p, e));
  });
}

int64_t nu3(Space space, const Factorization& f) {
  return eval_multiplicative(f, [space](uint64_t p, uint32_t e) {
    return static_cast<int64_t>(nu3_local(space, p, e));
  });
}

int64_t local_factor_value(Space space, LocalFactor lf,
                           const Factorization& f) {
  switch (lf) {
    case LocalFactor::Psi: return static_cast<int64_t>(psi(space, f));
    case LocalFactor::NuInf: return static_cast<int64_t>(nu_inf(space, f));
    case LocalFactor::Nu2: return nu2(space, f);
    case LocalFactor::Nu3: return nu3(space, f);
  }
  throw std::invalid_argument("unknown local factor");
}

DimensionParts dimension_parts(Space space, const Factorization& f) {
  DimensionParts parts;
  parts.psi = psi(space, f);
  parts.nu_inf = nu_inf(space, f);
  parts.nu2 = nu2(space, f);
  parts.nu3 = nu3(space, f);
  parts.mu_slot = space == Space::Full ? 1 : f.mobius();
  return parts;
}

int64_t dimension_from_parts(Space space, int k, uint64_t N,
                             const DimensionParts& parts) {
  validate_weight(k);
  i128 total12 = static_cast<i128>(k - 1) * parts.psi;
  total12 -= static_cast<i128>(6) * parts.nu_inf;
  total12 += static_cast<i128>(twelve_c2(k)) * parts.nu2;
  total12 += static_cast<i128>(twelve_c3(k)) * parts.nu3;
  total12 += static_cast<i128>(12) * delta_weight2(k) * parts.mu_slot;
  if (total12 % 12 != 0) {
    throw std::logic_error("dimension: weighted sum " + to_string(total12) +
                           " not divisible by 12 (space=" +
                           std::string(space_name(space)) +
                           " k=" + std::to_string(k) +
                           " N=" + std::to_string(N) + ")");
  }
  if (total12 < 0) {
    throw std::logic_error("dimension: negative value " + to_string(total12) +
                           "/12 (space=" + std::string(space_name(space)) +
                           " k=" + std::to_string(k) +
                           " N=" + std::to_string(N) + ")");
  }
  i128 dim = total12 / 12;
  if (dim > INT64_MAX) {
    throw std::overflow_error("dimension exceeds int64 range");
  }
  return static_cast<int64_t>(dim);
}

int64_t dimension(Space space, int k, const Factorization& f) {
  return dimension_from_parts(space, k, f.n(), dimension_parts(space, f));
}

int64_t dimension(Space space, int k, uint64_t N) {
  return dimension(space, k, factorize(N));
}

int64_t discrepancy12(Space space, int k, const Factorization& f) {
  int64_t dim = dimension(space, k, f);
  i128 d12 = static_cast<i128>(12) * dim -
             static_cast<i128>(k - 1) * psi(space, f);
  if (d12 > INT64_MAX || d12 < INT64_MIN) {
    throw std::overflow_error("discrepancy exceeds int64 range");
  }
  return static_cast<int64_t>(d12);
}

int64_t discrepancy12(Space space, int k, uint64_t N) {
  return discrepancy12(space, k, factorize(N));
}

}  // namespace cuspdim
