#include "cuspdim/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cuspdim/certificate.hpp"
#include "cuspdim/envelope.hpp"
#include "cuspdim/scan.hpp"
#include "cuspdim/util.hpp"

namespace cuspdim {

RhoValue rho_reference(double x, const FordConstants& fc) {
  if (!(x >= 16.0)) {
    throw std::domain_error("rho_reference: x must be >= 16");
  }
  if (!fc.d.has_value()) {
    throw std::invalid_argument(
        "rho_reference: the linear constant d must be configured");
  }
  const double c = fc.c;
  const double d = *fc.d;
  const double lx = std::log(x);
  const double ll = std::log(lx);    // > 1 for x >= 16
  const double lll = std::log(ll);   // > 0 for x >= 16
  const double llll = std::log(lll);

  RhoValue rv;
  rv.x = x;
  rv.shape_only = llll <= 0.0;
  double exponent = c * std::pow(std::log(ll / lll), 2) + d * lll;
  if (!rv.shape_only) {
    exponent += (d + 0.5 - 2.0 * c) * llll;
  }
  rv.value = std::exp(exponent) / lx;
  return rv;
}

PsiCountReport v_psi_exact(Space space, double x, uint64_t max_bound) {
  PsiCountReport report;
  report.space = space;
  report.x = x;
  if (!(x >= 0.0)) {
    throw std::domain_error("v_psi_exact: x must be >= 0");
  }
  const PsiFloorBound floor_bound = certify_psi_floor(space, x, max_bound);
  report.scan_bound = floor_bound.bound;
  if (report.scan_bound == 0) {
    return report;  // no level has psi* <= x
  }
  std::set<uint64_t> values;
  scan_levels(space, 1, report.scan_bound, [&](const LevelData& ld) {
    if (static_cast<long double>(ld.parts.psi) <= static_cast<long double>(x)) {
      values.insert(ld.parts.psi);
    }
  });
  report.count = values.size();
  return report;
}

NuBoundsReport verify_nu_bounds(uint64_t limit) {
  if (limit < 1) {
    throw std::invalid_argument("verify_nu_bounds: limit must be >= 1");
  }
  NuBoundsReport report;
  report.limit = limit;
  report.ok = true;
  for (Space space : {Space::Full, Space::New, Space::Min}) {
    scan_levels(space, 1, limit, [&](const LevelData& ld) {
      ++report.levels_checked;
      if (!report.ok) return;
      const u128 lhs_cusp =
          static_cast<u128>(ld.parts.nu_inf) * ld.parts.nu_inf * ld.n;
      const u128 rhs_cusp = static_cast<u128>(ld.parts.psi) * ld.parts.psi;
      if (lhs_cusp > rhs_cusp) {
        report.ok = false;
        report.first_violation = ld.n;
        report.detail = "nu_inf^2 * N > psi^2 for space " +
                        std::string(space_name(space)) + " at N = " +
                        std::to_string(ld.n);
        return;
      }
      const int64_t lhs_ell =
          3 * std::abs(ld.parts.nu2) + 4 * std::abs(ld.parts.nu3);
      const int64_t rhs_ell = int64_t{7} << ld.omega;
      if (lhs_ell > rhs_ell) {
        report.ok = false;
        report.first_violation = ld.n;
        report.detail = "3|nu2| + 4|nu3| > 7*2^omega for space " +
                        std::string(space_name(space)) + " at N = " +
                        std::to_string(ld.n);
      }
    });
  }
  return report;
}

namespace {

/*
 * Rigorous upper bound on sum_{squarefull n > C} 1/n via n = a^2 * b^3:
 *   fixed b <= C^(1/3): the terms need a > sqrt(C/b^3), and
 *       sum_{a > A} 1/a^2 < 1/A  gives  1/(b^3 * A),  A = floor(sqrt(C/b^3));
 *   b > C^(1/3): all a count, sum_a 1/a^2 < zeta(2), and
 *       sum_{b > B} 1/b^3 < 1/(2B^2)  gives  zeta(2)/(2B^2).
 * Dropping the squarefree restriction on b only enlarges the total.
 */
double squarefull_harmonic_remainder(double cutoff) {
  const double kZeta2 = 1.6449340668482264;
  const auto b_max = static_cast<uint64_t>(std::cbrt(cutoff));
  double total = 0.0;
  for (uint64_t b = 1; b <= b_max; ++b) {
    const double b3 = static_cast<double>(b) * b * b;
    const double a_floor = std::floor(std::sqrt(cutoff / b3));
    const double a = std::max(1.0, a_floor);
    total += 1.0 / (b3 * a);
  }
  const double big_b = std::max<double>(1.0, static_cast<double>(b_max));
  total += kZeta2 / (2.0 * big_b * big_b);
  return envelope::inflate(total);
}

}  // namespace

EtaReport verify_eta_bounds(const std::vector<double>& grid,
                            double cutoff_factor) {
  if (grid.empty()) {
    throw std::invalid_argument("verify_eta_bounds: empty grid");
  }
  if (!(cutoff_factor >= 16.0)) {
    throw std::invalid_argument(
        "verify_eta_bounds: cutoff factor must be >= 16");
  }
  EtaReport report;
  report.eta = envelope::eta_value();
  report.all_ok = true;

  double max_x = 0.0;
  for (double x : grid) {
    if (!(x >= 1.0)) {
      throw std::invalid_argument("verify_eta_bounds: grid points must be >= 1");
    }
    max_x = std::max(max_x, x);
  }
  const double cutoff = max_x * cutoff_factor;
  if (cutoff > 9e18) {
    throw std::invalid_argument("verify_eta_bounds: cutoff exceeds 64-bit range");
  }
  const std::vector<uint64_t> sf = enumerate_squarefull(
      static_cast<uint64_t>(cutoff));

  for (double x : grid) {
    EtaRow row;
    row.x = x;
    const double row_cutoff = x * cutoff_factor;
    // Exact count below x.
    for (uint64_t n : sf) {
      if (static_cast<double>(n) <= x) ++row.squarefull_count;
    }
    row.count_bound = envelope::deflate(report.eta * std::sqrt(x));
    // Exact tail over (x, row_cutoff], summed smallest-terms-last for
    // accuracy (ascending n means descending 1/n, so accumulate in reverse).
    double tail = 0.0;
    for (auto it = sf.rbegin(); it != sf.rend(); ++it) {
      const double n = static_cast<double>(*it);
      if (n > row_cutoff || n <= x) continue;
      tail += 1.0 / n;
    }
    row.tail_upper = envelope::inflate(tail) +
                     squarefull_harmonic_remainder(row_cutoff);
    row.tail_bound = envelope::deflate(2.0 * report.eta / std::sqrt(x));
    row.ok = static_cast<double>(row.squarefull_count) <= row.count_bound &&
             row.tail_upper <= row.tail_bound;
    report.all_ok = report.all_ok && row.ok;
    report.rows.push_back(row);
  }
  return report;
}

SquarefullTailReport squarefull_reciprocal_tail(Space space, double x,
                                                double cutoff) {
  if (!(x >= 16.0)) {
    throw std::domain_error("squarefull_reciprocal_tail: x must be >= 16");
  }
  if (!(cutoff >= 16.0 * x)) {
    throw std::invalid_argument(
        "squarefull_reciprocal_tail: cutoff must be >= 16*x");
  }
  if (cutoff > 9e18) {
    throw std::invalid_argument(
        "squarefull_reciprocal_tail: cutoff exceeds 64-bit range");
  }
  SquarefullTailReport report;
  report.space = space;
  report.x = x;
  report.cutoff = cutoff;

  std::vector<double> terms;
  for_each_squarefull(static_cast<uint64_t>(cutoff),
                      [&](const Factorization& f) {
                        const double n = static_cast<double>(f.n());
                        if (n <= x) return;
                        terms.push_back(
                            1.0 / static_cast<double>(psi(space, f)));
                      });
  std::sort(terms.begin(), terms.end(), std::greater<double>());
  report.terms = terms.size();
  // Kahan summation keeps the enumerated part reproducible to the last bit
  // regardless of how many terms the cutoff admits.
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  report.sum = sum;
  report.truncation = envelope::squarefull_inv_fmin_tail_bound(cutoff);
  report.normalized =
      (envelope::inflate(sum) + report.truncation) * std::sqrt(x) / std::log(x);
  return report;
}

DensityTrend density_trend(const ValueSpectrum& vs,
                           const std::vector<double>& grid,
                           const std::optional<FordConstants>& ford) {
  if (grid.empty()) {
    throw std::invalid_argument("density_trend: empty grid");
  }
  DensityTrend trend;
  trend.space = vs.space;
  trend.k = vs.k;
  trend.strictly_decreasing = true;
  double prev_x = 0.0;
  double prev_ratio = 0.0;
  bool first = true;
  for (double x : grid) {
    if (!(x > 0.0) || (!first && x <= prev_x)) {
      throw std::invalid_argument(
          "density_trend: grid must be positive and strictly increasing");
    }
    DensityRow row;
    row.x = x;
    row.distinct = count_distinct(vs, x);
    row.ratio = static_cast<double>(row.distinct) /
                (static_cast<double>(vs.k - 1) * x / 12.0);
    if (ford.has_value()) {
      const RhoValue rv = rho_reference(x, *ford);
      row.rho_ratio = static_cast<double>(row.distinct) / (x * rv.value);
      row.rho_shape_only = rv.shape_only;
    }
    if (!first && !(row.ratio < prev_ratio)) {
      trend.strictly_decreasing = false;
    }
    prev_ratio = row.ratio;
    prev_x = x;
    first = false;
    trend.rows.push_back(row);
  }
  return trend;
}

}  // namespace cuspdim
