#include "floorsum/vaughan.hpp"

#include "floorsum/arith_sieve.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/summation.hpp"

#include <algorithm>
#include <cmath>

namespace floorsum::vaughan {

namespace {

using u64 = std::uint64_t;

void require_range(u64 D) {
  if (D <= 100) throw DomainError("vaughan: D must exceed 100, got " + std::to_string(D));
}

double log_of(std::int64_t base) { return base > 1 ? std::log(static_cast<double>(base)) : 0.0; }

}  // namespace

void LogCombination::add(std::uint64_t prime, std::int64_t exponent) {
  if (exponent == 0) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), prime,
                             [](const auto& t, u64 p) { return t.first < p; });
  if (it != terms.end() && it->first == prime) {
    it->second += exponent;
    if (it->second == 0) terms.erase(it);
  } else {
    terms.insert(it, {prime, exponent});
  }
}

double LogCombination::value() const {
  CompensatedSum acc;
  for (const auto& [p, e] : terms) acc += static_cast<double>(e) * std::log(static_cast<double>(p));
  return acc.value();
}

std::uint64_t integer_cube_root(std::uint64_t n) {
  u64 r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<LogCombination> type2_coefficients(std::uint64_t U) {
  const u64 limit = U * U;
  std::vector<LogCombination> c(limit + 1);
  if (U < 2) return c;
  const ArithmeticTable mu = sieve_table(ArithFunction::mu(), 1, U + 1);
  const ArithmeticTable base = sieve_table(ArithFunction::lambda(), 1, U + 1);
  for (u64 a = 1; a <= U; ++a) {
    const std::int64_t m = mu.at(a);
    if (m == 0) continue;
    for (u64 b = 2; b <= U; ++b) {
      const std::int64_t p = base.at(b);
      if (p > 1) c[a * b].add(static_cast<u64>(p), m);
    }
  }
  return c;
}

std::vector<LogCombination> large_divisor_weights(std::uint64_t U, std::uint64_t k_max) {
  std::vector<LogCombination> w(k_max + 1);
  if (k_max <= U) return w;
  const ArithmeticTable base = sieve_table(ArithFunction::lambda(), 1, k_max + 1);
  for (u64 b = U + 1; b <= k_max; ++b) {
    const std::int64_t p = base.at(b);
    if (p <= 1) continue;
    for (u64 k = b; k <= k_max; k += b) w[k].add(static_cast<u64>(p), 1);
  }
  return w;
}

VaughanDecomposition decompose(std::uint64_t D, const TestFunction& g, std::optional<std::uint64_t> D1) {
  require_range(D);
  const u64 upper = D1.value_or(2 * D);
  if (upper <= D || upper > 2 * D) throw DomainError("vaughan: D1 must lie in (D, 2D]");

  VaughanDecomposition out;
  out.D = D;
  out.D1 = upper;
  out.U = integer_cube_root(D);
  const u64 U = out.U;

  // g and Lambda on (D, D1]
  std::vector<std::complex<double>> gv(upper - D);
  for (u64 d = D + 1; d <= upper; ++d) gv[d - D - 1] = g(d);
  auto gat = [&](u64 d) { return gv[d - D - 1]; };

  const ArithmeticTable lambda_range = sieve_table(ArithFunction::lambda(), D + 1, upper + 1);
  ComplexCompensatedSum direct;
  CompensatedSum mass;
  for (u64 d = D + 1; d <= upper; ++d) {
    const double l = log_of(lambda_range.at(d));
    if (l == 0.0) continue;
    direct += l * gat(d);
    mass += l * std::abs(gat(d));
  }
  out.direct = direct.value();
  out.direct_abs_mass = mass.value();

  const u64 m_max = upper / (U + 1);  // largest m in t3 (k > U)
  const ArithmeticTable mu = sieve_table(ArithFunction::mu(), 1, std::max(U, m_max) + 1);
  out.mu.assign(U + 1, 0);
  for (u64 m = 1; m <= U; ++m) out.mu[m] = mu.at(m);

  // t1: log k factored exactly, then materialized
  ComplexCompensatedSum t1;
  for (u64 m = 1; m <= U; ++m) {
    const std::int64_t mm = mu.at(m);
    if (mm == 0) continue;
    out.t1_max_m = m;
    for (u64 k = D / m + 1; k <= upper / m; ++k) {
      LogCombination lk;
      for (const auto& pp : factorize(k).factors) lk.add(pp.prime, pp.exponent);
      t1 += static_cast<double>(mm) * lk.value() * gat(m * k);
    }
  }
  out.t1 = t1.value();

  out.c = type2_coefficients(U);
  ComplexCompensatedSum t2;
  for (u64 m = 2; m < out.c.size(); ++m) {
    if (out.c[m].empty()) continue;
    const double cm = out.c[m].value();
    ComplexCompensatedSum inner;
    for (u64 k = D / m + 1; k <= upper / m; ++k) inner += gat(m * k);
    t2 += cm * inner.value();
  }
  out.t2 = t2.value();

  const u64 k_max = upper / (U + 1);
  const std::vector<LogCombination> w = large_divisor_weights(U, k_max);
  std::vector<double> wv(w.size());
  for (u64 k = 0; k < w.size(); ++k) wv[k] = w[k].value();
  ComplexCompensatedSum t3;
  for (u64 m = U + 1; m <= m_max; ++m) {
    const std::int64_t mm = mu.at(m);
    if (mm == 0) continue;
    const u64 k_lo = std::max(U + 1, D / m + 1);
    const u64 k_hi = upper / m;
    for (u64 k = k_lo; k <= k_hi; ++k) {
      if (wv[k] == 0.0) continue;
      if (out.t3_pairs == 0 || m < out.t3_min_m) out.t3_min_m = m;
      if (out.t3_pairs == 0 || k < out.t3_min_k) out.t3_min_k = k;
      ++out.t3_pairs;
      t3 += static_cast<double>(mm) * wv[k] * gat(m * k);
    }
  }
  out.t3 = t3.value();

  out.abs_err = std::abs(out.recombined() - out.direct);
  out.rel_err = out.direct_abs_mass > 0 ? out.abs_err / out.direct_abs_mass : out.abs_err;
  return out;
}

CoefficientBoundsReport coefficient_bounds_report(std::uint64_t D) {
  require_range(D);
  CoefficientBoundsReport r;
  r.D = D;
  r.U = integer_cube_root(D);
  const auto c = type2_coefficients(r.U);
  for (u64 m = 2; m < c.size(); ++m) {
    const double ratio = std::abs(c[m].value()) / std::log(static_cast<double>(m));
    ++r.c_checked;
    if (ratio > r.max_c_ratio) {
      r.max_c_ratio = ratio;
      r.argmax_c = m;
    }
  }
  const u64 k_max = 2 * D / (r.U + 1);
  const auto w = large_divisor_weights(r.U, k_max);
  for (u64 k = r.U + 1; k < w.size(); ++k) {
    const double ratio = w[k].value() / std::log(static_cast<double>(k));
    ++r.w_checked;
    if (ratio > r.max_w_ratio) {
      r.max_w_ratio = ratio;
      r.argmax_w = k;
    }
  }
  return r;
}

}  // namespace floorsum::vaughan
