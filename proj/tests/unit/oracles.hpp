#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

// Trial division; returns the prime p when n = p^a, else 0.
inline u64 prime_base(u64 n) {
  if (n < 2) return 0;
  u64 p = 0;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return n;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

inline double von_mangoldt(u64 n) {
  const u64 p = prime_base(n);
  return p ? std::log(static_cast<double>(p)) : 0.0;
}

inline int mobius(u64 n) {
  int sign = 1;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

// tau_k by recursion over divisors: tau_k(n) = sum_{d | n} tau_{k-1}(d).
inline std::int64_t tau(int k, u64 n) {
  if (k == 1) return 1;
  std::int64_t s = 0;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += tau(k - 1, d);
    if (d * d != n) s += tau(k - 1, n / d);
  }
  return s;
}

// Naive S_f(x) with n running over every integer.
inline std::int64_t floor_sum_tau(int k, u64 x) {
  std::int64_t s = 0;
  for (u64 n = 1; n <= x; ++n) s += tau(k, x / n);
  return s;
}

inline double floor_sum_lambda(u64 x) {
  long double s = 0;
  for (u64 n = 1; n <= x; ++n) s += von_mangoldt(x / n);
  return static_cast<double>(s);
}

}  // namespace oracle
