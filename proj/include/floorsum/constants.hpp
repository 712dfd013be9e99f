#pragma once

#include "floorsum/arith_sieve.hpp"

#include <cstdint>

namespace floorsum {

// Certified enclosure [lo, hi] of C_f = sum_{n>=1} f(n) / (n (n + 1)).
struct ConstantBracket {
  ArithFunction fn;
  std::uint64_t terms_used = 0;
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class SummationOrder {
  Ascending,  // one running enclosure in increasing n
  Blockwise,  // per-block enclosures reduced in block order
};

struct ConstantOptions {
  SummationOrder order = SummationOrder::Blockwise;
  std::uint64_t block_size = std::uint64_t{1} << 20;
  unsigned threads = 1;
};

// Partial sum over n <= terms plus a certified tail bound:
//   Lambda: sum_{n>N} log n / n^2 <= (log N + 1)/N + log(N+1)/(N+1)^2
//   tau_k:  sum_{n>N} tau_k(n)/n^2 = zeta(2)^k - sum_{n<=N} tau_k(n)/n^2
// with outward rounding throughout. Requires terms >= 10.
ConstantBracket main_constant(ArithFunction fn, std::uint64_t terms,
                              const ConstantOptions& options = {});

// Upper bound for the Lambda tail beyond N, rounded up.
double lambda_tail_bound(std::uint64_t n);

// Enclosure of zeta(2)^k = (pi^2/6)^k.
struct ZetaPower {
  double lo;
  double hi;
};
ZetaPower zeta2_power(int k);

}  // namespace floorsum
