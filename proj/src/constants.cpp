#include "floorsum/constants.hpp"

#include "floorsum/errors.hpp"
#include "floorsum/parallel.hpp"
#include "floorsum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace floorsum {

namespace {

using u64 = std::uint64_t;

// Per-block enclosures of sum f(n)/(n(n+1)) and sum f(n)/n^2.
struct BlockSums {
  Enclosure main;
  Enclosure square;
};

// log, the product n(n+1) and the division each contribute at most one
// rounding; four ulps on each side covers them.
constexpr int kTermUlps = 4;

Enclosure term(double numerator, double denominator) {
  return Enclosure::around(numerator / denominator, kTermUlps);
}

std::vector<u64> higher_prime_powers(u64 limit) {
  std::vector<u64> powers;
  for (const u64 p : primes_up_to(static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 1)) {
    if (p > limit / p) continue;
    for (u64 q = p * p;; q *= p) {
      powers.push_back(q);
      if (q > limit / p) break;
    }
  }
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  return powers;
}

u64 prime_of_power(u64 q) {
  for (u64 p = 2; p * p <= q; ++p)
    if (q % p == 0) return p;
  return q;
}

// Lambda terms for prime powers n in [s, e), added in ascending n.
void lambda_block(u64 s, u64 e, const std::vector<u64>& powers, Enclosure& acc) {
  auto it = std::lower_bound(powers.begin(), powers.end(), s);
  auto add = [&](u64 n, u64 p) {
    const double nd = static_cast<double>(n);
    acc += term(std::log(static_cast<double>(p)), nd * (nd + 1.0));
  };
  for_each_prime(s, e, [&](u64 p) {
    for (; it != powers.end() && *it < p; ++it) add(*it, prime_of_power(*it));
    add(p, p);
  });
  for (; it != powers.end() && *it < e; ++it) add(*it, prime_of_power(*it));
}

void tau_block(ArithFunction fn, u64 s, u64 e, BlockSums& acc) {
  const ArithmeticTable table = sieve_table(fn, s, e, {.segment_size = e - s, .threads = 1,
                                                       .max_entries = e - s});
  for (u64 n = s; n < e; ++n) {
    const double v = static_cast<double>(table.at(n));
    const double nd = static_cast<double>(n);
    acc.main += term(v, nd * (nd + 1.0));
    acc.square += term(v, nd * nd);
  }
}

}  // namespace

double lambda_tail_bound(std::uint64_t n) {
  const double nd = static_cast<double>(n);
  const double first = Enclosure::up((std::log(nd) + 1.0) / nd, 4);
  const double second = Enclosure::up(std::log(nd + 1.0) / ((nd + 1.0) * (nd + 1.0)), 4);
  return Enclosure::up(first + second);
}

ZetaPower zeta2_power(int k) {
  const double base = std::numbers::pi * std::numbers::pi / 6.0;
  Enclosure z = Enclosure::around(base, 2);
  Enclosure acc{1.0, 1.0};
  for (int i = 0; i < k; ++i) acc = {Enclosure::down(acc.lo * z.lo), Enclosure::up(acc.hi * z.hi)};
  return {acc.lo, acc.hi};
}

ConstantBracket main_constant(ArithFunction fn, std::uint64_t terms, const ConstantOptions& options) {
  if (fn.kind == ArithKind::Mu) throw DomainError("main_constant: defined for lambda and tau_k only");
  if (fn.kind == ArithKind::TauK && fn.k < 2) throw DomainError("main_constant: tau_k requires k >= 2");
  if (terms < 10) throw DomainError("main_constant: need at least 10 terms");

  const u64 end = terms + 1;  // n in [1, end)
  const u64 block = options.order == SummationOrder::Ascending ? terms : std::max<u64>(options.block_size, 1);
  const u64 blocks = (terms + block - 1) / block;
  std::vector<BlockSums> partial(blocks);
  const std::vector<u64> powers = fn.kind == ArithKind::Lambda ? higher_prime_powers(terms) : std::vector<u64>{};

  parallel_for_chunks(blocks, options.threads, [&](std::size_t c) {
    const u64 s = 1 + c * block;
    const u64 e = std::min(end, s + block);
    if (fn.kind == ArithKind::Lambda) {
      lambda_block(s, e, powers, partial[c].main);
    } else {
      tau_block(fn, s, e, partial[c]);
    }
  });

  BlockSums total;
  for (const auto& p : partial) {
    total.main += p.main;
    total.square += p.square;
  }

  ConstantBracket bracket{fn, terms, total.main.lo, 0.0};
  if (fn.kind == ArithKind::Lambda) {
    bracket.hi = Enclosure::up(total.main.hi + lambda_tail_bound(terms));
  } else {
    const ZetaPower z = zeta2_power(fn.k);
    const double tail = Enclosure::up(std::max(0.0, z.hi - total.square.lo));
    bracket.hi = Enclosure::up(total.main.hi + tail);
  }
  return bracket;
}

}  // namespace floorsum
