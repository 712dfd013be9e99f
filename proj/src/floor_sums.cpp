#include "floorsum/floor_sums.hpp"

#include "floorsum/errors.hpp"
#include "floorsum/parallel.hpp"
#include "floorsum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace floorsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr u64 kDirectChunk = u64{1} << 16;
constexpr std::size_t kBlockChunk = 256;
constexpr u64 kPointwiseLimit = u64{1} << 16;

void require_x(u64 x) {
  if (x == 0) throw DomainError("x must be >= 1");
}

void require_sum_function(ArithFunction fn) {
  if (fn.kind == ArithKind::Mu) throw DomainError("floor sums are defined for lambda and tau_k");
  if (fn.kind == ArithKind::TauK && fn.k < 2) throw DomainError("tau_k requires k >= 2");
}

double log_prime_sum(const std::map<u64, u64>& multiplicity) {
  CompensatedSum acc;
  for (const auto& [p, count] : multiplicity) acc += static_cast<double>(count) * std::log(static_cast<double>(p));
  return acc.value();
}

// Adds `count` copies of f-value v into `value`.
void accumulate(FloorSumValue& value, std::int64_t v, u64 count) {
  if (value.fn.kind == ArithKind::Lambda) {
    if (v > 1) value.prime_multiplicity[static_cast<u64>(v)] += count;
  } else {
    value.exact += static_cast<u128>(v) * count;
  }
}

void merge_into(FloorSumValue& into, const FloorSumValue& from) {
  into.exact += from.exact;
  for (const auto& [p, c] : from.prime_multiplicity) into.prime_multiplicity[p] += c;
}

void finish(FloorSumValue& value) {
  if (value.fn.kind == ArithKind::Lambda) value.real = log_prime_sum(value.prime_multiplicity);
}

}  // namespace

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string FloorSumValue::to_string() const {
  if (fn.is_exact()) return u128_to_string(exact);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", real);
  return buf;
}

BlockDecomposition distinct_quotients(std::uint64_t x) {
  require_x(x);
  BlockDecomposition d{x, {}};
  d.blocks.reserve(static_cast<std::size_t>(2 * std::sqrt(static_cast<double>(x)) + 2));
  for (u64 n = 1; n <= x;) {
    const u64 q = x / n;
    const u64 last = x / q;
    d.blocks.push_back({q, n, last});
    n = last + 1;
  }
  return d;
}

FloorSumValue sum_direct(const ArithmeticTable& table, std::uint64_t x, const EvalOptions& options) {
  require_x(x);
  require_sum_function(table.fn);
  if (table.lo != 1 || table.hi <= x) throw DomainError("sum_direct: table must cover [1, x]");
  if (x > options.max_terms) {
    throw BudgetExceeded("sum_direct: x = " + std::to_string(x) + " exceeds term budget");
  }
  const u64 chunks = (x + kDirectChunk - 1) / kDirectChunk;
  std::vector<CompensatedSum> real_parts(chunks);
  std::vector<u128> exact_parts(chunks, 0);
  const bool lambda = table.fn.kind == ArithKind::Lambda;

  parallel_for_chunks(chunks, options.threads, [&](std::size_t c) {
    const u64 first = 1 + c * kDirectChunk;
    const u64 last = std::min(x, first + kDirectChunk - 1);
    if (lambda) {
      CompensatedSum acc;
      for (u64 n = first; n <= last; ++n) {
        const std::int64_t b = table.at(x / n);
        if (b > 1) acc += std::log(static_cast<double>(b));
      }
      real_parts[c] = acc;
    } else {
      u128 acc = 0;
      for (u64 n = first; n <= last; ++n) acc += static_cast<u128>(table.at(x / n));
      exact_parts[c] = acc;
    }
  });

  FloorSumValue value{table.fn};
  CompensatedSum total;
  for (u64 c = 0; c < chunks; ++c) {
    total += real_parts[c];
    value.exact += exact_parts[c];
  }
  if (lambda) value.real = total.value();
  return value;
}

FloorSumValue sum_direct(ArithFunction fn, std::uint64_t x, const EvalOptions& options) {
  require_x(x);
  require_sum_function(fn);
  if (x > options.max_terms) {
    throw BudgetExceeded("sum_direct: x = " + std::to_string(x) + " exceeds term budget");
  }
  const ArithmeticTable table =
      sieve_table(fn, 1, x + 1, {.threads = options.threads, .max_entries = options.max_terms + 1});
  return sum_direct(table, x, options);
}

FloorSumValue sum_blocked(ArithFunction fn, std::uint64_t x, const EvalOptions& options) {
  require_x(x);
  require_sum_function(fn);
  const BlockDecomposition d = distinct_quotients(x);
  const std::size_t chunks = (d.blocks.size() + kBlockChunk - 1) / kBlockChunk;
  std::vector<FloorSumValue> parts(chunks, FloorSumValue{fn});

  parallel_for_chunks(chunks, options.threads, [&](std::size_t c) {
    const std::size_t first = c * kBlockChunk;
    const std::size_t last = std::min(d.blocks.size(), first + kBlockChunk);
    for (std::size_t i = first; i < last; ++i) {
      const QuotientBlock& b = d.blocks[i];
      accumulate(parts[c], point_value(fn, b.q), b.length());
    }
  });

  FloorSumValue value{fn};
  for (const auto& p : parts) merge_into(value, p);
  finish(value);
  return value;
}

double psi(double t) { return t - std::floor(t) - 0.5; }

Rational psi(const Rational& t) {
  const BigInt& num = numerator(t);
  const BigInt& den = denominator(t);
  BigInt fl = num / den;  // truncates toward zero
  if (num < 0 && fl * den != num) fl -= 1;
  return t - Rational(fl) - Rational(1, 2);
}

SplitSum sum_dual(ArithFunction fn, std::uint64_t x, std::uint64_t threshold, const EvalOptions& options) {
  require_x(x);
  require_sum_function(fn);
  if (threshold == 0 || threshold > x) {
    throw DomainError("sum_dual: threshold N must satisfy 1 <= N <= x");
  }
  const u64 N = threshold;
  SplitSum out;
  out.fn = fn;
  out.x = x;
  out.threshold = N;
  out.s1 = FloorSumValue{fn};
  out.s2 = FloorSumValue{fn};

  // s1: n <= N, values [x/n] in [x/N, x]
  if (N <= kPointwiseLimit) {
    for (u64 n = 1; n <= N; ++n) accumulate(out.s1, point_value(fn, x / n), 1);
  } else {
    const u64 lo = x / N;
    if (x + 1 - lo > options.max_terms) throw BudgetExceeded("sum_dual: head table exceeds budget");
    const ArithmeticTable head =
        sieve_table(fn, lo, x + 1, {.threads = options.threads, .max_entries = options.max_terms});
    for (u64 n = 1; n <= N; ++n) accumulate(out.s1, head.at(x / n), 1);
  }

  // s2: n in (N, x] grouped by d = [x/n] in [1, x/(N+1)]
  out.d_max = N == x ? 0 : x / (N + 1);
  if (out.d_max > 0) {
    if (out.d_max > options.max_terms) throw BudgetExceeded("sum_dual: tail exceeds budget");
    const ArithmeticTable tail = sieve_table(fn, 1, out.d_max + 1, {.threads = options.threads,
                                                                   .max_entries = options.max_terms});
    const double xd = static_cast<double>(x);
    CompensatedSum main_part;
    CompensatedSum psi_part;
    for (u64 d = 1; d <= out.d_max; ++d) {
      const std::int64_t v = tail.at(d);
      const u64 n_hi = x / d;
      const u64 n_lo_full = x / (d + 1);
      const u64 full = n_hi - n_lo_full;
      const u64 count = n_hi - std::max(n_lo_full, N);
      accumulate(out.s2, v, count);

      // [x/d] - [x/(d+1)] = x/d - x/(d+1) - psi(x/d) + psi(x/(d+1)), checked
      // exactly after scaling by d(d+1); psi(x/d) = (x mod d)/d - 1/2.
      const i128 dd = static_cast<i128>(d) * (d + 1);
      const i128 half = dd / 2;
      const i128 psi_d_scaled = static_cast<i128>(x % d) * (d + 1) - half;
      const i128 psi_d1_scaled = static_cast<i128>(x % (d + 1)) * d - half;
      const i128 rhs = static_cast<i128>(x) * (d + 1) - static_cast<i128>(x) * d - psi_d_scaled + psi_d1_scaled;
      if (rhs != static_cast<i128>(full) * dd) ++out.identity_mismatches;

      const double f = fn.kind == ArithKind::Lambda ? (v > 1 ? std::log(static_cast<double>(v)) : 0.0)
                                                    : static_cast<double>(v);
      if (f == 0.0) continue;
      const double dv = static_cast<double>(d);
      main_part += f * (xd / (dv * (dv + 1.0)));
      const double psi_d = static_cast<double>(x % d) / dv - 0.5;
      const double psi_d1 = static_cast<double>(x % (d + 1)) / (dv + 1.0) - 0.5;
      psi_part += f * (psi_d1 - psi_d);
      if (d == out.d_max && n_lo_full < N) {
        out.straddles = true;
        out.boundary_correction = -f * static_cast<double>(N - n_lo_full);
      }
    }
    if (!out.straddles && x / (out.d_max + 1) < N) out.straddles = true;
    out.main_part = main_part.value();
    out.psi_part = psi_part.value();
  }

  out.total = out.s1;
  merge_into(out.total, out.s2);
  finish(out.s1);
  finish(out.s2);
  finish(out.total);
  return out;
}

double ErrorPoint::worst_abs() const { return std::max(std::abs(e_lo), std::abs(e_hi)); }

ErrorSeries error_series(ArithFunction fn, const ConstantBracket& constant,
                         std::span<const std::uint64_t> xs, double resolution, const EvalOptions& options) {
  if (!(constant.fn == fn)) throw DomainError("error_series: constant belongs to " + constant.fn.name());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] <= xs[i - 1]) throw DomainError("error_series: xs must be strictly increasing");
  }
  ErrorSeries series{fn, constant, {}};
  if (xs.empty()) return series;
  const double uncertainty = constant.width() * static_cast<double>(xs.back());
  if (uncertainty > resolution) {
    throw DomainError("error_series: constant bracket width " + std::to_string(constant.width()) +
                      " gives uncertainty " + std::to_string(uncertainty) + " at x = " +
                      std::to_string(xs.back()) + ", above resolution " + std::to_string(resolution));
  }
  for (const u64 x : xs) {
    const double s = sum_blocked(fn, x, options).as_double();
    const double xd = static_cast<double>(x);
    series.points.push_back({x, s, s - constant.mid() * xd, s - constant.hi * xd, s - constant.lo * xd});
  }
  return series;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t start, std::uint64_t limit, double ratio) {
  if (start == 0 || ratio <= 1.0) throw DomainError("geometric_grid: need start >= 1 and ratio > 1");
  std::vector<u64> grid;
  for (double v = static_cast<double>(start); v <= static_cast<double>(limit) * (1 + 1e-12); v *= ratio) {
    const u64 x = std::min(limit, static_cast<u64>(std::llround(v)));
    if (grid.empty() || grid.back() < x) grid.push_back(x);
  }
  return grid;
}

ExponentFit fit_exponent(std::span<const double> xs, std::span<const double> errors) {
  if (xs.size() != errors.size()) throw DomainError("fit_exponent: size mismatch");
  ExponentFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(errors[i]) < 1.0) {
      ++fit.excluded;
      continue;
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(std::abs(errors[i])));
  }
  fit.used = lx.size();
  if (fit.used < 3) {
    throw DomainError("fit_exponent: need at least 3 points with |E| >= 1, have " + std::to_string(fit.used));
  }
  const double n = static_cast<double>(fit.used);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_exponent: all x values coincide");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

ExponentFit fit_exponent(const ErrorSeries& series) {
  std::vector<double> xs, es;
  for (const auto& p : series.points) {
    xs.push_back(static_cast<double>(p.x));
    es.push_back(p.e);
  }
  return fit_exponent(xs, es);
}

}  // namespace floorsum
