#pragma once

#include "floorsum/arith_sieve.hpp"
#include "floorsum/constants.hpp"
#include "floorsum/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace floorsum {

// Maximal n-interval on which floor(x/n) takes the value q.
struct QuotientBlock {
  std::uint64_t q;
  std::uint64_t n_lo;
  std::uint64_t n_hi;  // inclusive

  std::uint64_t length() const { return n_hi - n_lo + 1; }
};

struct BlockDecomposition {
  std::uint64_t x = 1;
  std::vector<QuotientBlock> blocks;  // n ascending, q strictly decreasing
};

BlockDecomposition distinct_quotients(std::uint64_t x);

// Value of a floor-quotient sum. tau_k sums are exact integers; Lambda sums
// are reals, carrying the exact multiset of prime bases when the evaluation
// path produced one.
struct FloorSumValue {
  ArithFunction fn;
  unsigned __int128 exact = 0;
  double real = 0.0;
  std::map<std::uint64_t, std::uint64_t> prime_multiplicity;  // Lambda only

  double as_double() const { return fn.is_exact() ? static_cast<double>(exact) : real; }
  std::string to_string() const;
};

std::string u128_to_string(unsigned __int128 v);

struct EvalOptions {
  unsigned threads = 1;
  std::uint64_t max_terms = std::uint64_t{1} << 28;  // direct-loop / table budget
};

// Literal loop over n <= x. Lambda terms go through compensated summation in
// fixed-size n-chunks reduced in chunk order.
FloorSumValue sum_direct(ArithFunction fn, std::uint64_t x, const EvalOptions& options = {});
// Same, reading f([x/n]) from a table that covers [1, x].
FloorSumValue sum_direct(const ArithmeticTable& table, std::uint64_t x, const EvalOptions& options = {});

// Sum over distinct quotients: f(q) * block length, f(q) pointwise.
FloorSumValue sum_blocked(ArithFunction fn, std::uint64_t x, const EvalOptions& options = {});

// Sawtooth t - floor(t) - 1/2; -1/2 at integers.
double psi(double t);
Rational psi(const Rational& t);

// Split S_f(x) = s1 + s2 at threshold N: s1 over n <= N, s2 over N < n <= x
// regrouped by d = [x/n]. The tail is reported both as an integer count form
// and as the expansion x/d - x/(d+1) - psi(x/d) + psi(x/(d+1)).
struct SplitSum {
  ArithFunction fn;
  std::uint64_t x = 0;
  std::uint64_t threshold = 0;
  FloorSumValue s1;
  FloorSumValue s2;
  FloorSumValue total;
  std::uint64_t d_max = 0;       // largest d with a tail n; 0 if the tail is empty
  bool straddles = false;        // the n-interval of d_max crosses the threshold
  double main_part = 0.0;        // sum f(d) (x/d - x/(d+1)) over d <= d_max
  double psi_part = 0.0;         // sum f(d) (psi(x/(d+1)) - psi(x/d))
  double boundary_correction = 0.0;  // -f(d_max) (N - floor(x/(d_max+1))) when straddling
  std::uint64_t identity_mismatches = 0;  // d where count form != psi form, exactly
};

SplitSum sum_dual(ArithFunction fn, std::uint64_t x, std::uint64_t threshold,
                  const EvalOptions& options = {});

struct ErrorPoint {
  std::uint64_t x;
  double s;     // S_f(x)
  double e;     // S_f(x) - mid(C) x
  double e_lo;  // S_f(x) - C_hi x
  double e_hi;  // S_f(x) - C_lo x

  double worst_abs() const;
};

struct ErrorSeries {
  ArithFunction fn;
  ConstantBracket constant;
  std::vector<ErrorPoint> points;
};

// Tabulates E(x) = S_f(x) - C_f x by blocked evaluation. Throws DomainError
// when the constant's bracket width times max(xs) exceeds `resolution`.
ErrorSeries error_series(ArithFunction fn, const ConstantBracket& constant,
                         std::span<const std::uint64_t> xs, double resolution = 100.0,
                         const EvalOptions& options = {});

// start, start*ratio, ... while <= limit (rounded to integers, deduplicated).
std::vector<std::uint64_t> geometric_grid(std::uint64_t start, std::uint64_t limit, double ratio = 2.0);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual in log space
  std::size_t used = 0;
  std::size_t excluded = 0;  // points with |E| < 1
};

// Least squares through (log x, log |E(x)|).
ExponentFit fit_exponent(std::span<const double> xs, std::span<const double> errors);
ExponentFit fit_exponent(const ErrorSeries& series);

}  // namespace floorsum
