#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace floorsum::vaughan {

// sum_i e_i log p_i with integer e_i: an exact log-linear combination.
struct LogCombination {
  std::vector<std::pair<std::uint64_t, std::int64_t>> terms;  // (prime, exponent), primes ascending

  void add(std::uint64_t prime, std::int64_t exponent);
  double value() const;
  bool empty() const { return terms.empty(); }
};

using TestFunction = std::function<std::complex<double>(std::uint64_t)>;

// Concrete type I / type II decomposition of sum_{D < d <= D1} Lambda(d) g(d)
// with U = floor(D^{1/3}):
//   t1 = sum_{m<=U} mu(m) sum_{D<mk<=D1} log(k) g(mk)
//   t2 = sum_{m<=U^2} c(m) sum_{D<mk<=D1} g(mk),   c = (mu 1_{<=U}) * (Lambda 1_{<=U})
//   t3 = sum_{D<mk<=D1, m>U, k>U} mu(m) w(k) g(mk), w(k) = sum_{b|k, b>U} Lambda(b)
// and t1 - t2 + t3 equals the direct sum.
struct VaughanDecomposition {
  std::uint64_t D = 0;
  std::uint64_t D1 = 0;
  std::uint64_t U = 0;
  std::complex<double> t1;
  std::complex<double> t2;
  std::complex<double> t3;
  std::complex<double> direct;
  double abs_err = 0.0;
  double rel_err = 0.0;  // abs_err / sum |Lambda(d) g(d)|
  double direct_abs_mass = 0.0;

  std::vector<std::int64_t> mu;          // index m in [0, U], mu[0] unused
  std::vector<LogCombination> c;         // index m in [0, U^2]
  std::uint64_t t1_max_m = 0;            // largest m used in t1
  std::uint64_t t3_min_m = 0;            // smallest m used in t3 (0 if none)
  std::uint64_t t3_min_k = 0;            // smallest k used in t3 (0 if none)
  std::uint64_t t3_pairs = 0;

  std::complex<double> recombined() const { return t1 - t2 + t3; }
};

std::uint64_t integer_cube_root(std::uint64_t n);

// Requires D > 100; D1 defaults to 2D and must lie in (D, 2D].
VaughanDecomposition decompose(std::uint64_t D, const TestFunction& g,
                               std::optional<std::uint64_t> D1 = std::nullopt);

// Coefficient tables alone, for inspection.
std::vector<LogCombination> type2_coefficients(std::uint64_t U);
std::vector<LogCombination> large_divisor_weights(std::uint64_t U, std::uint64_t k_max);

struct CoefficientBoundsReport {
  std::uint64_t D = 0;
  std::uint64_t U = 0;
  double max_c_ratio = 0.0;  // max_{2<=m<=U^2} |c(m)| / log m
  std::uint64_t argmax_c = 0;
  double max_w_ratio = 0.0;  // max_{k} w(k) / log k over the t3 k-range
  std::uint64_t argmax_w = 0;
  std::uint64_t c_checked = 0;
  std::uint64_t w_checked = 0;
};

CoefficientBoundsReport coefficient_bounds_report(std::uint64_t D);

}  // namespace floorsum::vaughan
