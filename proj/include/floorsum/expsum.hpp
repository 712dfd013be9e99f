#pragma once

#include "floorsum/exppair.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace floorsum::expsum {

enum class Shape { Monomial1D, BilinearII, TripleHMN };
enum class Coefficients { Unit, Mu, Lambda, RandomUnimodular };

std::string shape_name(Shape s);
std::string coefficients_name(Coefficients c);
Shape parse_shape(const std::string& s);
Coefficients parse_coefficients(const std::string& s);

// Dyadic ranges (lo, 2 lo]. Phases:
//   Monomial1D: sum_{n ~ N}        a_n e(h x / (n + delta))
//   BilinearII: sum_{m ~ M, n ~ N} a_m b_n e(h x / (m n))
//   TripleHMN:  sum_{h ~ H, m ~ M, n ~ N} a_{h,n} b_m e(X (h/H)^beta (m/M)^alpha (n/N)^gamma)
// Lambda weights are the raw values log p (not scaled into the unit disc).
struct Scenario {
  Shape shape = Shape::Monomial1D;
  std::uint64_t H = 1;
  std::uint64_t M = 1;
  std::uint64_t N = 1;
  std::uint64_t x = 0;
  std::uint64_t h = 1;
  unsigned delta = 0;  // 0 or 1
  double X = 0.0;      // TripleHMN phase size
  double alpha = -1.0;
  double beta = 1.0;
  double gamma = -1.0;
  Coefficients coefficients = Coefficients::Unit;
  std::uint64_t seed = 0;

  std::uint64_t term_count() const;
};

struct SumOptions {
  unsigned threads = 1;
  std::uint64_t chunk = 1u << 12;  // outer-index chunk; fixes the reduction tree
  std::uint64_t max_terms = 1'000'000'000;
};

struct ExpSumResult {
  std::complex<double> value;
  double modulus = 0.0;
  double coefficient_mass = 0.0;  // sum of |coefficient products|: the trivial bound
  std::uint64_t terms = 0;
};

// Ascending-index summation with compensated accumulation.
ExpSumResult compute_expsum(const Scenario& s, const SumOptions& options = {});

// Coefficient of index n (the b_n / a_n factor) under a coefficient spec.
std::complex<double> coefficient(Coefficients c, std::uint64_t n, std::uint64_t seed, std::uint64_t salt);

struct BoundComparison {
  ExpSumResult measured;
  exppair::BoundEvaluation bound;
  double ratio = 0.0;
  double trivial_bound = 0.0;
  bool flagged = false;  // ratio > 1e3
};

// VDC pairs with Monomial1D (unit coefficients, Y = h x / N);
// LWY and RS with BilinearII (H = 1, X = h x / (M N)) and TripleHMN.
BoundComparison bound_comparison(const Scenario& s, exppair::Lemma lemma,
                                 const std::optional<exppair::ExponentPair>& pair,
                                 const SumOptions& options = {});

// The regime of the large-D range: D = x^{8/15}, H = D^2 / x^{1 - rho},
// a type II split M = D^{7/20}, N = D / M, X = H x / (M N).
Scenario large_d_scenario(std::uint64_t x, double rho, std::uint64_t seed = 0);

enum class Case { I, II, III };
std::string case_name(Case c);

struct CaseSplit {
  int k = 0;
  std::uint64_t D = 0;
  std::vector<std::uint64_t> factors;  // D_1 <= ... <= D_k
  Case label = Case::II;
  int merge_index = 0;  // t (1-based) in Case III, else 0
  std::uint64_t L1 = 0;
  std::uint64_t L2 = 0;
};

// Case I: D_k^3 > D^2; Case II: D <= D_k^3 <= D^2; Case III: D_k^3 < D.
// Integer comparisons only.
CaseSplit classify_factorization(int k, std::uint64_t D, const std::vector<std::uint64_t>& factors);

}  // namespace floorsum::expsum
