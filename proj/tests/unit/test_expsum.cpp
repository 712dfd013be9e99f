#include "floorsum/expsum.hpp"
#include "floorsum/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace floorsum;
using namespace floorsum::expsum;

namespace {

std::complex<double> e(long double t) {
  const long double f = t - std::floor(t);
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(f));
}

}  // namespace

TEST_CASE("monomial sum against a long double oracle") {
  for (auto c : {Coefficients::Unit, Coefficients::Mu, Coefficients::Lambda}) {
    Scenario s;
    s.shape = Shape::Monomial1D;
    s.coefficients = c;
    s.N = 300;
    s.x = 987654;
    s.h = 3;
    s.delta = 1;
    std::complex<double> ref = 0;
    for (std::uint64_t n = s.N + 1; n <= 2 * s.N; ++n) {
      const double a = c == Coefficients::Unit ? 1.0 : c == Coefficients::Mu ? oracle::mobius(n) : oracle::von_mangoldt(n);
      ref += a * e(static_cast<long double>(s.h * s.x) / (n + 1));
    }
    const auto r = compute_expsum(s);
    CHECK(std::abs(r.value - ref) < 1e-9);
    CHECK(r.terms == 300);
  }
}

TEST_CASE("bilinear sum against an oracle") {
  Scenario s;
  s.shape = Shape::BilinearII;
  s.M = 40;
  s.N = 60;
  s.x = 123456789;
  s.h = 1;
  s.coefficients = Coefficients::Mu;
  std::complex<double> ref = 0;
  for (std::uint64_t m = 41; m <= 80; ++m)
    for (std::uint64_t n = 61; n <= 120; ++n)
      ref += static_cast<double>(oracle::mobius(m) * oracle::mobius(n)) * e(static_cast<long double>(s.x) / (m * n));
  CHECK(std::abs(compute_expsum(s).value - ref) < 1e-9);
}

TEST_CASE("triple sum against an oracle") {
  Scenario s;
  s.shape = Shape::TripleHMN;
  s.H = 5;
  s.M = 7;
  s.N = 9;
  s.X = 1234.5;
  s.coefficients = Coefficients::Unit;
  std::complex<double> ref = 0;
  for (std::uint64_t h = 6; h <= 10; ++h)
    for (std::uint64_t m = 8; m <= 14; ++m)
      for (std::uint64_t n = 10; n <= 18; ++n)
        ref += e(1234.5L * (h / 5.0L) * (7.0L / m) * (9.0L / n));
  const auto r = compute_expsum(s);
  CHECK(std::abs(r.value - ref) < 1e-9);
  CHECK(r.coefficient_mass == doctest::Approx(315));
}

TEST_CASE("random coefficients: unimodular, reproducible, thread independent") {
  for (std::uint64_t n = 1; n < 1000; ++n) {
    REQUIRE(std::abs(coefficient(Coefficients::RandomUnimodular, n, 9, 1)) == doctest::Approx(1.0));
  }
  CHECK(coefficient(Coefficients::RandomUnimodular, 5, 1, 0) != coefficient(Coefficients::RandomUnimodular, 5, 2, 0));
  Scenario s;
  s.shape = Shape::TripleHMN;
  s.H = 30;
  s.M = 20;
  s.N = 25;
  s.X = 1e5;
  s.coefficients = Coefficients::RandomUnimodular;
  s.seed = 4;
  const auto a = compute_expsum(s, {.threads = 1, .chunk = 4});
  const auto b = compute_expsum(s, {.threads = 3, .chunk = 4});
  CHECK(a.value == b.value);
  CHECK(a.modulus <= a.coefficient_mass);
}

TEST_CASE("bound comparison") {
  Scenario s;
  s.shape = Shape::Monomial1D;
  s.N = 2000;
  s.x = 1'000'000'000;
  const auto vdc = bound_comparison(s, exppair::Lemma::VDC, exppair::ExponentPair(Rational(1, 2), Rational(1, 2)));
  CHECK(vdc.ratio > 0);
  CHECK(vdc.ratio < 10);
  CHECK_THROWS_AS(bound_comparison(s, exppair::Lemma::RS, std::nullopt), DomainError);
  CHECK_THROWS_AS(bound_comparison(s, exppair::Lemma::Former, std::nullopt), DomainError);
  const auto regime = large_d_scenario(1'000'000'000ULL, 1.0 / 195);
  CHECK(regime.shape == Shape::TripleHMN);
  CHECK(regime.term_count() > 0);
  Scenario big;
  big.shape = Shape::BilinearII;
  big.M = 100000;
  big.N = 100000;
  CHECK_THROWS_AS(compute_expsum(big, {.max_terms = 1000}), BudgetExceeded);
}

TEST_CASE("case classification") {
  CHECK(classify_factorization(2, 1000, {5, 200}).label == Case::I);
  CHECK(classify_factorization(3, 1000, {8, 16, 16}).label == Case::II);
  const auto c3 = classify_factorization(4, 10000, {8, 8, 16, 16});
  CHECK(c3.label == Case::III);
  CHECK(c3.merge_index == 2);
  CHECK(c3.L1 == 64);
  CHECK(c3.L2 == 256);
  CHECK_THROWS_AS(classify_factorization(2, 1000, {100, 10}), DomainError);
  CHECK_THROWS_AS(classify_factorization(2, 1000, {10, 10}), DomainError);
  CHECK_THROWS_AS(classify_factorization(3, 1000, {10, 100}), DomainError);
}

TEST_CASE("case classification: boundary at D_k^3 = D counts as Case II") {
  CHECK(classify_factorization(3, 1000, {10, 10, 10}).label == Case::II);
  CHECK(classify_factorization(2, 1'000'000, {1000, 1000}).label == Case::II);
  CHECK(classify_factorization(2, 1'000'000, {999, 1002}).label == Case::II);
}
