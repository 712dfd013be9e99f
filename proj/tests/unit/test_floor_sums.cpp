#include "floorsum/floor_sums.hpp"
#include "floorsum/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace floorsum;

TEST_CASE("quotient blocks partition [1, x]") {
  for (std::uint64_t x = 1; x <= 3000; ++x) {
    const auto bd = distinct_quotients(x);
    std::uint64_t next = 1;
    for (const auto& b : bd.blocks) {
      REQUIRE(b.n_lo == next);
      REQUIRE(x / b.n_lo == b.q);
      REQUIRE(x / b.n_hi == b.q);
      if (b.n_hi < x) REQUIRE(x / (b.n_hi + 1) < b.q);
      next = b.n_hi + 1;
    }
    REQUIRE(next == x + 1);
    REQUIRE(static_cast<double>(bd.blocks.size()) <= 2.0 * std::sqrt(static_cast<double>(x)) + 1.0);
  }
  CHECK(distinct_quotients(100).blocks.size() == 19);
}

TEST_CASE("small values against hand computation") {
  // tau(10)+tau(5)+tau(3)+2*tau(2)+5*tau(1) = 4+2+2+4+5
  CHECK(sum_direct(ArithFunction::tau(2), 10).exact == 17);
  CHECK(sum_blocked(ArithFunction::tau(2), 10).exact == 17);
  CHECK(sum_blocked(ArithFunction::tau(2), 1).exact == 1);
  CHECK(sum_blocked(ArithFunction::lambda(), 1).real == 0.0);
}

TEST_CASE("direct and blocked agree with the naive oracle") {
  for (std::uint64_t x = 1; x <= 600; ++x) {
    REQUIRE(static_cast<std::int64_t>(sum_direct(ArithFunction::tau(2), x).exact) == oracle::floor_sum_tau(2, x));
    REQUIRE(static_cast<std::int64_t>(sum_blocked(ArithFunction::tau(3), x).exact) == oracle::floor_sum_tau(3, x));
    REQUIRE(sum_blocked(ArithFunction::lambda(), x).real ==
            doctest::Approx(oracle::floor_sum_lambda(x)).epsilon(1e-12));
  }
}

TEST_CASE("Lambda sums keep their prime multiplicities") {
  const auto v = sum_blocked(ArithFunction::lambda(), 10);
  // [10/n] = 10,5,3,2,2,1,... : Lambda(10)=0, Lambda(5), Lambda(3), 2 Lambda(2)
  CHECK(v.prime_multiplicity.at(2) == 2);
  CHECK(v.prime_multiplicity.at(3) == 1);
  CHECK(v.prime_multiplicity.at(5) == 1);
  CHECK(v.real == doctest::Approx(std::log(2.0 * 2.0 * 3.0 * 5.0)));
}

TEST_CASE("random x: blocked equals direct") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t x = 1 + rng() % 300000;
    REQUIRE(sum_blocked(ArithFunction::tau(2), x).exact == sum_direct(ArithFunction::tau(2), x).exact);
    REQUIRE(sum_blocked(ArithFunction::tau(3), x).exact == sum_direct(ArithFunction::tau(3), x).exact);
    const double a = sum_blocked(ArithFunction::lambda(), x).real;
    const double b = sum_direct(ArithFunction::lambda(), x).real;
    REQUIRE(std::abs(a - b) <= 1e-12 * std::abs(b));
  }
}

TEST_CASE("thread count does not change results") {
  const std::uint64_t x = 2'000'000;
  for (auto fn : {ArithFunction::lambda(), ArithFunction::tau(2)}) {
    const auto one = sum_blocked(fn, x, {1});
    for (unsigned t : {2u, 3u, 8u}) {
      const auto many = sum_blocked(fn, x, {t});
      REQUIRE(many.exact == one.exact);
      REQUIRE(many.real == one.real);
    }
    const auto d1 = sum_direct(fn, 200000, {1});
    const auto d4 = sum_direct(fn, 200000, {4});
    REQUIRE(d1.exact == d4.exact);
    REQUIRE(d1.real == d4.real);
  }
}

TEST_CASE("dual split matches the direct total and satisfies the psi identity") {
  for (std::uint64_t x : {1ULL, 2ULL, 17ULL, 100ULL, 999ULL, 65536ULL, 123457ULL, 1000000ULL}) {
    const std::uint64_t n715 = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::pow(x, 7.0 / 15.0)));
    for (std::uint64_t N : {std::uint64_t{1}, n715, x / 3 + 1, x}) {
      for (auto fn : {ArithFunction::tau(2), ArithFunction::lambda()}) {
        const auto s = sum_dual(fn, x, N);
        const auto ref = sum_blocked(fn, x);
        REQUIRE(s.identity_mismatches == 0);
        if (fn.is_exact()) {
          REQUIRE(s.total.exact == ref.exact);
          REQUIRE(s.s1.exact + s.s2.exact == s.total.exact);
          const double recon = s.main_part + s.psi_part + s.boundary_correction;
          REQUIRE(recon == doctest::Approx(static_cast<double>(s.s2.exact)).epsilon(1e-9));
        } else {
          REQUIRE(s.total.real == doctest::Approx(ref.real).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("sawtooth") {
  CHECK(psi(0.0) == -0.5);
  CHECK(psi(2.25) == -0.25);
  CHECK(psi(-0.25) == 0.25);
  CHECK(psi(Rational(7, 3)) == Rational(-1, 6));
}

TEST_CASE("error series and exponent fit") {
  CHECK(geometric_grid(10, 100) == std::vector<std::uint64_t>{10, 20, 40, 80});
  std::vector<double> xs, es;
  for (double x = 100; x < 1e7; x *= 3) {
    xs.push_back(x);
    es.push_back(2.0 * std::pow(x, 0.4));
  }
  const auto fit = fit_exponent(xs, es);
  CHECK(fit.slope == doctest::Approx(0.4));
  CHECK(fit.intercept == doctest::Approx(std::log(2.0)));
  CHECK(fit.residual < 1e-9);
  CHECK_THROWS_AS(fit_exponent(std::vector<double>{1, 2}, std::vector<double>{5, 5}), DomainError);

  ConstantBracket c{ArithFunction::tau(2), 10, 1.0, 1.0 + 1e-6};
  const std::vector<std::uint64_t> bad{100, 50};
  CHECK_THROWS_AS(error_series(ArithFunction::tau(2), c, bad), DomainError);
  const std::vector<std::uint64_t> far{1'000'000'000};
  CHECK_THROWS_AS(error_series(ArithFunction::tau(2), c, far), DomainError);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(sum_direct(ArithFunction::tau(2), 1000, {1, 10}), BudgetExceeded);
}

TEST_CASE("dual split with an empty tail, and composed error values") {
  const auto s = sum_dual(ArithFunction::lambda(), 10, 10);
  CHECK(s.s2.real == 0.0);
  CHECK(s.total.real == doctest::Approx(std::log(60.0)));
  CHECK_THROWS_AS(sum_dual(ArithFunction::lambda(), 10, 11), DomainError);

  ConstantBracket c{ArithFunction::lambda(), 1000, 0.44, 0.46};
  const std::vector<std::uint64_t> ten{10};
  const auto series = error_series(ArithFunction::lambda(), c, ten);
  REQUIRE(series.points.size() == 1);
  CHECK(series.points[0].e == doctest::Approx(std::log(60.0) - 10 * c.mid()));
  CHECK(series.points[0].e_lo <= series.points[0].e);
  CHECK(series.points[0].e <= series.points[0].e_hi);
  CHECK(error_series(ArithFunction::lambda(), c, std::vector<std::uint64_t>{}).points.empty());
}
