#include "floorsum/arith_sieve.hpp"
#include "floorsum/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace floorsum;

TEST_CASE("sieve values agree with trial division") {
  const auto lam = sieve_table(ArithFunction::lambda(), 1, 20001);
  const auto mu = sieve_table(ArithFunction::mu(), 1, 20001);
  const auto t2 = sieve_table(ArithFunction::tau(2), 1, 5001);
  const auto t3 = sieve_table(ArithFunction::tau(3), 1, 3001);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    REQUIRE(static_cast<std::uint64_t>(lam.at(n)) == std::max<std::uint64_t>(1, oracle::prime_base(n)));
    REQUIRE(mu.at(n) == oracle::mobius(n));
  }
  for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE(t2.at(n) == oracle::tau(2, n));
  for (std::uint64_t n = 1; n <= 3000; ++n) REQUIRE(t3.at(n) == oracle::tau(3, n));
}

// Lambda tables hold the prime base b with Lambda(n) = log b, so 1 marks Lambda(n) = 0.
TEST_CASE("small known values") {
  const auto lam = sieve_table(ArithFunction::lambda(), 1, 13);
  CHECK(lam.at(1) == 1);
  CHECK(lam.at(8) == 2);
  CHECK(lam.at(9) == 3);
  CHECK(lam.at(12) == 1);
  CHECK(point_value(ArithFunction::tau(2), 12) == 6);
  CHECK(point_value(ArithFunction::tau(3), 12) == 18);
  CHECK(point_value(ArithFunction::mu(), 30) == -1);
  CHECK(tau_prime_power(3, 2) == 6);
}

TEST_CASE("segmented tables match the whole-range table for any partition") {
  std::mt19937_64 rng(11);
  for (auto fn : {ArithFunction::lambda(), ArithFunction::mu(), ArithFunction::tau(2), ArithFunction::tau(4)}) {
    const auto whole = sieve_table(fn, 1, 50001);
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t lo = 1 + rng() % 40000;
      const std::uint64_t hi = lo + 1 + rng() % (50001 - lo);
      SieveOptions opts;
      opts.segment_size = 1 + rng() % 5000;
      opts.threads = 1 + static_cast<unsigned>(rng() % 3);
      const auto part = sieve_table(fn, lo, hi, opts);
      REQUIRE(part.size() == hi - lo);
      for (std::uint64_t n = lo; n < hi; ++n) REQUIRE(part.at(n) == whole.at(n));
    }
  }
}

TEST_CASE("high segment agrees with pointwise factorization") {
  const std::uint64_t lo = 1'000'000'000'000ULL;
  for (auto fn : {ArithFunction::lambda(), ArithFunction::mu(), ArithFunction::tau(3)}) {
    const auto t = sieve_table(fn, lo, lo + 3000);
    for (std::uint64_t n = lo; n < lo + 3000; ++n) REQUIRE(t.at(n) == point_value(fn, n));
  }
}

TEST_CASE("Dirichlet convolution: sum of mu over divisors vanishes, tau_k = 1 * tau_{k-1}") {
  const std::uint64_t n_max = 3000;
  const auto mu = sieve_table(ArithFunction::mu(), 1, n_max + 1);
  const auto t2 = sieve_table(ArithFunction::tau(2), 1, n_max + 1);
  const auto t3 = sieve_table(ArithFunction::tau(3), 1, n_max + 1);
  const auto lam = sieve_table(ArithFunction::lambda(), 1, n_max + 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::int64_t mu_sum = 0, t2_sum = 0;
    double lam_sum = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      mu_sum += mu.at(d);
      t2_sum += t2.at(d);
      if (lam.at(d) > 1) lam_sum += std::log(static_cast<double>(lam.at(d)));
    }
    REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    REQUIRE(t2_sum == t3.at(n));
    REQUIRE(lam_sum == doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-12));
  }
}

TEST_CASE("factorization") {
  CHECK(is_prime(2));
  CHECK(!is_prime(1));
  CHECK(is_prime(1'000'000'007ULL));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK(!is_prime(3215031751ULL));
  const std::uint64_t n = 600851475143ULL;
  const auto f = factorize(n);
  CHECK(f.product() == n);
  CHECK(f.factors.size() == 4);
  CHECK(f.factors.back().prime == 6857);
  const auto big = factorize(4294967291ULL * 4294967279ULL);
  REQUIRE(big.factors.size() == 2);
  CHECK(big.factors[0].prime == 4294967279ULL);
  CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("primes") {
  const auto ps = primes_up_to(100);
  CHECK(ps.size() == 25);
  std::uint64_t count = 0;
  for_each_prime(1'000'000, 2'000'000, [&](std::uint64_t) { ++count; });
  CHECK(count == 70435);
}

TEST_CASE("invalid ranges and budgets") {
  CHECK_THROWS_AS(sieve_table(ArithFunction::lambda(), 0, 10), DomainError);
  CHECK_THROWS_AS(sieve_table(ArithFunction::lambda(), 10, 10), DomainError);
  CHECK_THROWS_AS(sieve_table(ArithFunction::tau(1), 1, 10), DomainError);
  SieveOptions tight;
  tight.max_entries = 100;
  CHECK_THROWS_AS(sieve_table(ArithFunction::mu(), 1, 1000, tight), BudgetExceeded);
  CHECK(parse_arith_function("tau5") == ArithFunction::tau(5));
  CHECK_THROWS(parse_arith_function("sigma"));
}

TEST_CASE("table cache round-trips") {
  const auto dir = std::filesystem::temp_directory_path() / "floorsum_cache_test";
  std::filesystem::remove_all(dir);
  const auto t = cached_sieve_table(ArithFunction::tau(3), 100, 5000, dir);
  const auto again = cached_sieve_table(ArithFunction::tau(3), 100, 5000, dir);
  CHECK(again.values == t.values);
  CHECK(std::filesystem::exists(dir / "tau3_100_5000.bin"));
  const auto file = dir / "copy.bin";
  write_table(t, file);
  const auto back = read_table(file);
  CHECK(back.fn == t.fn);
  CHECK(back.lo == 100);
  CHECK(back.hi == 5000);
  CHECK(back.values == t.values);
  std::filesystem::remove_all(dir);
}
