#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace floorsum {

enum class ArithKind : std::uint8_t { Lambda = 0, Mu = 1, TauK = 2 };

// One of the arithmetic functions the floor-quotient sums are taken over.
// Lambda is represented by its prime base b(n): b(p^a) = p, otherwise 1,
// so that Lambda(n) = log b(n) stays exact until a log is actually needed.
struct ArithFunction {
  ArithKind kind = ArithKind::Lambda;
  int k = 0;  // order for TauK, 0 otherwise

  static ArithFunction lambda() { return {ArithKind::Lambda, 0}; }
  static ArithFunction mu() { return {ArithKind::Mu, 0}; }
  static ArithFunction tau(int order);

  bool is_exact() const { return kind != ArithKind::Lambda; }
  std::string name() const;  // "lambda", "mu", "tau3"
  friend bool operator==(const ArithFunction&, const ArithFunction&) = default;
};

// "lambda", "mu", "tau", "tau2", "tau3", ...
ArithFunction parse_arith_function(std::string_view text);

struct ArithmeticTable {
  ArithFunction fn;
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  std::vector<std::int64_t> values;  // entry i is the value at lo + i

  std::int64_t at(std::uint64_t n) const { return values[n - lo]; }
  std::size_t size() const { return values.size(); }
  bool covers(std::uint64_t n) const { return n >= lo && n < hi; }
};

struct SieveOptions {
  std::uint64_t segment_size = 1u << 18;
  unsigned threads = 1;
  std::uint64_t max_entries = std::uint64_t{1} << 28;
};

// Tabulates fn on [lo, hi). TauK tables starting at 1 are built by k-1
// divisor-convolution passes; every other table by a segmented
// multiplicative sieve. Output is independent of segment size and threads.
ArithmeticTable sieve_table(ArithFunction fn, std::uint64_t lo, std::uint64_t hi,
                            const SieveOptions& options = {});

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;  // increasing primes

  std::uint64_t product() const;
};

bool is_prime(std::uint64_t n);
Factorization factorize(std::uint64_t n);

// Exact value of fn at n: the prime base for Lambda, the integer otherwise.
std::int64_t point_value(ArithFunction fn, std::uint64_t n);

// binomial(a + k - 1, k - 1), the value of tau_k at a prime power p^a.
std::int64_t tau_prime_power(int k, unsigned a);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Calls visit(p) for every prime p in [lo, hi), ascending.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

// Binary table cache: five little-endian u64 header words
// {kind, k, lo, hi, format_version} followed by (hi - lo) little-endian
// 64-bit entries.
inline constexpr std::uint64_t kTableFormatVersion = 1;

void write_table(const ArithmeticTable& table, const std::filesystem::path& file);
ArithmeticTable read_table(const std::filesystem::path& file);

// Directory named by FLOORSUM_CACHE, if set and non-empty.
std::optional<std::filesystem::path> cache_directory();

// sieve_table, consulting and filling the cache directory when one is given.
ArithmeticTable cached_sieve_table(ArithFunction fn, std::uint64_t lo, std::uint64_t hi,
                                   const std::optional<std::filesystem::path>& cache_dir,
                                   const SieveOptions& options = {});

}  // namespace floorsum
