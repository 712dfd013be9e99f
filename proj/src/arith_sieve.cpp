#include "floorsum/arith_sieve.hpp"

#include "floorsum/errors.hpp"
#include "floorsum/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>

namespace floorsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_factors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  collect_factors(d, out);
  collect_factors(n / d, out);
}

void check_function(ArithFunction fn) {
  if (fn.kind == ArithKind::TauK && fn.k < 2) {
    throw DomainError("tau_k requires k >= 2, got k = " + std::to_string(fn.k));
  }
}

// Multiplicative sieve of fn over [s, e) using prime powers only; no
// per-entry division. `primes` must cover every prime <= sqrt(e - 1).
void sieve_segment(ArithFunction fn, u64 s, u64 e, std::span<const u64> primes, std::int64_t* out) {
  const u64 len = e - s;
  std::vector<u64> prod(len, 1);
  const std::int64_t init = fn.kind == ArithKind::Lambda ? 0 : 1;
  std::fill(out, out + len, init);
  const std::int64_t k = fn.k;

  for (const u64 p : primes) {
    if (p > (e - 1) / p) break;
    u64 pk = p;
    for (unsigned j = 1;; ++j) {
      const u64 first = (s + pk - 1) / pk * pk;
      for (u64 m = first; m < e; m += pk) {
        const u64 i = m - s;
        prod[i] *= p;
        std::int64_t& v = out[i];
        switch (fn.kind) {
          case ArithKind::Lambda:
            if (j == 1) v = (v == 0) ? static_cast<std::int64_t>(p) : 1;
            break;
          case ArithKind::Mu:
            if (j == 1) v = -v;
            else if (j == 2) v = 0;
            break;
          case ArithKind::TauK:
            if (j == 1) v *= k;
            else v = v * (j + k - 1) / j;
            break;
        }
      }
      if (pk > (e - 1) / p) break;
      pk *= p;
    }
  }

  for (u64 i = 0; i < len; ++i) {
    const u64 n = s + i;
    const bool leftover = prod[i] != n;  // one prime > sqrt(n) remains
    std::int64_t& v = out[i];
    switch (fn.kind) {
      case ArithKind::Lambda:
        if (leftover) v = (v == 0) ? static_cast<std::int64_t>(n) : 1;
        else if (v == 0) v = 1;  // n == 1
        break;
      case ArithKind::Mu:
        if (leftover) v = -v;
        break;
      case ArithKind::TauK:
        if (leftover) v *= k;
        break;
    }
  }
}

std::vector<std::int64_t> tau_by_convolution(int k, u64 hi) {
  // index n holds tau_j(n); index 0 unused
  std::vector<std::int64_t> cur(hi, 1);
  cur[0] = 0;
  std::vector<std::int64_t> next(hi);
  for (int pass = 1; pass < k; ++pass) {
    std::fill(next.begin(), next.end(), 0);
    for (u64 d = 1; d < hi; ++d) {
      const std::int64_t v = cur[d];
      for (u64 m = d; m < hi; m += d) next[m] += v;
    }
    cur.swap(next);
  }
  return cur;
}

void put_u64(std::ostream& os, u64 v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(bytes.data(), 8);
}

u64 get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!is) throw std::runtime_error("truncated table file");
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

ArithFunction ArithFunction::tau(int order) { return {ArithKind::TauK, order}; }

std::string ArithFunction::name() const {
  switch (kind) {
    case ArithKind::Lambda: return "lambda";
    case ArithKind::Mu: return "mu";
    case ArithKind::TauK: return "tau" + std::to_string(k);
  }
  return "?";
}

ArithFunction parse_arith_function(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "lambda" || s == "vonmangoldt") return ArithFunction::lambda();
  if (s == "mu" || s == "mobius") return ArithFunction::mu();
  if (s == "tau") return ArithFunction::tau(2);
  if (s.starts_with("tau")) {
    int k = 0;
    const auto* first = s.data() + 3;
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc{} && ptr == last && first != last) {
      check_function(ArithFunction::tau(k));
      return ArithFunction::tau(k);
    }
  }
  throw ParseError("unknown arithmetic function '" + std::string(text) + "'");
}

std::uint64_t Factorization::product() const {
  u64 p = 1;
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.exponent; ++i) p *= f.prime;
  return p;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    a %= n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  Factorization result{n, {}};
  std::vector<u64> primes;
  u64 m = n;
  for (u64 p = 2; p < 1000 && p * p <= m; ++p) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  collect_factors(m, primes);
  std::sort(primes.begin(), primes.end());
  for (const u64 p : primes) {
    if (!result.factors.empty() && result.factors.back().prime == p) {
      ++result.factors.back().exponent;
    } else {
      result.factors.push_back({p, 1});
    }
  }
  if (result.product() != n) throw std::logic_error("factorize: re-multiplication mismatch");
  return result;
}

std::int64_t tau_prime_power(int k, unsigned a) {
  // binomial(a + k - 1, a) built incrementally; each prefix is an integer.
  u128 c = 1;
  for (unsigned i = 1; i <= a; ++i) c = c * static_cast<u128>(k - 1 + i) / i;
  return static_cast<std::int64_t>(c);
}

std::int64_t point_value(ArithFunction fn, std::uint64_t n) {
  check_function(fn);
  const Factorization f = factorize(n);
  switch (fn.kind) {
    case ArithKind::Lambda:
      return f.factors.size() == 1 ? static_cast<std::int64_t>(f.factors[0].prime) : 1;
    case ArithKind::Mu: {
      std::int64_t mu = 1;
      for (const auto& pp : f.factors) {
        if (pp.exponent > 1) return 0;
        mu = -mu;
      }
      return mu;
    }
    case ArithKind::TauK: {
      std::int64_t t = 1;
      for (const auto& pp : f.factors) t *= tau_prime_power(fn.k, pp.exponent);
      return t;
    }
  }
  return 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i)
      for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
  if (hi <= lo || hi <= 2) return;
  lo = std::max<u64>(lo, 2);
  if (lo <= 2 && hi > 2) {
    visit(2);
    lo = 3;
  }
  const std::vector<u64> base = primes_up_to(isqrt(hi - 1));
  constexpr u64 kSegment = u64{1} << 19;
  std::vector<char> sieve;
  // odd numbers only: index i stands for s + 2 i
  for (u64 s = lo | 1; s < hi; s += 2 * kSegment) {
    const u64 e = std::min(hi, s + 2 * kSegment);
    const u64 count = (e - s + 1) / 2;
    sieve.assign(count, 1);
    for (std::size_t b = 1; b < base.size(); ++b) {
      const u64 p = base[b];
      if (p * p >= e) break;
      u64 start = std::max(p * p, (s + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (u64 m = start; m < e; m += 2 * p) sieve[(m - s) / 2] = 0;
    }
    for (u64 i = 0; i < count; ++i) {
      if (sieve[i]) {
        const u64 n = s + 2 * i;
        if (n > 1) visit(n);
      }
    }
  }
}

ArithmeticTable sieve_table(ArithFunction fn, std::uint64_t lo, std::uint64_t hi,
                            const SieveOptions& options) {
  check_function(fn);
  if (lo == 0) throw DomainError("sieve_table: lo must be >= 1");
  if (hi <= lo) throw DomainError("sieve_table: empty range [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + ")");
  if (hi - lo > options.max_entries) {
    throw BudgetExceeded("sieve_table: " + std::to_string(hi - lo) + " entries exceed budget of " +
                         std::to_string(options.max_entries));
  }
  ArithmeticTable table{fn, lo, hi, {}};

  if (fn.kind == ArithKind::TauK && lo == 1) {
    auto conv = tau_by_convolution(fn.k, hi);
    table.values.assign(conv.begin() + 1, conv.end());
    return table;
  }

  table.values.resize(hi - lo);
  const std::vector<u64> primes = primes_up_to(isqrt(hi - 1));
  const u64 segment = std::max<u64>(options.segment_size, 1);
  const u64 chunks = (hi - lo + segment - 1) / segment;
  parallel_for_chunks(chunks, options.threads, [&](std::size_t c) {
    const u64 s = lo + c * segment;
    const u64 e = std::min(hi, s + segment);
    sieve_segment(fn, s, e, primes, table.values.data() + (s - lo));
  });
  return table;
}

void write_table(const ArithmeticTable& table, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write table cache " + file.string());
  put_u64(os, static_cast<u64>(table.fn.kind));
  put_u64(os, static_cast<u64>(table.fn.k));
  put_u64(os, table.lo);
  put_u64(os, table.hi);
  put_u64(os, kTableFormatVersion);
  for (const std::int64_t v : table.values) put_u64(os, static_cast<u64>(v));
  if (!os) throw std::runtime_error("failed writing table cache " + file.string());
}

ArithmeticTable read_table(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open table cache " + file.string());
  ArithmeticTable table;
  const u64 kind = get_u64(is);
  const u64 k = get_u64(is);
  table.lo = get_u64(is);
  table.hi = get_u64(is);
  const u64 version = get_u64(is);
  if (version != kTableFormatVersion || kind > 2 || table.hi <= table.lo) {
    throw std::runtime_error("unsupported table cache " + file.string());
  }
  table.fn = {static_cast<ArithKind>(kind), static_cast<int>(k)};
  table.values.resize(table.hi - table.lo);
  for (auto& v : table.values) v = static_cast<std::int64_t>(get_u64(is));
  return table;
}

std::optional<std::filesystem::path> cache_directory() {
  const char* dir = std::getenv("FLOORSUM_CACHE");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

ArithmeticTable cached_sieve_table(ArithFunction fn, std::uint64_t lo, std::uint64_t hi,
                                   const std::optional<std::filesystem::path>& cache_dir,
                                   const SieveOptions& options) {
  if (!cache_dir) return sieve_table(fn, lo, hi, options);
  const auto file = *cache_dir / (fn.name() + "_" + std::to_string(lo) + "_" + std::to_string(hi) + ".bin");
  if (std::filesystem::exists(file)) {
    ArithmeticTable cached = read_table(file);
    if (cached.fn == fn && cached.lo == lo && cached.hi == hi) return cached;
  }
  ArithmeticTable table = sieve_table(fn, lo, hi, options);
  std::filesystem::create_directories(*cache_dir);
  write_table(table, file);
  return table;
}

}  // namespace floorsum
