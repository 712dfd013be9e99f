#include "floorsum/expsum.hpp"

#include "floorsum/arith_sieve.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/parallel.hpp"
#include "floorsum/rational.hpp"
#include "floorsum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace floorsum::expsum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> unit(double fraction) { return {std::cos(kTwoPi * fraction), std::sin(kTwoPi * fraction)}; }

// e(a / q) with the fractional part reduced exactly.
std::complex<double> exact_phase(u128 a, u128 q) {
  return unit(static_cast<double>(a % q) / static_cast<double>(q));
}

u64 splitmix(u64 v) {
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

// Coefficients on (lo, 2 lo], index i <-> lo + 1 + i.
std::vector<std::complex<double>> coefficient_range(Coefficients c, u64 lo, u64 seed, u64 salt) {
  std::vector<std::complex<double>> out(lo);
  if (c == Coefficients::Mu || c == Coefficients::Lambda) {
    const auto fn = c == Coefficients::Mu ? ArithFunction::mu() : ArithFunction::lambda();
    const ArithmeticTable t = sieve_table(fn, lo + 1, 2 * lo + 1, {.max_entries = 2 * lo + 1});
    for (u64 i = 0; i < lo; ++i) {
      const std::int64_t v = t.values[i];
      out[i] = c == Coefficients::Mu ? static_cast<double>(v) : (v > 1 ? std::log(static_cast<double>(v)) : 0.0);
    }
    return out;
  }
  for (u64 i = 0; i < lo; ++i) out[i] = coefficient(c, lo + 1 + i, seed, salt);
  return out;
}

std::string u64s(u64 v) { return std::to_string(v); }

}  // namespace

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::Monomial1D: return "monomial1d";
    case Shape::BilinearII: return "bilinear";
    case Shape::TripleHMN: return "triple";
  }
  return "?";
}

std::string coefficients_name(Coefficients c) {
  switch (c) {
    case Coefficients::Unit: return "unit";
    case Coefficients::Mu: return "mu";
    case Coefficients::Lambda: return "lambda";
    case Coefficients::RandomUnimodular: return "random";
  }
  return "?";
}

Shape parse_shape(const std::string& s) {
  for (Shape v : {Shape::Monomial1D, Shape::BilinearII, Shape::TripleHMN})
    if (shape_name(v) == s) return v;
  throw ParseError("unknown scenario shape '" + s + "'");
}

Coefficients parse_coefficients(const std::string& s) {
  for (Coefficients v : {Coefficients::Unit, Coefficients::Mu, Coefficients::Lambda, Coefficients::RandomUnimodular})
    if (coefficients_name(v) == s) return v;
  throw ParseError("unknown coefficient spec '" + s + "'");
}

std::uint64_t Scenario::term_count() const {
  switch (shape) {
    case Shape::Monomial1D: return N;
    case Shape::BilinearII: return M * N;
    case Shape::TripleHMN: return H * M * N;
  }
  return 0;
}

std::complex<double> coefficient(Coefficients c, std::uint64_t n, std::uint64_t seed, std::uint64_t salt) {
  switch (c) {
    case Coefficients::Unit: return 1.0;
    case Coefficients::Mu: return static_cast<double>(point_value(ArithFunction::mu(), n));
    case Coefficients::Lambda: {
      const std::int64_t b = point_value(ArithFunction::lambda(), n);
      return b > 1 ? std::log(static_cast<double>(b)) : 0.0;
    }
    case Coefficients::RandomUnimodular: {
      const u64 r = splitmix(splitmix(seed ^ (salt * 0x632be59bd9b4e019ull)) ^ n);
      return unit(static_cast<double>(r >> 11) * 0x1.0p-53);
    }
  }
  return 0.0;
}

ExpSumResult compute_expsum(const Scenario& s, const SumOptions& options) {
  if (s.H == 0 || s.M == 0 || s.N == 0) throw DomainError("expsum: ranges must be >= 1");
  if (s.delta > 1) throw DomainError("expsum: delta must be 0 or 1");
  const u64 terms = s.term_count();
  if (terms > options.max_terms) {
    throw BudgetExceeded("expsum: " + u64s(terms) + " terms exceed budget of " + u64s(options.max_terms));
  }
  const u64 chunk = std::max<u64>(options.chunk, 1);
  ExpSumResult result;
  result.terms = terms;

  std::vector<ComplexCompensatedSum> parts;
  std::vector<CompensatedSum> masses;
  auto reduce = [&] {
    ComplexCompensatedSum total;
    CompensatedSum mass;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      total += parts[i];
      mass += masses[i];
    }
    result.value = total.value();
    result.coefficient_mass = mass.value();
  };

  switch (s.shape) {
    case Shape::Monomial1D: {
      const auto a = coefficient_range(s.coefficients, s.N, s.seed, 0);
      const u128 hx = static_cast<u128>(s.h) * s.x;
      const u64 chunks = (s.N + chunk - 1) / chunk;
      parts.resize(chunks);
      masses.resize(chunks);
      parallel_for_chunks(chunks, options.threads, [&](std::size_t c) {
        const u64 first = c * chunk;
        const u64 last = std::min(s.N, first + chunk);
        for (u64 i = first; i < last; ++i) {
          const u64 n = s.N + 1 + i;
          parts[c] += a[i] * exact_phase(hx, n + s.delta);
          masses[c] += std::abs(a[i]);
        }
      });
      break;
    }
    case Shape::BilinearII: {
      const auto a = coefficient_range(s.coefficients, s.M, s.seed, 1);
      const auto b = coefficient_range(s.coefficients, s.N, s.seed, 2);
      const u128 hx = static_cast<u128>(s.h) * s.x;
      const u64 chunks = (s.M + chunk - 1) / chunk;
      parts.resize(chunks);
      masses.resize(chunks);
      parallel_for_chunks(chunks, options.threads, [&](std::size_t c) {
        const u64 first = c * chunk;
        const u64 last = std::min(s.M, first + chunk);
        for (u64 i = first; i < last; ++i) {
          const u64 m = s.M + 1 + i;
          for (u64 j = 0; j < s.N; ++j) {
            const u64 n = s.N + 1 + j;
            parts[c] += a[i] * b[j] * exact_phase(hx, static_cast<u128>(m) * n);
            masses[c] += std::abs(a[i]) * std::abs(b[j]);
          }
        }
      });
      break;
    }
    case Shape::TripleHMN: {
      const auto bm = coefficient_range(s.coefficients, s.M, s.seed, 1);
      const bool random = s.coefficients == Coefficients::RandomUnimodular;
      const auto an = random ? std::vector<std::complex<double>>{} : coefficient_range(s.coefficients, s.N, s.seed, 2);
      const long double X = s.X;
      const u64 chunks = (s.H + chunk - 1) / chunk;
      parts.resize(chunks);
      masses.resize(chunks);
      parallel_for_chunks(chunks, options.threads, [&](std::size_t c) {
        const u64 first = c * chunk;
        const u64 last = std::min(s.H, first + chunk);
        for (u64 i = first; i < last; ++i) {
          const u64 h = s.H + 1 + i;
          const long double hp = std::pow(static_cast<long double>(h) / s.H, static_cast<long double>(s.beta));
          for (u64 j = 0; j < s.M; ++j) {
            const u64 m = s.M + 1 + j;
            const long double mp = std::pow(static_cast<long double>(m) / s.M, static_cast<long double>(s.alpha));
            for (u64 l = 0; l < s.N; ++l) {
              const u64 n = s.N + 1 + l;
              const long double np = std::pow(static_cast<long double>(n) / s.N, static_cast<long double>(s.gamma));
              const long double phase = X * hp * mp * np;
              const long double fracl = phase - std::floor(phase);
              const std::complex<double> ahn =
                  random ? coefficient(s.coefficients, h * (2 * s.N + 1) + n, s.seed, 3) : an[l];
              parts[c] += ahn * bm[j] * unit(static_cast<double>(fracl));
              masses[c] += std::abs(ahn) * std::abs(bm[j]);
            }
          }
        }
      });
      break;
    }
  }
  reduce();
  result.modulus = std::abs(result.value);
  return result;
}

BoundComparison bound_comparison(const Scenario& s, exppair::Lemma lemma,
                                 const std::optional<exppair::ExponentPair>& pair, const SumOptions& options) {
  using exppair::Lemma;
  if ((lemma == Lemma::VDC || lemma == Lemma::LWY) && !pair) {
    throw DomainError("bound_comparison: lemma " + exppair::lemma_name(lemma) + " needs an exponent pair");
  }
  BoundComparison out;
  switch (lemma) {
    case Lemma::VDC: {
      if (s.shape != Shape::Monomial1D || s.coefficients != Coefficients::Unit) {
        throw DomainError("bound_comparison: VDC applies to unweighted monomial sums");
      }
      const double Y = static_cast<double>(s.h) * static_cast<double>(s.x) / static_cast<double>(s.N);
      out.bound = exppair::eval_vdc_bound(*pair, Y, static_cast<double>(s.N));
      break;
    }
    case Lemma::LWY:
    case Lemma::RS: {
      double X = s.X, H = static_cast<double>(s.H);
      if (s.shape == Shape::BilinearII) {
        H = 1.0;
        X = static_cast<double>(s.h) * static_cast<double>(s.x) / (static_cast<double>(s.M) * s.N);
      } else if (s.shape != Shape::TripleHMN) {
        throw DomainError("bound_comparison: " + exppair::lemma_name(lemma) + " applies to bilinear/triple sums");
      }
      const double M = static_cast<double>(s.M), N = static_cast<double>(s.N);
      out.bound = lemma == Lemma::LWY ? exppair::eval_lwy_bound(*pair, X, H, M, N) : exppair::eval_rs_bound(X, H, M, N);
      break;
    }
    case Lemma::Former:
      throw DomainError("bound_comparison: the FORMER bound concerns psi-sums, not exponential sums");
  }
  out.measured = compute_expsum(s, options);
  out.trivial_bound = out.measured.coefficient_mass;
  out.ratio = out.measured.modulus / out.bound.value;
  out.flagged = out.ratio > 1e3;
  return out;
}

Scenario large_d_scenario(std::uint64_t x, double rho, std::uint64_t seed) {
  if (x < 16) throw DomainError("large_d_scenario: x too small");
  const double xd = static_cast<double>(x);
  const double D = std::pow(xd, 8.0 / 15.0);
  Scenario s;
  s.shape = Shape::TripleHMN;
  s.coefficients = Coefficients::RandomUnimodular;
  s.seed = seed;
  s.x = x;
  s.H = std::max<u64>(1, static_cast<u64>(D * D / std::pow(xd, 1.0 - rho)));
  s.M = std::max<u64>(1, static_cast<u64>(std::llround(std::pow(D, 0.35))));
  s.N = std::max<u64>(1, static_cast<u64>(D / static_cast<double>(s.M)));
  s.X = static_cast<double>(s.H) * xd / (static_cast<double>(s.M) * static_cast<double>(s.N));
  return s;
}

std::string case_name(Case c) {
  switch (c) {
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
  }
  return "?";
}

CaseSplit classify_factorization(int k, std::uint64_t D, const std::vector<std::uint64_t>& factors) {
  if (k < 2) throw DomainError("classify_factorization: k must be >= 2");
  if (D < 1) throw DomainError("classify_factorization: D must be >= 1");
  if (factors.size() != static_cast<std::size_t>(k)) {
    throw DomainError("classify_factorization: expected " + std::to_string(k) + " factors");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 1) throw DomainError("classify_factorization: factors must be >= 1");
    if (i > 0 && factors[i] < factors[i - 1]) throw DomainError("classify_factorization: factors must be ordered");
  }
  BigInt product = 1;
  for (const u64 f : factors) product *= f;
  const BigInt d(D);
  if (product < d || product >= (BigInt(1) << k) * d) {
    throw DomainError("classify_factorization: product of factors outside [D, 2^k D)");
  }

  CaseSplit out{k, D, factors};
  const BigInt top = BigInt(factors.back());
  const BigInt top3 = top * top * top;
  if (top3 > d * d) {
    out.label = Case::I;
  } else if (top3 >= d) {
    out.label = Case::II;
  } else {
    out.label = Case::III;
    BigInt prefix = 1;
    for (int t = 1; t <= k; ++t) {
      prefix *= factors[t - 1];
      if (prefix * prefix * prefix > d) {
        out.merge_index = t;
        break;
      }
    }
    const BigInt rest = product / prefix;
    if (rest > BigInt(std::numeric_limits<u64>::max())) throw DomainError("classify_factorization: L2 overflow");
    out.L1 = prefix.convert_to<u64>();
    out.L2 = rest.convert_to<u64>();
  }
  return out;
}

}  // namespace floorsum::expsum
