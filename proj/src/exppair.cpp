#include "floorsum/exppair.hpp"

#include "floorsum/errors.hpp"

#include <cctype>
#include <cmath>

namespace floorsum::exppair {

namespace {

const Rational kHalf(1, 2);

void require_positive(std::initializer_list<std::pair<const char*, double>> inputs) {
  for (const auto& [name, v] : inputs) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("bound input ") + name + " must be positive and finite");
    }
  }
}

void require_at_least_one(std::initializer_list<std::pair<const char*, double>> inputs) {
  for (const auto& [name, v] : inputs) {
    if (!(v >= 1.0)) throw DomainError(std::string("bound input ") + name + " must be >= 1");
  }
}

BoundEvaluation finish(BoundEvaluation ev) {
  ev.value = 0.0;
  for (const auto& t : ev.terms) ev.value += t.value;
  return ev;
}

}  // namespace

bool ExponentPair::valid(const Rational& kappa, const Rational& lambda) {
  return kappa >= 0 && kappa <= kHalf && lambda >= kHalf && lambda <= 1;
}

ExponentPair::ExponentPair(Rational kappa, Rational lambda) : kappa_(std::move(kappa)), lambda_(std::move(lambda)) {
  if (!valid(kappa_, lambda_)) {
    throw DomainError("not an admissible exponent pair: (" + to_string(kappa_) + ", " + to_string(lambda_) + ")");
  }
}

ExponentPair a_process(const ExponentPair& p) {
  const Rational denom = 2 * p.kappa() + 2;
  return ExponentPair(p.kappa() / denom, kHalf + p.lambda() / denom);
}

ExponentPair b_process(const ExponentPair& p) { return ExponentPair(p.lambda() - kHalf, p.kappa() + kHalf); }

ExponentPair eval_word(std::string_view word, const ExponentPair& base) {
  // parse into (letter, power) from left to right, then apply from the right
  std::vector<std::pair<char, unsigned>> ops;
  std::size_t i = 0;
  while (i < word.size()) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(word[i])));
    if (std::isspace(static_cast<unsigned char>(word[i]))) {
      ++i;
      continue;
    }
    if (c != 'A' && c != 'B') throw ParseError("exponent-pair word: unexpected '" + std::string(1, word[i]) + "'");
    ++i;
    unsigned power = 1;
    if (i < word.size() && word[i] == '^') {
      ++i;
      if (i >= word.size() || !std::isdigit(static_cast<unsigned char>(word[i]))) {
        throw ParseError("exponent-pair word: '^' must be followed by digits");
      }
      power = 0;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
        power = power * 10 + static_cast<unsigned>(word[i] - '0');
        if (power > 10000) throw ParseError("exponent-pair word: power too large");
        ++i;
      }
    }
    ops.emplace_back(c, power);
  }
  ExponentPair p = base;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    for (unsigned r = 0; r < it->second; ++r) p = it->first == 'A' ? a_process(p) : b_process(p);
  }
  return p;
}

ExponentPair parse_pair(std::string_view text) {
  std::string s;
  for (const char c : text)
    if (c != '(' && c != ')') s.push_back(c);
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("exponent pair must be 'kappa,lambda'");
  return ExponentPair(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

std::string lemma_name(Lemma lemma) {
  switch (lemma) {
    case Lemma::LWY: return "LWY";
    case Lemma::RS: return "RS";
    case Lemma::VDC: return "VDC";
    case Lemma::Former: return "FORMER";
  }
  return "?";
}

BoundEvaluation eval_vdc_bound(const ExponentPair& pair, double Y, double X) {
  require_positive({{"Y", Y}, {"X", X}});
  if (!(X > 1.0)) throw DomainError("bound input X must exceed 1");
  const double k = to_double(pair.kappa());
  const double l = to_double(pair.lambda());
  BoundEvaluation ev{Lemma::VDC, {{"Y", Y}, {"X", X}}, pair};
  ev.terms = {{"Y^k X^l", std::pow(Y, k) * std::pow(X, l)}, {"1/Y", 1.0 / Y}};
  return finish(std::move(ev));
}

BoundEvaluation eval_lwy_bound(const ExponentPair& pair, double X, double H, double M, double N) {
  require_positive({{"X", X}, {"H", H}, {"M", M}, {"N", N}});
  require_at_least_one({{"H", H}, {"M", M}, {"N", N}});
  const double k = to_double(pair.kappa());
  const double l = to_double(pair.lambda());
  const double log_first = (k * std::log(X) + (2 + k) * std::log(H) + (1 + k + l) * std::log(M) +
                            (2 + k) * std::log(N)) / (2 + 2 * k);
  BoundEvaluation ev{Lemma::LWY, {{"X", X}, {"H", H}, {"M", M}, {"N", N}}, pair};
  ev.terms = {
      {"(X^k H^(2+k) M^(1+k+l) N^(2+k))^(1/(2+2k))", std::exp(log_first)},
      {"H M^(1/2) N", H * std::sqrt(M) * N},
      {"H^(1/2) M N^(1/2)", std::sqrt(H) * M * std::sqrt(N)},
      {"X^(-1/2) H M N", H * M * N / std::sqrt(X)},
  };
  return finish(std::move(ev));
}

BoundEvaluation eval_rs_bound(double X, double H, double M, double N) {
  require_positive({{"X", X}, {"H", H}, {"M", M}, {"N", N}});
  require_at_least_one({{"H", H}, {"M", M}, {"N", N}});
  BoundEvaluation ev{Lemma::RS, {{"X", X}, {"H", H}, {"M", M}, {"N", N}}, std::nullopt};
  ev.terms = {
      {"(X M^2 N^3 H^3)^(1/4)", std::pow(X * M * M * N * N * N * H * H * H, 0.25)},
      {"M (HN)^(3/4)", M * std::pow(H * N, 0.75)},
      {"M^(1/2) H N", std::sqrt(M) * H * N},
      {"X^(-1/2) H N M", H * N * M / std::sqrt(X)},
  };
  return finish(std::move(ev));
}

BoundEvaluation eval_former_bound(double x, double D) {
  require_positive({{"x", x}, {"D", D}});
  BoundEvaluation ev{Lemma::Former, {{"x", x}, {"D", D}}, std::nullopt};
  ev.terms = {{"(x^2 D^7)^(1/12)", std::exp((2 * std::log(x) + 7 * std::log(D)) / 12.0)}};
  ev.note = "x^eps factor omitted";
  if (x > 1.0) {
    const double d = std::log(D) / std::log(x);
    const double slack = 1e-12;
    ev.in_domain = d >= 6.0 / 13.0 - slack && d <= 2.0 / 3.0 + slack;
  } else {
    ev.in_domain = false;
  }
  if (!ev.in_domain) ev.note += "; D outside [x^(6/13), x^(2/3)]";
  return finish(std::move(ev));
}

Rational former_bound_exponent(const Rational& d) { return Rational(1, 6) + Rational(7, 12) * d; }

}  // namespace floorsum::exppair
