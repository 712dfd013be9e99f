#pragma once

#include "floorsum/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace floorsum::exppair {

// Exponent pair (kappa, lambda) with 0 <= kappa <= 1/2 <= lambda <= 1.
class ExponentPair {
 public:
  ExponentPair(Rational kappa, Rational lambda);  // throws DomainError if invalid

  const Rational& kappa() const { return kappa_; }
  const Rational& lambda() const { return lambda_; }

  static bool valid(const Rational& kappa, const Rational& lambda);
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;

 private:
  Rational kappa_;
  Rational lambda_;
};

// A: (k, l) -> (k / (2k + 2), 1/2 + l / (2k + 2))
ExponentPair a_process(const ExponentPair& p);
// B: (k, l) -> (l - 1/2, k + 1/2)
ExponentPair b_process(const ExponentPair& p);

// Words over {A, B} with optional powers ("BA^5", "A^2B", ""), applied
// right to left.
ExponentPair eval_word(std::string_view word, const ExponentPair& base);

// "13/84,55/84" or "(13/84, 55/84)"
ExponentPair parse_pair(std::string_view text);

enum class Lemma { LWY, RS, VDC, Former };
std::string lemma_name(Lemma lemma);

struct BoundTerm {
  std::string name;
  double value;
};

struct BoundEvaluation {
  Lemma lemma;
  std::vector<std::pair<std::string, double>> inputs;
  std::optional<ExponentPair> pair;
  double value = 0.0;  // sum of the addends
  std::vector<BoundTerm> terms;
  bool in_domain = true;
  std::string note;
};

// Y^k X^l + 1/Y for a monomial-phase sum over (X, 2X].
BoundEvaluation eval_vdc_bound(const ExponentPair& pair, double Y, double X);

// (X^k H^{2+k} M^{1+k+l} N^{2+k})^{1/(2+2k)} + H M^{1/2} N + H^{1/2} M N^{1/2} + X^{-1/2} H M N
BoundEvaluation eval_lwy_bound(const ExponentPair& pair, double X, double H, double M, double N);

// (X M^2 N^3 H^3)^{1/4} + M (HN)^{3/4} + M^{1/2} H N + X^{-1/2} H N M
BoundEvaluation eval_rs_bound(double X, double H, double M, double N);

// (x^2 D^7)^{1/12}, the x^eps factor omitted; flagged outside x^{6/13} <= D <= x^{2/3}.
BoundEvaluation eval_former_bound(double x, double D);

// Exponent of x in (x^2 D^7)^{1/12} when D = x^d: 1/6 + 7d/12.
Rational former_bound_exponent(const Rational& d);

}  // namespace floorsum::exppair
