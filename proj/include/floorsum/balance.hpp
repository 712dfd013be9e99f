#pragma once

#include "floorsum/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace floorsum::balance {

using Assignment = std::map<std::string, Rational>;

// constant + sum_i coefficients[i] * param_i
struct LinearExponentForm {
  std::string label;
  Rational constant;
  std::map<std::string, Rational> coefficients;

  Rational evaluate(const Assignment& at) const;  // throws DomainError on a missing parameter
  std::string to_string() const;
};

// Parses affine expressions such as "7/15 + r", "11/24 + (7/12)*w",
// "11/24+(7/12)w", "1/2 - w - r", "7/15 + 32r/45". Every identifier must be
// one of `params`.
LinearExponentForm parse_form(std::string_view text, const std::vector<std::string>& params,
                              std::string label = {});

struct ParameterBox {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

struct BalanceSolution {
  Assignment assignment;
  Rational value;                   // minimized maximum
  std::vector<std::string> active;  // labels of forms attaining `value`
  std::size_t candidates_examined = 0;
};

// Exact minimizer of max_j forms[j] over the box. Candidate points solve
// (d+1)-subsets of {form_i = form_j = t} and box-face equations; the best
// candidate is certified against all of them. Ties go to the
// lexicographically smallest assignment in `params` order.
BalanceSolution minimize_max(const std::vector<LinearExponentForm>& forms,
                             const std::vector<std::string>& params,
                             const std::map<std::string, ParameterBox>& box);

struct FormValues {
  std::vector<std::pair<std::string, Rational>> values;
  Rational max;
};

FormValues evaluate_at(const std::vector<LinearExponentForm>& forms, const Assignment& at);

}  // namespace floorsum::balance
