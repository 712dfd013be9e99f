#include "floorsum/balance.hpp"
#include "floorsum/errors.hpp"

#include <doctest.h>

#include <random>

using namespace floorsum;
using namespace floorsum::balance;

namespace {

const std::vector<std::string> kParams{"r", "w"};

std::vector<LinearExponentForm> forms(std::initializer_list<const char*> texts) {
  std::vector<LinearExponentForm> out;
  for (const char* t : texts) out.push_back(parse_form(t, kParams));
  return out;
}

std::map<std::string, ParameterBox> unit_box() {
  return {{"r", {Rational(0), Rational(1)}}, {"w", {Rational(0), Rational(1)}}};
}

// No random feasible point beats the reported optimum.
void check_certificate(const std::vector<LinearExponentForm>& fs, const BalanceSolution& sol) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    Assignment at;
    for (const auto& p : kParams) {
      const Rational jitter(static_cast<long long>(rng() % 2001) - 1000, 100000);
      Rational v = sol.assignment.at(p) + (i % 2 ? jitter : Rational(static_cast<long long>(rng() % 1001), 1000));
      if (v < 0) v = 0;
      if (v > 1) v = 1;
      at[p] = v;
    }
    REQUIRE(evaluate_at(fs, at).max >= sol.value);
  }
}

}  // namespace

TEST_CASE("parser") {
  const auto f = parse_form("11/24 + 7w/12", kParams);
  CHECK(f.constant == Rational(11, 24));
  CHECK(f.coefficients.at("w") == Rational(7, 12));
  const auto g = parse_form("1/2 - (w + r)", kParams);
  CHECK(g.coefficients.at("r") == -1);
  CHECK(g.coefficients.at("w") == -1);
  const auto h = parse_form("7/15 + 32*r/45 - 0.25", kParams);
  CHECK(h.constant == Rational(7, 15) - Rational(1, 4));
  CHECK(h.coefficients.at("r") == Rational(32, 45));
  CHECK_THROWS_AS(parse_form("1/2 + z", kParams), ParseError);
  CHECK_THROWS_AS(parse_form("1/2 + r*w", kParams), ParseError);
  CHECK_THROWS_AS(parse_form("(1/2", kParams), ParseError);
}

TEST_CASE("main balance") {
  const auto fs = forms({"7/15 + r", "11/24 + 7w/12", "1/2 - w - r"});
  const auto sol = minimize_max(fs, kParams, unit_box());
  CHECK(sol.assignment.at("r") == Rational(1, 195));
  CHECK(sol.assignment.at("w") == Rational(3, 130));
  CHECK(sol.value == Rational(92, 195));
  CHECK(sol.value == Rational(7, 15) + Rational(1, 195));
  CHECK(sol.active.size() == 3);
  check_certificate(fs, sol);
}

TEST_CASE("alternative first form") {
  const auto fs = forms({"7/15 + 32r/45", "11/24 + 7w/12", "1/2 - w - r"});
  const auto sol = minimize_max(fs, kParams, unit_box());
  CHECK(sol.assignment.at("r") == Rational(6, 923));
  CHECK(sol.value == Rational(435, 923));
  CHECK(sol.value == Rational(7, 15) + Rational(64, 13845));
  CHECK(sol.assignment.at("w") == Rational(41, 1846));
  CHECK(sol.assignment.at("w") != Rational(205, 923));
  // the printed w gives a strictly worse maximum
  const auto printed = evaluate_at(fs, {{"r", Rational(6, 923)}, {"w", Rational(205, 923)}});
  CHECK(printed.max > sol.value);
  check_certificate(fs, sol);
}

TEST_CASE("one parameter, boundary optimum, ties") {
  const std::vector<std::string> p{"t"};
  const std::vector<LinearExponentForm> fs{parse_form("1 + t", p), parse_form("2 - t", p)};
  const auto sol = minimize_max(fs, p, {{"t", {Rational(0), Rational(1, 4)}}});
  CHECK(sol.assignment.at("t") == Rational(1, 4));
  CHECK(sol.value == Rational(7, 4));
  const std::vector<LinearExponentForm> flat{parse_form("1", p)};
  const auto tie = minimize_max(flat, p, {{"t", {Rational(0), Rational(1)}}});
  CHECK(tie.value == 1);
  CHECK(tie.assignment.at("t") == 0);
}

TEST_CASE("unbounded and infeasible") {
  const std::vector<std::string> p{"t"};
  const std::vector<LinearExponentForm> fs{parse_form("1 - t", p)};
  CHECK_THROWS_AS(minimize_max(fs, p, {{"t", {Rational(0), std::nullopt}}}), DomainError);
  CHECK_THROWS_AS(minimize_max(fs, p, {{"t", {Rational(1), Rational(0)}}}), DomainError);
  const auto sol = minimize_max(fs, p, {{"t", {std::nullopt, Rational(3)}}});
  CHECK(sol.value == -2);
  CHECK_THROWS_AS(evaluate_at(fs, {}), DomainError);
}
