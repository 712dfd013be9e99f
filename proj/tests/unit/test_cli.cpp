#include "floorsum/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "floorsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = floorsum::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("floorsum text output is the bare value") {
  const auto r = run({"floorsum", "--f", "tau2", "--x", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "17\n");
  const auto d = run({"floorsum", "--f", "tau2", "--x", "10", "--method", "direct"});
  CHECK(d.out == "17\n");
}

TEST_CASE("floorsum json and dual method") {
  const auto r = run({"floorsum", "--f", "tau3", "--x", "100000", "--method", "dual", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const auto b = run({"floorsum", "--f", "tau3", "--x", "100000"});
  CHECK(j["value"].get<std::string>() + "\n" == b.out);
  CHECK(j["identity_mismatches"] == 0);
}

TEST_CASE("identical inputs give identical bytes") {
  const std::vector<std::string> args{"--threads", "3", "floorsum", "--f", "lambda", "--x", "1000000"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);
  std::vector<std::string> one = args;
  one[1] = "1";
  CHECK(run(one).out == a.out);
}

TEST_CASE("exppair json carries exact fractions") {
  const auto r = run({"exppair", "--word", "BA^5", "--base", "13/84,55/84"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["kappa"]["num"] == "1653");
  CHECK(j["kappa"]["den"] == "3494");
  CHECK(j["lambda"]["num"] == "880");
  CHECK(j["lambda"]["den"] == "1747");
}

TEST_CASE("balance json") {
  const auto r = run({"balance", "--param", "r", "--param", "w", "--form", "7/15+r", "--form", "11/24+7w/12",
                      "--form", "1/2-w-r"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["value"]["num"] == "92");
  CHECK(j["value"]["den"] == "195");
  CHECK(j["assignment"]["w"]["num"] == "3");
  CHECK(j["active"].size() == 3);
}

TEST_CASE("constant, vaughan, vaaler, classify, sieve") {
  auto c = run({"constant", "--f", "tau2", "--terms", "10000"});
  REQUIRE(c.code == 0);
  auto cj = json::parse(c.out);
  CHECK(cj["lo"].get<double>() < cj["hi"].get<double>());
  CHECK(cj["k"] == 2);

  auto v = run({"vaughan-check", "--D", "500", "--g", "phase", "--x", "12345"});
  REQUIRE(v.code == 0);
  CHECK(json::parse(v.out)["rel_err"].get<double>() < 1e-9);

  auto va = run({"vaaler-check", "--H", "5", "--points", "200"});
  REQUIRE(va.code == 0);
  CHECK(va.out.rfind("x,psi,psi_star,delta,slack\n", 0) == 0);

  auto cl = run({"classify", "--k", "3", "--D", "1000", "--factors", "10,10,10"});
  REQUIRE(cl.code == 0);
  CHECK(json::parse(cl.out)["case"] == "II");

  auto s = run({"sieve", "--f", "lambda", "--lo", "1", "--hi", "10"});
  REQUIRE(s.code == 0);
  CHECK(s.out == "n,value\n1,1\n2,2\n3,3\n4,2\n5,5\n6,1\n7,7\n8,2\n9,3\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == floorsum::cli::kUsageError);
  CHECK(run({"floorsum", "--f", "tau2"}).code == floorsum::cli::kUsageError);
  CHECK(run({"floorsum", "--f", "sigma", "--x", "10"}).code == floorsum::cli::kUsageError);
  CHECK(run({"floorsum", "--f", "tau2", "--x", "0"}).code == floorsum::cli::kDomainError);
  CHECK(run({"vaughan-check", "--D", "50"}).code == floorsum::cli::kDomainError);
  CHECK(run({"--max-terms", "100", "floorsum", "--f", "tau2", "--x", "100000", "--method", "direct"}).code ==
        floorsum::cli::kBudgetExceeded);
  CHECK(run({"exppair", "--word", "AC"}).code == floorsum::cli::kUsageError);
  CHECK(run({"--help"}).code == 0);
}
