#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "kreweras/cli.hpp"
#include "kreweras/rational.hpp"

using namespace kreweras;
using Json = nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "kreweras");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Result r;
  r.code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("series rows encode the low-order excursions") {
  const Result r = invoke({"series", "--variant", "cell", "--order", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["meta"]["command"] == "series");
  CHECK(doc["meta"]["truncation"] == 3);
  CHECK(doc["meta"].contains("version"));
  const Json& rows = doc["rows"];
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["coefficient"] == Json::parse(R"([[0,"1","1"]])"));
  CHECK(rows[1]["coefficient"] == Json::parse(R"([[1,"1","1"]])"));
  CHECK(rows[2]["coefficient"] == Json::parse(R"([[-1,"1","1"],[2,"1","1"]])"));
  CHECK(rows[3]["coefficient"] == Json::parse(R"([[0,"5","1"],[3,"1","1"]])"));
}

TEST_CASE("series csv has one triple per line") {
  const Result r = invoke({"series", "--order", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "n,k,count\n0,0,1\n1,1,1\n2,-1,1\n2,2,1\n3,0,5\n3,3,1\n");
}

TEST_CASE("cone command") {
  const Result r = invoke({"cone", "--k", "0", "--k1", "-1", "--k2", "1", "--order", "0"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["n"] == 0);
  CHECK(doc["rows"][0]["count"] == "1");
  CHECK(doc["summary"]["classification"] == "algebraic");
  CHECK(doc["summary"]["asymptotic"]["exponent"] == -2.5);

  const Result d = invoke({"cone", "--k", "0", "--k1", "-3", "--k2", "3", "--order", "6"});
  REQUIRE(d.code == 0);
  const Json dd = Json::parse(d.out);
  CHECK(dd["summary"]["classification"] == "d-finite-not-algebraic");
  CHECK(dd["summary"]["asymptotic"].is_null());
}

TEST_CASE("verify kernel suite") {
  const Result r = invoke({"verify", "--suite", "kernel", "--t", "0.2", "--samples", "100"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["rows"][0]["pass"] == true);
  CHECK(doc["rows"][0]["max_residual"].get<double>() < 1e-10);
  CHECK(doc["summary"]["pass"] == true);
}

TEST_CASE("verify exact suites") {
  for (const char* suite : {"functional-eq", "oracle-equivalence", "reflection-cross-check"}) {
    const Result r = invoke({"verify", "--suite", suite, "--variant", "vertex", "--order", "9"});
    CAPTURE(suite);
    CHECK(r.code == 0);
  }
}

TEST_CASE("a loose theta tolerance surfaces as a numeric failure") {
  const Result r = invoke({"verify", "--suite", "kernel", "--precision", "1e-3", "--samples", "20"});
  CHECK(r.code == cli::kExitNumeric);
  ::unsetenv("KREWERAS_PRECISION");
}

TEST_CASE("validation errors exit with code 1") {
  CHECK(invoke({"series", "--order", "-1"}).code == cli::kExitValidation);
  CHECK(invoke({"cone", "--order", "3"}).code == cli::kExitValidation);
  CHECK(invoke({"cone", "--k", "1", "--k1", "-1", "--k2", "2"}).code == cli::kExitValidation);
  CHECK(invoke({"cone", "--k", "0", "--k1", "-1"}).code == cli::kExitValidation);
  CHECK(invoke({"asymptotics", "--alpha", "2/4"}).code == cli::kExitValidation);
  CHECK(invoke({"asymptotics", "--alpha", "3/2"}).code == cli::kExitValidation);
  CHECK(invoke({"asymptotics", "--alpha", "x"}).code == cli::kExitValidation);
  CHECK(invoke({"asymptotics", "--alpha", "2/3", "--order", "9"}).code == cli::kExitValidation);
  CHECK(invoke({"verify", "--suite", "nope"}).code == cli::kExitValidation);
  CHECK(invoke({"verify", "--t", "0.5"}).code == cli::kExitValidation);
  CHECK(invoke({"bogus"}).code == cli::kExitValidation);
  const Result r = invoke({"series", "--format", "xml"});
  CHECK(r.code == cli::kExitValidation);
  CHECK(!r.err.empty());
}

TEST_CASE("alpha parsing") {
  CHECK(cli::parse_alpha("1/2").q == 2);
  CHECK(cli::parse_alpha("0").p == 0);
  CHECK(cli::parse_alpha("1/1").p == 1);
  CHECK_THROWS_AS(cli::parse_alpha("2/4"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_alpha("-1/3"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_alpha("1/0"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_alpha("1/2x"), cli::ConfigError);
}

TEST_CASE("output is deterministic and counts are exact integers") {
  const std::vector<std::string> args = {"series", "--variant", "vertex", "--order", "40"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json doc = Json::parse(a.out);
  for (const auto& row : doc["rows"]) {
    for (const auto& term : row["coefficient"]) {
      Integer num(term[1].get<std::string>());
      CHECK(sgn(num) > 0);
      CHECK(term[2] == "1");
    }
  }
}

TEST_CASE("asymptotics and oracle commands") {
  const Result r = invoke({"asymptotics", "--alpha", "1/2", "--order", "30", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,coefficient_re", 0) == 0);
  const Result c = invoke({"asymptotics", "--k", "0", "--k1", "-1", "--k2", "1", "--order", "30"});
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["rows"].size() == 10);

  const Result o = invoke({"oracle", "--order", "2", "--format", "csv"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("n,k,a,b,count\n0,0,0,0,1\n1,-1,0,1,1\n1,0,1,1,1\n1,1,0,0,1\n2,", 0) == 0);
  CHECK(invoke({"--help"}).code == 0);
}
