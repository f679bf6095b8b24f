#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lpvol::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("section json output carries the stable schema") {
  const auto r = run({"section", "--n", "7", "--p", "4", "--dir", "diag:2", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  for (const char* key : {"command", "params", "value", "err_estimate", "method"}) {
    INFO("missing key ", key);
    CHECK(doc.contains(key));
  }
  CHECK(doc["command"] == "section");
  CHECK(doc["method"] == "quadrature");
  CHECK(std::fabs(doc["value"].get<double>() - std::pow(2.0, 0.25)) < 1e-6);
}

TEST_CASE("kernel json, both kernels") {
  const auto g = run({"kernel", "--p", "2", "--s", "1.0", "--format", "json"});
  REQUIRE(g.code == 0);
  const json dg = json::parse(g.out);
  CHECK(std::fabs(dg["value"].get<double>() - std::exp(-0.25)) < 1e-8);

  const auto d = run({"kernel", "--q", "2", "--s", "1.0", "--format", "json"});
  REQUIRE(d.code == 0);
  const json dd = json::parse(d.out);
  CHECK(std::fabs(dd["value"].get<double>() - std::exp(-0.25)) < 1e-8);
}

TEST_CASE("roots command reports p0 near 26.265") {
  const auto r = run({"roots", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc.contains("results"));
  bool found = false;
  for (const auto& item : doc["results"]) {
    CHECK(item.contains("value"));
    CHECK(item.contains("err_estimate"));
    CHECK(item.contains("method"));
    if (item["name"] == "p0") {
      found = true;
      CHECK(std::fabs(item["value"].get<double>() - 26.265) < 0.01);
    }
  }
  CHECK(found);
}

TEST_CASE("diagonal comparison through the CLI: n=100 beats a^(2) at p=3") {
  const auto big = run({"section", "--n", "100", "--p", "3", "--dir", "diag:100",
                        "--format", "json"});
  const auto two = run({"section", "--n", "100", "--p", "3", "--dir", "diag:2",
                        "--format", "json"});
  REQUIRE(big.code == 0);
  REQUIRE(two.code == 0);
  CHECK(json::parse(big.out)["value"].get<double>() > json::parse(two.out)["value"].get<double>());
}

TEST_CASE("csv output is RFC-4180 with 17 significant digits") {
  const auto r = run({"kernel", "--p", "3", "--s", "0.5", "--format", "csv"});
  REQUIRE(r.code == 0);
  // CRLF record separators.
  CHECK(r.out.find("\r\n") != std::string::npos);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.rfind("command,name,value,err_estimate,method", 0) == 0);
  // The value field round-trips through 17 significant digits.
  const auto first_comma = row.find(',');
  const auto second_comma = row.find(',', first_comma + 1);
  const auto third_comma = row.find(',', second_comma + 1);
  const std::string value_field = row.substr(second_comma + 1, third_comma - second_comma - 1);
  CHECK(value_field.size() >= 17);
  const double parsed = std::stod(value_field);
  const json dj = json::parse(run({"kernel", "--p", "3", "--s", "0.5", "--format", "json"}).out);
  CHECK(parsed == dj["value"].get<double>());
}

TEST_CASE("scan command emits a table of k rows") {
  const auto r = run({"scan", "--n", "6", "--p", "1.5", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["params"]["best_k"] == 1);
  CHECK(doc["results"].size() == 6);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"section", "--n", "7"}).code == 2);                       // missing --p
  CHECK(run({"section", "--n", "7", "--p", "0.5"}).code == 2);         // out of range
  CHECK(run({"section", "--n", "3", "--p", "3", "--dir", "vec:1,1,0"}).code == 2);
  CHECK(run({"section", "--n", "3", "--p", "3", "--dir", "bogus"}).code == 2);
  CHECK(run({"kernel", "--p", "2", "--q", "2", "--s", "1"}).code == 2);  // both kinds
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"section", "--n", "7", "--p", "3", "--out", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 0);
}

TEST_CASE("verify runs the lemma suite and exits 0 when green") {
  const auto r = run({"verify", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["results"].size() == 6);
  for (const auto& item : doc["results"]) {
    CHECK(item["pass"] == "true");
  }
}

TEST_CASE("roots defaults to json output") {
  const auto r = run({"roots"});
  REQUIRE(r.code == 0);
  CHECK_NOTHROW(json::parse(r.out));
}

TEST_CASE("crossover command, projection q = 8/5") {
  const auto r = run({"crossover", "--q", "1.6", "--n-max", "30", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["params"]["n_theorem"].get<double>() == doctest::Approx(20.0));
  CHECK(doc["params"]["theorem_verified"] == true);
  CHECK(!doc["results"].empty());
}

TEST_CASE("--out writes the document to a file") {
  const std::string path = "cli_test_out.json";
  const auto r = run({"kernel", "--p", "2", "--s", "0.5", "--format", "json", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  json doc;
  f >> doc;
  CHECK(std::fabs(doc["value"].get<double>() - std::exp(-0.0625)) < 1e-8);
  std::remove(path.c_str());
}

TEST_CASE("--tol tightens the reported error") {
  const auto loose = run({"section", "--n", "4", "--p", "3", "--dir", "diag:3",
                          "--tol", "1e-6", "--format", "json"});
  const auto tight = run({"section", "--n", "4", "--p", "3", "--dir", "diag:3",
                          "--tol", "1e-10", "--format", "json"});
  REQUIRE(loose.code == 0);
  REQUIRE(tight.code == 0);
  const double lv = json::parse(loose.out)["value"].get<double>();
  const double tv = json::parse(tight.out)["value"].get<double>();
  CHECK(std::fabs(lv - tv) < 1e-6);
  CHECK(json::parse(tight.out)["err_estimate"].get<double>() <=
        json::parse(loose.out)["err_estimate"].get<double>());
}

TEST_CASE("oracle is reproducible under a fixed seed") {
  const std::vector<std::string> args = {"oracle", "--n",    "4",  "--p",      "3",
                                         "--dir",  "diag:4", "--samples", "20000",
                                         "--seed", "9",      "--format",  "json"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["value"] == json::parse(b.out)["value"]);
  CHECK(json::parse(a.out)["method"] == "monte_carlo");
}
