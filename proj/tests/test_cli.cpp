#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kbonacci/cli.hpp"
#include "kbonacci/ap.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/recurrence.hpp"

using namespace kbonacci;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

json last_record(const std::string& text) { return json::parse(lines(text).back()); }

}  // namespace

TEST_CASE("index specs") {
  CHECK(cli::parse_index_spec("7") == std::vector<std::int64_t>{7});
  CHECK(cli::parse_index_spec("0..4") == std::vector<std::int64_t>{0, 1, 2, 3});
  CHECK(cli::parse_index_spec("1,5..7,10") == std::vector<std::int64_t>{1, 5, 6, 10});
  CHECK_THROWS_AS(cli::parse_index_spec("4..4"), InvalidArgumentError);
  CHECK_THROWS_AS(cli::parse_index_spec("-3"), InvalidArgumentError);
  CHECK_THROWS_AS(cli::parse_index_spec("x"), InvalidArgumentError);
  CHECK_THROWS_AS(cli::parse_index_spec("1,,2"), InvalidArgumentError);
}

TEST_CASE("digest is FNV-1a") {
  CHECK(cli::digest("") == "cbf29ce484222325");
  CHECK(cli::digest("a") == "af63dc4c8601ec8c");
}

TEST_CASE("compute") {
  Run r = run({"compute", "--k", "3", "--n", "8", "--method", "recursive"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "24\n");
  CHECK(run({"compute", "--k", "4", "--n", "3", "--method", "binet"}).out == "1\n");
  CHECK(run({"compute", "--k", "2", "--n", "0..6", "--method", "matrix"}).out == "0\n1\n1\n2\n3\n5\n");
  r = run({"compute", "--k", "2", "--n", "0..3", "--format", "csv"});
  CHECK(lines(r.out).size() == 4);
  CHECK(lines(r.out)[0].rfind("k,n,method,value", 0) == 0);
}

TEST_CASE("compute JSON round trip") {
  for (const char* method : {"recursive", "matrix", "binet", "dominant"}) {
    const Run r = run({"compute", "--k", "5", "--n", "40,90,250", "--method", method, "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    for (const std::string& line : lines(r.out)) {
      const json j = json::parse(line);
      CHECK(j["method"] == method);
      CHECK(j["k"] == 5);
      const mpz_class value(j["value"].get<std::string>());
      CHECK(value == kbonacci_recursive(5, j["n"].get<std::int64_t>()));
      CHECK(json::parse(j.dump()) == j);
    }
  }
}

TEST_CASE("compute failures") {
  Run r = run({"compute", "--k", "3", "--n", "2", "--method", "dominant"});
  CHECK(r.code == cli::kExitNumeric);
  CHECK(r.err.find("n_min") != std::string::npos);
  CHECK(run({"compute", "--k", "1", "--n", "2"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--k", "65", "--n", "2"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--k", "3"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--k", "3", "--n", "5..2"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--k", "3", "--n", "5", "--method", "magic"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--k", "3", "--n", "5", "--prec", "16"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("roots") {
  Run r = run({"roots", "--k", "2", "--prec", "128"});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["rootset"]["k"] == 2);
  CHECK(j["rootset"]["roots"][0]["re"].get<std::string>().rfind("1.6180339887498948482045868343656381177", 0) == 0);
  CHECK(j["certificate"]["discriminant"] == "5");

  r = run({"roots", "--k", "3"});
  j = json::parse(r.out);
  CHECK(j["rootset"]["prec_bits"] == 256);
  int real = 0;
  for (const auto& z : j["rootset"]["roots"]) real += ApReal(256, z["im"].get<std::string>().c_str()).is_zero();
  CHECK(real == 1);
  CHECK(j["certificate"]["nonzero"] == true);
  CHECK(j["certificate"]["discriminant"] == "-44");

  CHECK(run({"roots", "--k", "1"}).code == cli::kExitUsage);
  CHECK(run({"roots", "--k", "64"}).code == cli::kExitOk);
  CHECK(run({"roots", "--k", "4", "--format", "human"}).out.find("phi_4") != std::string::npos);
}

TEST_CASE("verify") {
  Run r = run({"verify", "--k", "2..5", "--n", "0..40", "--trials", "5", "--lemma-k", "2..4"});
  CHECK(r.code == cli::kExitOk);
  json summary = last_record(r.out);
  CHECK(summary["suite"] == "summary");
  CHECK(summary["binet_cells"] == 120);
  CHECK(summary["lemma_instances"] == 10);
  CHECK(summary["lemma_status"] == "passed");
  CHECK(summary["pass"] == true);
  CHECK(lines(r.out).size() == 120 + 10 + 1);

  r = run({"verify", "--k", "2..4", "--n", "0..10", "--trials", "0"});
  CHECK(r.code == cli::kExitOk);
  CHECK(last_record(r.out)["lemma_status"] == "skipped");

  r = run({"verify", "--k", "2..4", "--n", "0..30", "--trials", "0", "--inject-fault"});
  CHECK(r.code == cli::kExitVerifyFailed);
  CHECK(r.err.find("k=3 n=29") != std::string::npos);
  CHECK(last_record(r.out)["binet_failures"] == 1);
}

TEST_CASE("verify is deterministic across job counts") {
  const Run a = run({"verify", "--k", "2..6", "--n", "0..50", "--trials", "20", "--recheck-doubled"});
  const Run b = run({"verify", "--k", "2..6", "--n", "0..50", "--trials", "20", "--recheck-doubled", "--jobs", "4"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("seed precedence") {
  const std::vector<std::string> base{"verify", "--k", "2", "--n", "0..2", "--trials", "1", "--lemma-k", "3"};
  ::unsetenv("KBONACCI_SEED");
  CHECK(last_record(run(base).out)["seed"] == cli::kDefaultSeed);
  ::setenv("KBONACCI_SEED", "1234", 1);
  CHECK(last_record(run(base).out)["seed"] == 1234);
  std::vector<std::string> with_flag = base;
  with_flag.insert(with_flag.end(), {"--seed", "99"});
  CHECK(last_record(run(with_flag).out)["seed"] == 99);
  ::setenv("KBONACCI_SEED", "not-a-number", 1);
  CHECK(run(base).code == cli::kExitUsage);
  ::unsetenv("KBONACCI_SEED");
}

TEST_CASE("bench") {
  Run r = run({"bench", "--k", "3", "--n", "500"});
  REQUIRE(r.code == cli::kExitOk);
  auto rows = lines(r.out);
  CHECK(rows[0] == "backend,k,n,wall_seconds,peak_prec_bits,digest");
  CHECK(rows.size() == 5);
  const std::string expected = cli::digest(kbonacci_recursive(3, 500).get_str());
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].size() - 16) == expected);

  r = run({"bench", "--k", "2", "--n", "100", "--methods", "matrix"});
  CHECK(lines(r.out).size() == 2);

  r = run({"bench", "--k", "3", "--n", "2", "--methods", "recursive,dominant"});
  CHECK(r.code == cli::kExitOk);
  CHECK(lines(r.out).size() == 2);
  CHECK(r.err.find("skipping dominant") != std::string::npos);

  r = run({"bench", "--k", "2", "--n", "300", "--inject-fault"});
  CHECK(r.code == cli::kExitVerifyFailed);
  CHECK(r.out.empty());
  CHECK(r.err.find("digest mismatch") != std::string::npos);
  CHECK(run({"bench", "--methods", "fast"}).code == cli::kExitUsage);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "kbonacci_cli_test.txt";
  const Run r = run({"compute", "--k", "2", "--n", "10", "--output", path.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "55\n");
  std::filesystem::remove(path);
}
