#include <doctest.h>

#include "dsscap/capacity.hpp"
#include "dsscap/cli.hpp"
#include "dsscap/json_io.hpp"
#include "dsscap/secrecy.hpp"

#include "support/fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dsscap;
using namespace dsscap::testing;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_file(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

nlohmann::json results_of(const CliResult& r) {
  REQUIRE(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  return doc["results"];
}

}  // namespace

TEST_CASE("bounds command reports the worked example in json") {
  CliResult r = cli({"bounds", data_file("example1.json"), "--exact",
                     "--format", "json"});
  nlohmann::json results = results_of(r);
  CHECK(results["avg_upper"] == "10/3");
  CHECK(results["c_min"] == "2");
  CHECK(results["c_max"] == "3");
  CHECK(results["cprime_min"] == "2");
  CHECK(results["cprime_max"] == "3");
  CHECK(results["exact"]["value"] == "3");
  CHECK(results["exact"]["witness"]["tuple"] == nlohmann::json({1, 2}));

  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "bounds");
  CHECK(doc["warnings"].is_array());
  CHECK(doc["config_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("capacity command returns the minimizing witness") {
  CliResult r =
      cli({"capacity", data_file("example2.json"), "--format", "json"});
  nlohmann::json results = results_of(r);
  CHECK(results["value"] == "9");
  CHECK(results["witness"]["tuple"] == nlohmann::json({1, 3}));
  CHECK(results["witness"]["terms"] == nlohmann::json({"5", "4"}));
}

TEST_CASE("json output round-trips to the in-process values") {
  CliResult r = cli({"bounds", data_file("example2.json"), "--exact",
                     "--format", "json"});
  nlohmann::json results = results_of(r);
  DssConfig config = load_config_file(data_file("example2.json"));
  BoundsReport report = bounds_report(config, true);
  CHECK(parse_rational(results["avg_upper"].get<std::string>()) ==
        report.avg_upper);
  CHECK(parse_rational(results["c_min"].get<std::string>()) == report.c_min);
  CHECK(parse_rational(results["c_max"].get<std::string>()) == report.c_max);
  CHECK(parse_rational(results["exact"]["value"].get<std::string>()) ==
        report.exact->value);

  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["config_digest"] == config_digest(config));
}

TEST_CASE("identical invocations are byte identical") {
  std::vector<std::string> args = {"simulate", data_file("example1.json"),
                                   "--file-size", "3", "--trials", "20",
                                   "--rounds", "5", "--seed", "42",
                                   "--format", "json"};
  CliResult a = cli(args);
  CliResult b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("secrecy command") {
  CliResult r = cli({"secrecy", data_file("example1.json"), "--ell", "1",
                     "--format", "json"});
  CHECK(results_of(r)["bound"] == "5/3");

  CliResult bad = cli({"secrecy", data_file("example1.json"), "--ell", "3"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("ParamViolation") != std::string::npos);
}

TEST_CASE("lift command with the explicit check") {
  CliResult r = cli({"lift", data_file("example1.json"), "--explicit",
                     "--format", "json"});
  nlohmann::json results = results_of(r);
  CHECK(results["alpha_b"] == "10");
  CHECK(results["beta_b"] == "10");
  CHECK(results["capacity_b"] == "20");
  CHECK(results["implied_bound"] == "10/3");
  CHECK(results["check"]["lifted_total"] == "18");
  CHECK(results["check"]["margin_big"] == "2");
}

TEST_CASE("flowcheck agrees and can dump the witness graph") {
  auto dump_path =
      std::filesystem::temp_directory_path() / "dsscap_witness_graph.txt";
  CliResult r = cli({"flowcheck", data_file("example1.json"), "--exhaustive",
                     "--dump-graph", dump_path.string(), "--format", "json"});
  nlohmann::json results = results_of(r);
  CHECK(results["exact"] == "3");
  CHECK(results["chains"] == "3");
  CHECK(results["exhaustive"] == "3");
  CHECK(results["agree"] == true);
  std::ifstream dump(dump_path);
  REQUIRE(dump.good());
  std::string first_line;
  std::getline(dump, first_line);
  CHECK(first_line.rfind("# flow graph:", 0) == 0);
  std::filesystem::remove(dump_path);
}

TEST_CASE("simulate adversarial mode certifies the cut") {
  CliResult r = cli({"simulate", data_file("example1.json"), "--file-size", "4",
                     "--adversarial", "--trials", "25", "--seed", "7",
                     "--format", "json"});
  nlohmann::json results = results_of(r);
  CHECK(results["capacity"] == "3");
  CHECK(results["max_rank"].get<int>() <= 3);
  CHECK(results["certified"] == true);
}

TEST_CASE("validate reports warnings without failing") {
  CliResult r = cli({"validate", data_file("warned.json"), "--format", "json"});
  CHECK(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["valid"] == true);
  REQUIRE(doc["warnings"].size() == 1);
}

TEST_CASE("invalid inputs exit with code 1") {
  CliResult bad_params = cli({"validate", data_file("bad_params.json")});
  CHECK(bad_params.code == 1);
  CHECK(bad_params.err.find("ParamViolation") != std::string::npos);

  CliResult missing = cli({"bounds", data_file("no_such_file.json")});
  CHECK(missing.code == 1);

  CliResult garbage = cli({"bounds", data_file("garbage.json")});
  CHECK(garbage.code == 1);
  CHECK(garbage.err.find("ParseError") != std::string::npos);

  CliResult no_args = cli({});
  CHECK(no_args.code == 1);

  CliResult bad_flag = cli({"bounds", data_file("example1.json"), "--nope"});
  CHECK(bad_flag.code == 1);
}

TEST_CASE("help exits cleanly") {
  CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("bounds") != std::string::npos);
}

TEST_CASE("full model configs omit the helper-identity results") {
  CliResult r = cli({"bounds", data_file("full_model.json"), "--exact",
                     "--format", "json"});
  nlohmann::json results = results_of(r);
  CHECK(results.contains("avg_upper"));
  CHECK_FALSE(results.contains("cprime_min"));
  CHECK_FALSE(results.contains("exact"));

  CliResult cap = cli({"capacity", data_file("full_model.json")});
  CHECK(cap.code == 1);
  CHECK(cap.err.find("ModelUnsupported") != std::string::npos);
}

TEST_CASE("the enumeration guard env var widens the search") {
  setenv("DSS_CAPACITY_MAX_N", "12", 1);
  CliResult ok = cli({"capacity", data_file("wide.json"), "--format", "json"});
  unsetenv("DSS_CAPACITY_MAX_N");
  CHECK(ok.code == 0);
  CHECK(results_of(ok)["value"] == "1");

  CliResult refused = cli({"capacity", data_file("wide.json")});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("SearchTooLarge") != std::string::npos);
}

TEST_CASE("table output carries decimal hints for non-integers") {
  CliResult r = cli({"bounds", data_file("example1.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("avg_upper: 10/3") != std::string::npos);
  CHECK(r.out.find("c_min: 2") != std::string::npos);
}
