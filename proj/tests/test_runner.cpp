#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fplab/runner.hpp"

using namespace fplab;

namespace {

std::string rows_to_csv(const std::vector<CheckReport>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(FPLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round trip is lossless") {
  RunConfig cfg;
  cfg.p_list = {101, 1009};
  cfg.families = {FamilySpec::parse("interval(start=1;size=8)"),
                  FamilySpec::parse("random(size=12;seed=3;zero_free=1)")};
  cfg.checks = {"sp_65", "cauchy_schwarz_sum"};
  cfg.sizes = {8, 16};
  cfg.seed = 7;
  cfg.format = "json";
  cfg.threads = 4;
  std::string text = cfg.to_text();
  CHECK(RunConfig::parse_text(text).to_text() == text);

  CHECK_THROWS_AS(RunConfig::parse_text("format = xml\n"), usage_error);
  CHECK_THROWS_AS(RunConfig::parse_text("threads = 0\n"), usage_error);
  CHECK_THROWS_AS(RunConfig::parse_text("p = \n"), usage_error);
  CHECK_THROWS_AS(RunConfig::parse_text("nonsense\n"), usage_error);
  CHECK_NOTHROW(RunConfig::parse_text("# comment\n\np = 7\n"));
}

TEST_CASE("csv schema is fixed and stable") {
  CHECK(std::string(kCsvHeader) ==
        "check_name,p,family,params,size_A,size_B,lhs,rhs,ratio,constraint_ok,seed");
  RunConfig cfg;
  cfg.p_list = {101};
  cfg.checks = {"cauchy_schwarz_sum"};
  auto rows = run_checks(cfg);
  std::string csv = rows_to_csv(rows);
  CHECK(csv.rfind(kCsvHeader, 0) == 0);
  // no field may smuggle a comma: every row has exactly 10 separators
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
  }
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  RunConfig cfg;
  cfg.p_list = {101};
  cfg.checks = {"sp_65", "cauchy_schwarz_sum", "triples_upper", "beck_lines"};
  std::string a = rows_to_csv(run_checks(cfg));
  std::string b = rows_to_csv(run_checks(cfg));
  cfg.threads = 3;
  std::string c = rows_to_csv(run_checks(cfg));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("compute rows carry bare values") {
  RunConfig cfg;
  cfg.p_list = {7};
  cfg.families = {FamilySpec::parse("interval(start=1;size=3)")};
  cfg.quantities = {"energy", "triples", "sumset_size"};
  auto rows = run_compute(cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK_FALSE(r.has_bound);
  // energy of {1,2,3} in F_7
  auto energy = std::find_if(rows.begin(), rows.end(),
                             [](const CheckReport& r) { return r.name == "energy"; });
  REQUIRE(energy != rows.end());
  CHECK(energy->lhs == 19);

  RunConfig single;
  single.p_list = {101};
  single.families = {FamilySpec::parse("interval(start=5;size=1)")};
  single.quantities = {"triples"};
  CHECK(run_compute(single)[0].lhs == 0);

  RunConfig full;
  full.p_list = {7};
  full.families = {FamilySpec::parse("interval(start=0;size=7)")};
  full.quantities = {"sumset_size"};
  CHECK(run_compute(full)[0].lhs == 7);

  RunConfig bad;
  bad.quantities = {"no_such_quantity"};
  CHECK_THROWS_AS(run_compute(bad), usage_error);
}

TEST_CASE("check selection accepts names and prefix groups") {
  RunConfig cfg;
  cfg.p_list = {101};
  cfg.checks = {"distances"};
  auto rows = run_checks(cfg);
  std::set<std::string> names;
  for (auto& r : rows) names.insert(r.name);
  CHECK(names == std::set<std::string>{"distances_quadratic", "distances_cubic"});
  cfg.checks = {"made_up"};
  CHECK_THROWS_AS(run_checks(cfg), usage_error);
}

TEST_CASE("sweep appends exponent fit rows") {
  RunConfig cfg;
  cfg.p_list = {1009};
  cfg.families = {FamilySpec::parse("interval(start=1;size=8)")};
  cfg.checks = {"sp_65"};
  cfg.sizes = {8, 12, 16, 24};
  auto rows = run_sweep(cfg);
  auto fit = std::find_if(rows.begin(), rows.end(),
                          [](const CheckReport& r) { return r.name == "sp_65_fit"; });
  REQUIRE(fit != rows.end());
  CHECK(fit->family == "interval");
  // |AA| of an interval grows near-quadratically, so the fitted exponent for
  // |A+A|+|AA| clears 6/5 comfortably
  CHECK(fit->lhs >= 1.2);
}

TEST_CASE("json output mirrors csv rows") {
  RunConfig cfg;
  cfg.p_list = {7};
  cfg.families = {FamilySpec::parse("interval(start=1;size=3)")};
  cfg.checks = {"cauchy_schwarz_sum"};
  auto rows = run_checks(cfg);
  std::ostringstream os;
  write_json(os, rows);
  auto arr = nlohmann::json::parse(os.str());
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == rows.size());
  CHECK(arr[0]["check_name"] == "cauchy_schwarz_sum");
  CHECK(arr[0]["lhs"] == 95.0);
  CHECK(arr[0]["constraint_ok"] == true);
}

TEST_CASE("oracle battery passes and the corrupt hook is detected") {
  RunConfig cfg;
  cfg.oracle_trials = 2;
  cfg.oracle_size = 8;
  auto outcomes = run_oracles(cfg);
  for (const auto& o : outcomes) {
    INFO(o.name);
    CHECK(o.ok);
  }
  cfg.corrupt = true;
  auto bad = run_oracles(cfg);
  CHECK(std::any_of(bad.begin(), bad.end(), [](const OracleOutcome& o) { return !o.ok; }));
  cfg.corrupt = false;
  cfg.oracle_size = 40;
  CHECK_THROWS_AS(run_oracles(cfg), usage_error);
}

TEST_CASE("cli end to end") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "fplab_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  SECTION("gen writes canonical set files, byte-identical across runs") {
    fs::path out = dir / "sub.txt";
    std::string args = "gen --set p=7 --set 'families=subgroup(order=3)' --set out=" +
                       out.string();
    REQUIRE(run_cli(args) == 0);
    std::string first = slurp(out);
    CHECK(first == "p 7\n1\n2\n4\n");
    REQUIRE(run_cli(args) == 0);
    CHECK(slurp(out) == first);

    std::ifstream is(out);
    FSet s = read_set(is);
    CHECK(s.elements() == std::vector<u64>{1, 2, 4});
  }

  SECTION("exit codes") {
    CHECK(run_cli("check --set p=101 --set checks=cauchy_schwarz_sum") == 0);
    CHECK(run_cli("oracle --set oracle_trials=1 --set oracle_size=6") == 0);
    CHECK(run_cli("oracle --set oracle_trials=1 --set oracle_size=6 --set corrupt=1") == 1);
    CHECK(run_cli("check --set nonsense=1") == 2);
    CHECK(run_cli("check --set p=6") == 2);
    CHECK(run_cli("compute --set quantities=bogus") == 2);
  }

  SECTION("config file plus overrides") {
    fs::path cfg_path = dir / "cfg.txt";
    {
      std::ofstream os(cfg_path);
      os << "p = 7\nfamilies = interval(start=1;size=3)\n"
         << "checks = cauchy_schwarz_sum\nformat = json\n";
    }
    fs::path out = dir / "rows.json";
    REQUIRE(run_cli("check --config " + cfg_path.string() + " --set out=" + out.string()) == 0);
    auto arr = nlohmann::json::parse(slurp(out));
    REQUIRE(arr.is_array());
    CHECK(arr[0]["p"] == 7);
  }

  fs::remove_all(dir);
}
