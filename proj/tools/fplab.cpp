// fplab: prime-field sum-product laboratory.
//
// Subcommands:
//   gen      write set files for the configured families
//   compute  one row per (quantity, instance)
//   check    run registered inequality checks on the catalogue
//   sweep    checks over a size grid, with exponent-fit summary rows
//   oracle   brute-force oracles against the fast kernels (exit 1 on mismatch)
//
// Configuration is a key=value file (--config) plus --set overrides; no
// positional arguments beyond the subcommand. Exit codes: 0 all exact checks
// pass, 1 exact-check failure or oracle mismatch, 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fplab/runner.hpp"

namespace {

using namespace fplab;

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                      const std::string& command) {
  RunConfig cfg;
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is) throw usage_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    cfg = RunConfig::parse_text(ss.str());
  }
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw usage_error("--set expects key=value, got: " + kv);
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.command = command;
  return cfg;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
  return out;
}

int cmd_gen(const RunConfig& cfg) {
  auto fams = cfg.families.empty() ? default_families() : cfg.families;
  if (cfg.out.empty() && (fams.size() > 1 || cfg.p_list.size() > 1))
    throw usage_error("gen with several outputs needs out=<directory>");
  for (u64 p : cfg.p_list) {
    PrimeField field(p);
    for (const FamilySpec& fam : fams) {
      FSet s = generate(fam, field, cfg.seed);
      if (cfg.out.empty()) {
        write_set(std::cout, s);
        continue;
      }
      std::filesystem::path out(cfg.out);
      if (fams.size() > 1 || cfg.p_list.size() > 1) {
        std::filesystem::create_directories(out);
        out /= sanitize(fam.to_string()) + "_p" + std::to_string(p) + ".txt";
      }
      std::ofstream os(out, std::ios::binary);
      if (!os) throw usage_error("cannot open output file: " + out.string());
      write_set(os, s);
    }
  }
  return 0;
}

int cmd_rows(const RunConfig& cfg, std::vector<CheckReport> (*run)(const RunConfig&)) {
  auto rows = run(cfg);
  emit_rows(cfg, rows, std::cout);
  return any_exact_failure(rows) ? 1 : 0;
}

int cmd_oracle(const RunConfig& cfg) {
  auto outcomes = run_oracles(cfg);
  std::size_t bad = 0;
  for (const auto& o : outcomes) {
    if (!o.ok) {
      ++bad;
      std::cout << "MISMATCH " << o.name << "\n";
    }
  }
  std::cout << (bad == 0 ? "oracle suite: all " : "oracle suite: FAILED ")
            << (bad == 0 ? std::to_string(outcomes.size()) + " comparisons agree"
                         : std::to_string(bad) + " of " + std::to_string(outcomes.size()) +
                               " comparisons differ")
            << "\n";
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-field sum-product laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto* gen = app.add_subcommand("gen", "write set files for the configured families");
  auto* compute = app.add_subcommand("compute", "compute quantities per instance");
  auto* check = app.add_subcommand("check", "run inequality checks");
  auto* sweep = app.add_subcommand("sweep", "run checks over the size grid with exponent fits");
  auto* oracle = app.add_subcommand("oracle", "run brute-force oracles against fast kernels");
  for (CLI::App* sc : {gen, compute, check, sweep, oracle}) {
    sc->add_option("--config", config_path, "key=value configuration file")->expected(1);
    sc->add_option("--set", overrides, "override a config key (key=value, repeatable)");
  }

  try {
    app.parse(argc, argv);
    std::string sub = gen->parsed()       ? "gen"
                      : compute->parsed() ? "compute"
                      : check->parsed()   ? "check"
                      : sweep->parsed()   ? "sweep"
                                          : "oracle";
    RunConfig cfg = load_config(config_path, overrides, sub);
    if (gen->parsed()) return cmd_gen(cfg);
    if (compute->parsed()) return cmd_rows(cfg, &fplab::run_compute);
    if (check->parsed()) return cmd_rows(cfg, &fplab::run_checks);
    if (sweep->parsed()) return cmd_rows(cfg, &fplab::run_sweep);
    if (oracle->parsed()) return cmd_oracle(cfg);
    return 2;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const fplab::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
