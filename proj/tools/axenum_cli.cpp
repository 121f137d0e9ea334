// Command line front end: run the construction on a fixture file, verify a
// trace against its fixtures, cross-check the axiom evaluator, or inspect a
// single stage of a trace.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axenum/axenum.hpp"

namespace {

using namespace axenum;

FixtureSet read_fixtures(const std::string& path) {
  try {
    return load_fixtures(path);
  } catch (const std::exception& e) {
    throw CLI::RuntimeError("fixtures: " + std::string(e.what()), 2);
  }
}

int cmd_run(const std::string& fixtures_path, nat stages,
            const std::string& out_path, std::optional<nat> horizon,
            std::optional<nat> seed) {
  FixtureSet fixtures = read_fixtures(fixtures_path);
  RunConfig config;
  config.fixtures_label = fixtures_path;
  config.stages = stages;
  config.horizon = horizon;
  config.seed = seed;
  RunResult result = run_construction(config, fixtures);
  write_trace_file(result.trace, out_path);
  std::cout << "ran " << stages << " stages, store holds "
            << result.store.size() << " axioms, trace written to " << out_path
            << "\n";
  return 0;
}

int cmd_verify(const std::string& trace_path, const std::string& fixtures_path,
               const std::vector<std::string>& only) {
  FixtureSet fixtures = read_fixtures(fixtures_path);
  Trace trace = load_trace(trace_path);
  for (const std::string& name : only) {
    bool known = false;
    for (const auto& [check, fn] : verify_checks()) known |= check == name;
    if (!known) {
      std::cerr << "unknown check: " << name << "\n";
      return 2;
    }
  }
  VerifyReport report = verify_trace(trace, fixtures, only);
  for (const CheckResult& c : report.checks) {
    std::cout << (c.passed ? "pass" : "FAIL") << "  " << c.name << "\n";
    for (const std::string& n : c.notes) std::cout << "      " << n << "\n";
    for (const std::string& n : c.info) std::cout << "      " << n << "\n";
  }
  return report.ok() ? 0 : 1;
}

int cmd_oracle(const std::string& axioms_path, nat horizon) {
  std::ifstream in(axioms_path);
  if (!in) throw CLI::RuntimeError("cannot open " + axioms_path, 2);
  json spec = json::parse(in);

  AxiomStore store;
  nat stage = spec.value("stage", nat{0});
  for (const json& a : spec.at("axioms")) store.append(axiom_from_json(a), stage);
  SetDescription guess;
  if (spec.contains("c_guess")) guess = set_from_json(spec.at("c_guess"));
  FinitePartialFunction restraint;
  if (spec.contains("delta")) restraint = function_from_json(spec.at("delta"));
  nat bound = spec.value("l_bound", nat{0});

  SetDescription fast = yields_over(store, stage, guess, restraint, bound, horizon);
  SetDescription slow =
      brute_force_yields(store, stage, guess, restraint, bound, horizon);
  nat mismatches = 0;
  for (nat p = 0; p < horizon; ++p) {
    bool a = fast.contains(p), b = slow.contains(p);
    std::printf("%6llu  incremental=%d exhaustive=%d%s\n",
                static_cast<unsigned long long>(p), a ? 1 : 0, b ? 1 : 0,
                a != b ? "  <-- mismatch" : "");
    mismatches += a != b;
  }
  if (mismatches) {
    std::cout << mismatches << " positions disagree\n";
    return 1;
  }
  std::cout << "all " << horizon << " positions agree\n";
  return 0;
}

int cmd_inspect(const std::string& trace_path, nat stage,
                std::optional<nat> column) {
  Trace trace = load_trace(trace_path);
  const StageRecord* found = nullptr;
  for (const StageRecord& r : trace.records)
    if (r.t == stage) found = &r;
  if (!found) {
    std::cerr << "no record for stage " << stage << "\n";
    return 2;
  }
  std::cout << to_json(*found).dump(2) << "\n";
  if (column) {
    AxiomStore store;
    for (const StageRecord& r : trace.records)
      for (const AxiomRecord& ar : r.axioms) store.append(ar.axiom, r.t);
    SetDescription x = yields(store, stage, trace.header.horizon);
    const ColumnDescription* desc = x.column(*column);
    std::ostringstream rows;
    if (desc)
      for (nat row : desc->exceptions) rows << " " << row;
    if (!desc)
      std::cout << "column " << *column << ": empty\n";
    else if (desc->default_bit)
      std::cout << "column " << *column << ": all rows except" << rows.str()
                << "\n";
    else
      std::cout << "column " << *column << ": rows" << rows.str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-stage axiom enumeration runner"};
  app.require_subcommand(1);

  std::string fixtures_path, trace_path, out_path, axioms_path;
  nat stages = 0, stage = 0, horizon = 0;
  std::optional<nat> opt_horizon, opt_seed, opt_column;
  std::vector<std::string> only;

  CLI::App* run = app.add_subcommand("run", "run the construction");
  run->add_option("--fixtures", fixtures_path, "fixture file")->required();
  run->add_option("--stages", stages, "number of stages")->required();
  run->add_option("--out", out_path, "trace output file")->required();
  run->add_option("--horizon", opt_horizon, "override the position horizon");
  run->add_option("--seed", opt_seed, "label the trace with a seed");

  CLI::App* verify = app.add_subcommand("verify", "verify a trace");
  verify->add_option("--trace", trace_path, "trace file")->required();
  verify->add_option("--fixtures", fixtures_path, "fixture file")->required();
  verify->add_option("--check", only, "run only the named checks");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare the evaluator against exhaustive search");
  oracle->add_option("--axioms", axioms_path, "axiom instance file")->required();
  oracle->add_option("--horizon", horizon, "positions to compare")->required();

  CLI::App* inspect = app.add_subcommand("inspect", "print one stage record");
  inspect->add_option("--trace", trace_path, "trace file")->required();
  inspect->add_option("--stage", stage, "stage number")->required();
  inspect->add_option("--column", opt_column, "also print that yield column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(fixtures_path, stages, out_path, opt_horizon, opt_seed);
    if (verify->parsed()) return cmd_verify(trace_path, fixtures_path, only);
    if (oracle->parsed()) return cmd_oracle(axioms_path, horizon);
    if (inspect->parsed()) return cmd_inspect(trace_path, stage, opt_column);
  } catch (const CLI::RuntimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
