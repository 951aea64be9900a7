#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dcsym/commands.hpp"
#include "dcsym/rational.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Output {
  bool json = false;
  bool timing = false;
  std::string file;
};

int emit(dcsym::RunResult result, const Output& out, std::chrono::steady_clock::time_point start) {
  if (out.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.report["duration_ms"] = ms;
    result.text += "duration: " + std::to_string(ms) + " ms\n";
  }
  const std::string dumped = result.report.dump(2) + "\n";
  if (out.json)
    std::cout << dumped;
  else
    std::cout << result.text;
  if (!out.file.empty()) {
    std::ofstream f(out.file);
    if (!f) {
      std::cerr << "cannot write report to '" << out.file << "'\n";
      return dcsym::kInputError;
    }
    f << dumped;
  }
  return result.exit_code;
}

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json, "Print the JSON report instead of text");
  cmd->add_option("--report", out.file, "Also write the JSON report to a file");
  cmd->add_flag("--timing", out.timing, "Add wall-clock duration to the report");
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Discrete symmetries of differential equations"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string echo = "dcsym";
  for (int k = 1; k < argc; ++k) echo += std::string(" ") + argv[k];

  std::uint64_t seed = 42;
  try {
    seed = dcsym::default_seed();
  } catch (const dcsym::InputError& e) {
    std::cerr << e.what() << "\n";
    return dcsym::kInputError;
  }

  Output out;

  dcsym::AutoOptions ao;
  ao.echo = echo;
  auto* auto_cmd = app.add_subcommand("auto", "Automorphism constraints, B families and canonical forms");
  auto_cmd->add_option("algebra", ao.target, "Bundled algebra name or .alg file");
  auto_cmd->add_flag("--solve", ao.solve, "Solve the constraints into families");
  auto_cmd->add_flag("--canonicalize", ao.canonicalize, "Reduce families modulo inner automorphisms");
  auto_cmd->add_option("--strategy", ao.strategy, "greedy, a bundled algebra name, or a strategy file");
  auto_cmd->add_option("--budget", ao.budget, "Solver node budget")->capture_default_str();
  auto_cmd->add_flag("--all", ao.all, "Every bundled algebra (implies --canonicalize)");
  add_output_flags(auto_cmd, out);

  dcsym::VerifyOptions vo;
  vo.echo = echo;
  vo.seed = seed;
  std::string checks = "contact,symmetry,determining";
  auto* verify_cmd = app.add_subcommand("verify", "Residual checks for discrete symmetries");
  verify_cmd->add_option("--catalog", vo.targets, "Catalog entry name or entry file (repeatable)");
  verify_cmd->add_flag("--all", vo.all, "Every catalog entry");
  verify_cmd->add_option("--map", vo.map, "Map label, 'identity', or .map file");
  verify_cmd->add_option("--checks", checks, "contact,symmetry,determining,uniform,commutator")->capture_default_str();
  verify_cmd->add_option("--seed", vo.seed, "Sampling seed (default from DCSYM_SEED, else 42)");
  verify_cmd->add_option("--samples", vo.samples, "Samples per check")->capture_default_str()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", vo.tolerance, "Residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  add_output_flags(verify_cmd, out);

  dcsym::GroupOptions go;
  go.echo = echo;
  go.seed = seed;
  auto* group_cmd = app.add_subcommand("group", "Closure and Cayley table of the discrete symmetries");
  group_cmd->add_option("--catalog", go.targets, "Catalog entry name or entry file (repeatable)");
  group_cmd->add_flag("--all", go.all, "Every catalog entry");
  group_cmd->add_option("--max-size", go.max_size, "Closure size limit (default from the catalog)");
  group_cmd->add_option("--seed", go.seed, "Sampling seed (default from DCSYM_SEED, else 42)");
  add_output_flags(group_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : dcsym::kInputError;
  }

  try {
    if (auto_cmd->parsed()) {
      if (!ao.all && ao.target.empty()) throw dcsym::InputError("auto: give an algebra or --all");
      return emit(dcsym::cmd_auto(ao), out, start);
    }
    if (verify_cmd->parsed()) {
      vo.checks = split_list(checks);
      if (!vo.all && vo.targets.empty()) throw dcsym::InputError("verify: give --catalog or --all");
      return emit(dcsym::cmd_verify(vo), out, start);
    }
    if (!go.all && go.targets.empty()) throw dcsym::InputError("group: give --catalog or --all");
    return emit(dcsym::cmd_group(go), out, start);
  } catch (const dcsym::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dcsym::kInputError;
  }
}
