#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dcsym {

enum ExitCode { kPass = 0, kCheckFailed = 1, kInputError = 2, kSolverBudget = 3, kUnbounded = 4 };

struct RunResult {
  nlohmann::ordered_json report;
  std::string text;  // human-readable rendering
  int exit_code = kPass;
};

struct AutoOptions {
  std::string echo;  // command line as typed
  std::string target;  // bundled algebra name or .alg path
  bool all = false;
  bool solve = false;
  bool canonicalize = false;
  std::string strategy;  // empty: bundled strategy; "greedy"; algebra name; or file path
  std::size_t budget = 200000;
};

struct VerifyOptions {
  std::string echo;  // command line as typed
  std::vector<std::string> targets;  // catalog names or entry files
  bool all = false;
  std::string map;  // label, "identity" or .map path; empty: every catalog map
  std::vector<std::string> checks{"contact", "symmetry", "determining"};
  std::uint64_t seed = 42;
  int samples = 100;
  double tolerance = 1e-10;
};

struct GroupOptions {
  std::string echo;  // command line as typed
  std::vector<std::string> targets;
  bool all = false;
  int max_size = 0;  // 0: catalog value
  std::uint64_t seed = 42;
};

/// Seed from DCSYM_SEED, or `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 42);

RunResult cmd_auto(const AutoOptions& options);
RunResult cmd_verify(const VerifyOptions& options);
RunResult cmd_group(const GroupOptions& options);

}  // namespace dcsym
