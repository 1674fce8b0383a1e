#pragma once

// Command implementations behind the `mpb` tool. Each command produces a
// Report holding the human-readable text, the JSON document and the exit
// status, so the commands can be driven from tests without a process.

#include "mpb/specfile.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace mpb::cli {

enum ExitStatus : int { kPass = 0, kCheckFailed = 1, kInvalidInput = 2, kHypothesisFailed = 3 };

struct Options {
  std::size_t cap = kDefaultLatticeCap;
  std::size_t max_j = kDefaultMaxIndexCount;
  std::size_t chain_length = kDefaultChainLength;
  bool duality = false;
};

struct Report {
  std::string text;
  nlohmann::json data;
  int exit_status = kPass;
};

/// Options from the file fill in whatever the command line left unset.
Options merge_options(const SpecOptions& from_file, const Options& defaults, const SpecOptions& from_flags);

/// Resolves a named fixture: example1..3 (algebra families) or tstar,
/// tcirc-a, tcirc-c (finite gluings). Throws SpecError for unknown names.
SpecFile fixture_input(const std::string& name, std::size_t chain_length);

Report cmd_check(const SpecFile& input, const Options& options);
Report cmd_glue(const SpecFile& input, const Options& options);

struct RepairResult {
  Report report;
  /// The repaired family as a spec document; present on success.
  std::optional<nlohmann::json> repaired_spec;
};

RepairResult cmd_repair(const SpecFile& input, const Options& options);

/// Entry point shared by the executable; returns the exit status.
int run(int argc, char** argv);

}  // namespace mpb::cli
