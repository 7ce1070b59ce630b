#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypcheck/verifiers.hpp"

namespace hypcheck {

struct RunConfig {
  unsigned n = 2;
  unsigned d = 6;
  unsigned m = 0;
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> lemmas;
  std::optional<std::string> output_path;
  unsigned trials = 5;
  unsigned jobs = 1;
};

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitInconclusive = 2,
  kExitUsage = 64,
};

/// Exit code for a batch: FAIL dominates, then INFEASIBLE/INDETERMINATE.
int exit_code_for(const std::vector<LemmaReport>& reports);

/// Runs every (lemma, seed) pair, up to config.jobs at a time; the result
/// is in lemma-major, seed-minor order regardless of completion order.
std::vector<LemmaReport> run(const RunConfig& config);

/// Aligned human-readable table.
void print_summary(const std::vector<LemmaReport>& reports, std::ostream& out);

/// Entry point of the command-line tool.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypcheck
