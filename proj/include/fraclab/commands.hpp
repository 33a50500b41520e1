#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fraclab/config.hpp"
#include "fraclab/verify.hpp"

namespace fraclab {

/// What a subcommand did: the checks it evaluated, the files it wrote and any
/// warnings. A command passes when every check passes.
struct CommandOutcome {
  std::string command;
  std::vector<CheckResult> checks{};
  std::vector<std::filesystem::path> files{};
  std::vector<std::string> warnings{};

  bool pass() const { return all_pass(checks); }
};

// Each command validates the config (ConfigError), runs, and writes its
// reports into config.output. Every JSON report embeds the resolved config
// under "config." keys. NumericalError propagates.

/// constants.json / constants.csv, or sweep.json / sweep.csv when config.sweep.
CommandOutcome cmd_constants(const ExperimentConfig& config);
/// bubble.<fmt> and bubble.json (critical regime only).
CommandOutcome cmd_bubble(const ExperimentConfig& config);
/// ground_state.<fmt> and ground_state.json (subcritical regime only).
CommandOutcome cmd_ground_state(const ExperimentConfig& config);
/// solve.json, trace.csv, u_bar.<fmt>, v_bar.<fmt>.
CommandOutcome cmd_solve(const ExperimentConfig& config);
/// verify.json and verify.csv with one row per check.
CommandOutcome cmd_verify(const ExperimentConfig& config);

}  // namespace fraclab
