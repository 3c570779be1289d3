#pragma once

#include <string>

#include "json.hpp"
#include "lrp/cli/config.hpp"

namespace lrp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitCheckFailed = 4;

struct CommandOutcome {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

CommandOutcome cmd_generate(const ExperimentConfig& config);
CommandOutcome cmd_ball_growth(const ExperimentConfig& config);
CommandOutcome cmd_diameter(const ExperimentConfig& config);
CommandOutcome cmd_two_ball(const ExperimentConfig& config);
CommandOutcome cmd_scaling(const ExperimentConfig& config);
CommandOutcome cmd_verify_lemmas(const ExperimentConfig& config);

/// Validates and dispatches on config.command.
CommandOutcome run_command(const ExperimentConfig& config);

/// Entry point of the `lrp` executable; returns the process exit code.
int run(int argc, char** argv);

}  // namespace lrp::cli
