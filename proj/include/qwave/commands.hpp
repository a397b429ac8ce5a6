#pragma once

#include <string>
#include <vector>

#include "qwave/config.hpp"

namespace qwave {

// One parsed command-line invocation, kept separate from the flag parser so
// subcommands are drivable in-process.
struct CliInvocation {
  std::string command;
  std::string config_path;             // empty = defaults only
  std::vector<std::string> overrides;  // raw key=value entries from --set
  std::string out;                     // empty = keep the config's value
  int threads = 0;                     // 0 = keep the config's value
  long long seed = -1;                 // < 0 = keep the config's value
};

// Effective config: file (when given), then --set overrides, then flags.
ExperimentConfig resolve_config(const CliInvocation& inv);

// Runs one subcommand (grid, analyze, bounds, sweep, lift, reconstruct,
// report), writing its artifacts into cfg.out.  Returns 0 on success and 3
// when an honest numerical verdict fails a configured demand; validation
// problems throw std::invalid_argument / std::domain_error.
int run_command(const std::string& name, const ExperimentConfig& cfg);

// resolve_config + run_command with errors mapped to exit codes: 2 for
// validation failures, 3 for numerical failures; messages go to stderr.
int dispatch(const CliInvocation& inv);

}  // namespace qwave
