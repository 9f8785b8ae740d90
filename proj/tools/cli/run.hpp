#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace cmjtree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> files;  // paths written, CSVs first, sidecar last
  std::string message;             // one-line reason on failure
};

/// Runs the configured subcommand, writing `<cmd>.csv` (plus any extra CSVs)
/// and a `<cmd>.json` sidecar into config.out_dir. Errors are reported through
/// the exit code and message, never thrown. `console` receives the
/// subcommand's human-facing output (the malthus JSON, for instance).
RunOutcome run(const ExperimentConfig& config, std::ostream& console);

/// Entry point shared by the executable: parses argv, runs, prints errors.
int main_entry(int argc, char** argv);

}  // namespace cmjtree::cli
