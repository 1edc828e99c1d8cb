#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncdyn/cli/exit_codes.hpp"

namespace ncdyn::cli {

/// A validated invocation: the subcommand path (e.g. {"cp", "stationary"}), the flags
/// that were given (without leading dashes) and the optional seed.
struct Command {
  std::vector<std::string> path;
  std::map<std::string, std::string> args;
  std::optional<std::uint64_t> seed;

  std::string name() const;
  bool has(const std::string& flag) const { return args.count(flag) > 0; }
  const std::string& get(const std::string& flag) const;
};

/// Parses argv (without the program name). Unknown flags, missing required flags and
/// unknown subcommands throw CliError(Usage). "--help" yields path {"help"} with the
/// usage text in args["text"]. env_seed, when set, overrides --seed.
Command parse_command(const std::vector<std::string>& argv,
                      const std::optional<std::string>& env_seed = std::nullopt);

/// Runs a parsed command, writing data to out. Throws CliError or ncdyn::Error.
void run_command(const Command& cmd, std::ostream& out);

/// Full entry point: parse, run, map failures to exit codes with diagnostics on err.
/// Reads NCDYN_SEED from the environment.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ncdyn::cli
