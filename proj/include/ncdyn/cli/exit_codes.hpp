#pragma once

#include <stdexcept>
#include <string>

namespace ncdyn::cli {

enum class ExitCode : int {
  Ok = 0,
  Usage = 2,
  FileNotFound = 3,
  Validation = 4,
  IO = 5,
};

/// Command-layer failure carrying its process exit status. Library validation
/// failures stay ncdyn::Error and map to ExitCode::Validation.
class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

}  // namespace ncdyn::cli
