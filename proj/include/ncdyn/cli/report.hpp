#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ncdyn/cli/codec.hpp"

namespace ncdyn::cli {

inline constexpr int kSchemaVersion = 1;

/// Shortest "%.17g" rendering; lossless for doubles.
std::string format_double(double x);

/// Compact JSON in insertion order with 17-significant-digit floats. Non-finite
/// floats become null. A trailing newline is appended.
std::string dump_json(const Json& j);

/// New report object whose first key is "ncdyn_schema".
Json make_report();

using CsvCell = std::variant<long long, double, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

std::string dump_csv(const CsvTable& table);

}  // namespace ncdyn::cli
