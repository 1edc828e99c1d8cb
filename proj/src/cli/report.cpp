#include "ncdyn/cli/report.hpp"

#include <cmath>
#include <cstdio>

namespace ncdyn::cli {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(j, out);
  out += '\n';
  return out;
}

Json make_report() {
  Json j = Json::object();
  j["ncdyn_schema"] = kSchemaVersion;
  return j;
}

std::string dump_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              out += std::to_string(v);
            } else {
              out += v;
            }
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ncdyn::cli
