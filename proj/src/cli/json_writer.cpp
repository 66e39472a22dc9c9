#include "tms/cli/json_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tms::cli {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

void write_scalar(const Json& v, std::string& out) {
  if (v.is_number_float()) {
    const double x = v.get<double>();
    out += std::isfinite(x) ? format_real(x) : "null";
  } else {
    out += v.dump();
  }
}

void write(const Json& v, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write(item, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (v.is_array()) {
    if (std::all_of(v.begin(), v.end(), is_scalar)) {
      out += "[";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) out += ", ";
        write_scalar(v[k], out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k > 0) out += ",\n";
      out += pad;
      write(v[k], depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    write_scalar(v, out);
  }
}

}  // namespace

std::string write_json(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

}  // namespace tms::cli
