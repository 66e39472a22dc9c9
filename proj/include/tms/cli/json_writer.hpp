#pragma once

#include <string>

#include "tms/cli/problem_file.hpp"

namespace tms::cli {

// Two-space indented JSON with reals at 17 significant digits. Arrays of
// scalars stay on one line. Non-finite reals become null.
std::string write_json(const Json& value);

// %.17g
std::string format_real(double x);

}  // namespace tms::cli
