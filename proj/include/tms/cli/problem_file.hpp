#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "tms/error.hpp"
#include "tms/exact.hpp"
#include "tms/gibbs.hpp"

namespace tms::cli {

using Json = nlohmann::ordered_json;

// Malformed input document. The message names the line and column of a syntax
// error or the field path of a semantic one.
class InputError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// {"matrix": {"n": N, "rows": [[...]]}, "potential": {"log_values": ...} or
// {"q_matrix": ...}}. Edge-value arrays are N x N with null on forbidden edges.
// q_matrix entries are rationals ("1/5", "0.2" or plain numbers read through
// their decimal text) and switch the commands to exact mode.
struct ProblemFile {
  TransitionMatrix matrix;
  std::optional<Matrix> log_values;
  std::optional<RationalMatrix> q_matrix;

  bool rational() const noexcept { return q_matrix.has_value(); }

  // log_values, log Q for q_matrix input, or f = 0 when no potential is given.
  Potential potential() const;
  ExactChain exact_chain() const;
};

ProblemFile parse_problem(std::string_view text);
ProblemFile read_problem(const std::filesystem::path& path);

Json to_json(const ProblemFile& problem);

// Edge-aligned nested array with null off the edges of `a`.
Json edge_array(const TransitionMatrix& a, const Matrix& values);

}  // namespace tms::cli
