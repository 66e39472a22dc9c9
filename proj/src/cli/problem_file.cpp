#include "tms/cli/problem_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace tms::cli {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw InputError("field " + field + ": " + what);
}

const Json& member(const Json& object, const char* key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

void only_keys(const Json& object, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [key, _] : object.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) field_error(path.empty() ? key : path + "." + key, "unknown field");
  }
}

TransitionMatrix parse_matrix(const Json& m) {
  if (!m.is_object()) field_error("matrix", "expected an object");
  only_keys(m, {"n", "rows"}, "matrix");
  const Json& jn = member(m, "n", "matrix");
  if (!jn.is_number_integer() || jn.get<long long>() < 1 || jn.get<long long>() > 64) {
    field_error("matrix.n", "expected an integer in [1, 64]");
  }
  const int n = jn.get<int>();
  const Json& rows = member(m, "rows", "matrix");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    field_error("matrix.rows", "expected an array of " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<int>> entries(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::string row_path = "matrix.rows[" + std::to_string(i) + "]";
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      field_error(row_path, "expected an array of " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      const Json& x = row[static_cast<std::size_t>(j)];
      if (!x.is_number_integer() || (x.get<long long>() != 0 && x.get<long long>() != 1)) {
        field_error(row_path + "[" + std::to_string(j) + "]", "expected 0 or 1");
      }
      entries[static_cast<std::size_t>(i)].push_back(x.get<int>());
    }
  }
  return TransitionMatrix::from_rows(entries);
}

// Walks an edge-aligned n x n array, calling read(i, j, value, path) on edges
// and insisting on null elsewhere.
template <class Read>
void parse_edge_array(const TransitionMatrix& a, const Json& values, const std::string& path, Read&& read) {
  const int n = a.size();
  if (!values.is_array() || values.size() != static_cast<std::size_t>(n)) {
    field_error(path, "expected an array of " + std::to_string(n) + " rows");
  }
  for (int i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Json& row = values[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      field_error(row_path, "expected an array of " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      const std::string cell = row_path + "[" + std::to_string(j) + "]";
      const Json& x = row[static_cast<std::size_t>(j)];
      if (!a(i, j)) {
        if (!x.is_null()) field_error(cell, "expected null on a forbidden edge");
        continue;
      }
      read(i, j, x, cell);
    }
  }
}

}  // namespace

Potential ProblemFile::potential() const {
  if (log_values) return Potential(matrix, *log_values);
  if (q_matrix) {
    Matrix v = Matrix::Zero(matrix.size(), matrix.size());
    for (const Edge& e : matrix.edges()) v(e.from, e.to) = std::log(to_double((*q_matrix)(e.from, e.to)));
    return Potential(matrix, v);
  }
  return Potential::zero(matrix);
}

ExactChain ProblemFile::exact_chain() const {
  if (!q_matrix) throw PreconditionError("exact mode needs a q_matrix potential");
  return ExactChain::from_q_matrix(matrix, *q_matrix);
}

ProblemFile parse_problem(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Locate the byte offset reported by the parser.
    int line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string reason = e.what();
    if (const auto colon = reason.rfind(": "); colon != std::string::npos) reason = reason.substr(colon + 2);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason);
  }
  if (!doc.is_object()) throw InputError("line 1, column 1: expected a JSON object");
  only_keys(doc, {"matrix", "potential"}, "");

  ProblemFile p;
  try {
    p.matrix = parse_matrix(member(doc, "matrix", ""));
  } catch (const InputError&) {
    throw;
  } catch (const PreconditionError& e) {
    field_error("matrix", e.what());
  }

  const auto pot = doc.find("potential");
  if (pot == doc.end() || pot->is_null()) return p;
  if (!pot->is_object()) field_error("potential", "expected an object");
  only_keys(*pot, {"log_values", "q_matrix"}, "potential");
  const bool has_log = pot->contains("log_values");
  const bool has_q = pot->contains("q_matrix");
  if (has_log == has_q) field_error("potential", "expected exactly one of log_values and q_matrix");

  const int n = p.matrix.size();
  if (has_log) {
    Matrix v = Matrix::Zero(n, n);
    parse_edge_array(p.matrix, pot->at("log_values"), "potential.log_values",
                     [&](int i, int j, const Json& x, const std::string& cell) {
                       if (!x.is_number() || !std::isfinite(x.get<double>())) field_error(cell, "expected a finite number");
                       v(i, j) = x.get<double>();
                     });
    p.log_values = v;
    return p;
  }

  RationalMatrix q(n);
  parse_edge_array(p.matrix, pot->at("q_matrix"), "potential.q_matrix",
                   [&](int i, int j, const Json& x, const std::string& cell) {
                     try {
                       if (x.is_string()) {
                         q(i, j) = parse_rational(x.get<std::string>());
                       } else if (x.is_number()) {
                         q(i, j) = parse_rational(x.dump());
                       } else {
                         field_error(cell, "expected a rational");
                       }
                     } catch (const InputError&) {
                       throw;
                     } catch (const PreconditionError& e) {
                       field_error(cell, e.what());
                     }
                   });
  p.q_matrix = q;
  try {
    p.exact_chain();
  } catch (const PreconditionError& e) {
    field_error("potential.q_matrix", e.what());
  }
  return p;
}

ProblemFile read_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_problem(text.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json edge_array(const TransitionMatrix& a, const Matrix& values) {
  Json rows = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.size(); ++j) row.push_back(a(i, j) ? Json(values(i, j)) : Json(nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ProblemFile& problem) {
  const auto& a = problem.matrix;
  Json rows = Json::array();
  for (const auto& row : a.rows()) rows.push_back(row);
  Json doc;
  doc["matrix"] = {{"n", a.size()}, {"rows", rows}};
  if (problem.log_values) {
    doc["potential"] = {{"log_values", edge_array(a, *problem.log_values)}};
  } else if (problem.q_matrix) {
    Json q = Json::array();
    for (int i = 0; i < a.size(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < a.size(); ++j) row.push_back(a(i, j) ? Json(to_string((*problem.q_matrix)(i, j))) : Json(nullptr));
      q.push_back(std::move(row));
    }
    doc["potential"] = {{"q_matrix", q}};
  }
  return doc;
}

}  // namespace tms::cli
