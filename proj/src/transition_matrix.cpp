#include "tms/transition_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "tms/error.hpp"

namespace tms {

const char* to_string(RigidityErrorKind kind) {
  switch (kind) {
    case RigidityErrorKind::no_match: return "no_match";
    case RigidityErrorKind::not_in_G: return "not_in_G";
    case RigidityErrorKind::bad_terminal: return "bad_terminal";
    case RigidityErrorKind::precondition_E0_count: return "precondition_E0_count";
    case RigidityErrorKind::not_invertible: return "not_invertible";
    case RigidityErrorKind::degenerate: return "degenerate";
    case RigidityErrorKind::wrong_base: return "wrong_base";
  }
  return "unknown";
}

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const auto n = rows.size();
  if (n == 0) throw PreconditionError("transition matrix must have at least one row");
  TransitionMatrix m;
  m.n_ = static_cast<int>(n);
  m.bits_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw PreconditionError("transition matrix row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) {
        throw PreconditionError("transition matrix entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") is not 0 or 1");
      }
      m.bits_.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return m;
}

TransitionMatrix TransitionMatrix::full_shift(int n) {
  if (n < 1) throw PreconditionError("full shift needs n >= 1");
  return from_rows(std::vector<std::vector<int>>(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 1)));
}

int TransitionMatrix::out_degree(Symbol i) const {
  int d = 0;
  for (Symbol j = 0; j < n_; ++j) d += (*this)(i, j) ? 1 : 0;
  return d;
}

int TransitionMatrix::in_degree(Symbol j) const {
  int d = 0;
  for (Symbol i = 0; i < n_; ++i) d += (*this)(i, j) ? 1 : 0;
  return d;
}

std::vector<Edge> TransitionMatrix::edges() const {
  std::vector<Edge> out;
  for (Symbol i = 0; i < n_; ++i)
    for (Symbol j = 0; j < n_; ++j)
      if ((*this)(i, j)) out.push_back({i, j});
  return out;
}

std::vector<std::vector<int>> TransitionMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
  for (Symbol i = 0; i < n_; ++i)
    for (Symbol j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j) ? 1 : 0;
  return out;
}

TransitionMatrix snr_example_matrix() {
  return TransitionMatrix::from_rows({{0, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 0}});
}

namespace {

using BoolMatrix = std::vector<std::uint8_t>;

BoolMatrix bool_multiply(const BoolMatrix& x, const BoolMatrix& y, int n) {
  BoolMatrix z(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (!x[static_cast<std::size_t>(i * n + k)]) continue;
      for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(i * n + j)] |= y[static_cast<std::size_t>(k * n + j)];
    }
  return z;
}

}  // namespace

int primitivity_exponent(const TransitionMatrix& a) {
  const int n = a.size();
  BoolMatrix base(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) base[static_cast<std::size_t>(i * n + j)] = a(i, j) ? 1 : 0;

  // Wielandt: a primitive n x n matrix has A^k > 0 for k = n^2 - 2n + 2.
  const int bound = n * n - 2 * n + 2;
  BoolMatrix power = base;
  for (int k = 1; k <= bound; ++k) {
    if (std::all_of(power.begin(), power.end(), [](std::uint8_t b) { return b != 0; })) return k;
    power = bool_multiply(power, base, n);
  }
  return 0;
}

bool is_primitive(const TransitionMatrix& a) { return primitivity_exponent(a) > 0; }

void require_primitive(const TransitionMatrix& a) {
  if (a.size() < 2) throw PreconditionError("transition matrix must be at least 2x2");
  for (Symbol s = 0; s < a.size(); ++s) {
    if (a.out_degree(s) == 0 || a.in_degree(s) == 0) {
      throw PreconditionError("symbol " + std::to_string(s + 1) + " has an empty row or column");
    }
  }
  if (!is_primitive(a)) throw PreconditionError("transition matrix is not primitive");
}

bool is_admissible(const TransitionMatrix& a, std::span<const Symbol> w) {
  for (const Symbol s : w)
    if (s < 0 || s >= a.size()) return false;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (!a(w[k], w[k + 1])) return false;
  return true;
}

std::string format_word(std::span<const Symbol> w, int alphabet_size) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (alphabet_size > 9 && k > 0) out += '.';
    out += std::to_string(w[k] + 1);
  }
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  const bool separated = text.find_first_of(",. ") != std::string_view::npos;
  Word w;
  if (!separated && alphabet_size <= 9) {
    for (const char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw PreconditionError("word contains non-digit '" + std::string(1, c) + "'");
      w.push_back(c - '1');
    }
  } else {
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      w.push_back(std::stoi(token) - 1);
      token.clear();
    };
    for (const char c : text) {
      if (c == ',' || c == '.' || c == ' ') {
        flush();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        token += c;
      } else {
        throw PreconditionError("word contains non-digit '" + std::string(1, c) + "'");
      }
    }
    flush();
  }
  for (const Symbol s : w)
    if (s < 0 || s >= alphabet_size) throw PreconditionError("word symbol out of range 1.." + std::to_string(alphabet_size));
  return w;
}

}  // namespace tms
