#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tms {

// Symbols are 0-based internally; all text formats use 1-based symbols.
using Symbol = int;
using Word = std::vector<Symbol>;

struct Edge {
  Symbol from = 0;
  Symbol to = 0;

  auto operator<=>(const Edge&) const = default;
};

// Square zero-one matrix. Shape and entries are validated on construction;
// primitivity is a separate check because intermediate results (for example a
// fully amalgamated full shift) may legitimately be 1x1.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;

  static TransitionMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static TransitionMatrix full_shift(int n);

  int size() const noexcept { return n_; }
  bool operator()(Symbol i, Symbol j) const noexcept { return bits_[static_cast<std::size_t>(i * n_ + j)] != 0; }

  int out_degree(Symbol i) const;
  int in_degree(Symbol j) const;

  // Row-major (lexicographic) order.
  std::vector<Edge> edges() const;
  std::vector<std::vector<int>> rows() const;

  bool operator==(const TransitionMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// The 4x4 matrix on which strong non-rigidity is exhibited:
//   0 1 1 1
//   1 0 0 1
//   0 1 0 0
//   0 1 0 0
TransitionMatrix snr_example_matrix();

// Exact boolean test: some power A^k with k <= n^2 - 2n + 2 is all-positive.
bool is_primitive(const TransitionMatrix& a);

// Smallest k with A^k all-positive, or 0 when A is not primitive.
int primitivity_exponent(const TransitionMatrix& a);

// Throws PreconditionError unless n >= 2 and A is primitive.
void require_primitive(const TransitionMatrix& a);

bool is_admissible(const TransitionMatrix& a, std::span<const Symbol> w);

// 1-based rendering: "1321" when n <= 9, "1.3.2.1" otherwise.
std::string format_word(std::span<const Symbol> w, int alphabet_size = 9);

// Accepts "132", "1,3,2", "1.3.2" or "1 3 2" (1-based). Throws PreconditionError.
Word parse_word(std::string_view text, int alphabet_size);

}  // namespace tms
