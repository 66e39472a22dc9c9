#pragma once

#include <map>
#include <span>

#include "tms/transition_matrix.hpp"

namespace tms {

// Sliding block code with a window of `window` symbols: output symbol k is
// table[x_k .. x_{k+window-1}].
class BlockCode {
 public:
  BlockCode(int window, std::map<Word, Symbol> table);

  int window() const noexcept { return window_; }
  const std::map<Word, Symbol>& table() const noexcept { return table_; }

  // Image of a word of length L >= window (length L - window + 1). Throws
  // PreconditionError if some window is not in the table.
  Word apply(std::span<const Symbol> word) const;

  // Every window maps to its first symbol.
  bool is_identity() const;

  // Every window maps to perm[first symbol].
  bool is_relabeling(std::span<const Symbol> perm) const;

 private:
  int window_;
  std::map<Word, Symbol> table_;
};

}  // namespace tms
