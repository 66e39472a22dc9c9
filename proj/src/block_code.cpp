#include "tms/block_code.hpp"

#include "tms/error.hpp"

namespace tms {

BlockCode::BlockCode(int window, std::map<Word, Symbol> table) : window_(window), table_(std::move(table)) {
  if (window_ < 1) throw PreconditionError("block code window must be positive");
  for (const auto& [w, s] : table_)
    if (static_cast<int>(w.size()) != window_) throw PreconditionError("block code table key has the wrong length");
}

Word BlockCode::apply(std::span<const Symbol> word) const {
  if (static_cast<int>(word.size()) < window_) throw PreconditionError("word is shorter than the block code window");
  Word out;
  out.reserve(word.size() - static_cast<std::size_t>(window_) + 1);
  Word key(static_cast<std::size_t>(window_));
  for (std::size_t k = 0; k + static_cast<std::size_t>(window_) <= word.size(); ++k) {
    std::copy(word.begin() + static_cast<std::ptrdiff_t>(k), word.begin() + static_cast<std::ptrdiff_t>(k) + window_, key.begin());
    const auto it = table_.find(key);
    if (it == table_.end()) throw PreconditionError("window " + format_word(key) + " is not in the block code table");
    out.push_back(it->second);
  }
  return out;
}

bool BlockCode::is_identity() const {
  for (const auto& [w, s] : table_)
    if (s != w.front()) return false;
  return true;
}

bool BlockCode::is_relabeling(std::span<const Symbol> perm) const {
  for (const auto& [w, s] : table_)
    if (s != perm[static_cast<std::size_t>(w.front())]) return false;
  return true;
}

}  // namespace tms
