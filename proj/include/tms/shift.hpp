#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tms/transition_matrix.hpp"

namespace tms {

// Degree data of a transition matrix. V0 holds the symbols entered by at least
// two edges, E0 the edges landing in V0. E0 is ordered by target symbol and
// then by source symbol.
struct ShiftStructure {
  std::vector<int> in_degree;
  std::vector<Symbol> v0;
  std::vector<Edge> e0;
  std::vector<Edge> edges;

  bool in_v0(Symbol j) const { return in_degree[static_cast<std::size_t>(j)] >= 2; }
};

ShiftStructure structure(const TransitionMatrix& a);

// Admissible words of the given length in lexicographic order. Length 0 yields
// the single empty word.
std::vector<Word> admissible_words(const TransitionMatrix& a, int length);

// Visits every admissible word of the given length in lexicographic order
// without materialising the list.
template <typename Visitor>
void for_each_admissible_word(const TransitionMatrix& a, int length, Visitor&& visit) {
  if (length <= 0) {
    const Word empty;
    visit(empty);
    return;
  }
  const int n = a.size();
  Word w(static_cast<std::size_t>(length));
  auto extend = [&](auto&& self, int pos) -> void {
    if (pos == length) {
      visit(static_cast<const Word&>(w));
      return;
    }
    for (Symbol s = 0; s < n; ++s) {
      if (pos > 0 && !a(w[static_cast<std::size_t>(pos - 1)], s)) continue;
      w[static_cast<std::size_t>(pos)] = s;
      self(self, pos + 1);
    }
  };
  extend(extend, 0);
}

// A cycle is a closed word w with w.front() == w.back(). The canonical form is
// the lexicographically minimal rotation of w_0..w_{|w|-2}, closed again.
using Cycle = Word;

Cycle canonical_cycle(std::span<const Symbol> closed_word);
bool is_simple_cycle(std::span<const Symbol> closed_word);

// All simple cycles in canonical form, sorted lexicographically.
std::vector<Cycle> simple_cycles(const TransitionMatrix& a);

// Every ordered pair of simple cycles shares a symbol and has length ratio
// (|w|-1)/(|w'|-1) < 2.
struct CycleOverlapCheck {
  bool holds = true;
  std::vector<std::pair<Cycle, Cycle>> violations;
};

CycleOverlapCheck check_cycle_overlap_condition(const TransitionMatrix& a);

// Fixed point of merging symbols with identical columns. class_of maps each
// original symbol to its symbol in the amalgamated matrix.
struct Amalgamation {
  TransitionMatrix matrix;
  std::vector<Symbol> class_of;

  bool is_identity() const;
};

Amalgamation total_amalgamation(const TransitionMatrix& a);

// perm[i] is the image of symbol i.
using Permutation = std::vector<Symbol>;

inline constexpr int kMaxAutomorphismAlphabet = 10;

// All symbol permutations preserving A, found by brute force over S_n.
// Throws PreconditionError for n > kMaxAutomorphismAlphabet.
std::vector<Permutation> graph_automorphisms(const TransitionMatrix& a);

enum class AutomorphismVerdict {
  // Total amalgamation is A itself and the graph group is trivial, so the
  // one-sided shift has only the identity automorphism.
  trivial,
  // Either amalgamation is proper or the graph has symmetries; the shift
  // automorphism group is not determined.
  inconclusive,
};

struct AutomorphismResult {
  AutomorphismVerdict verdict = AutomorphismVerdict::inconclusive;
  bool amalgamation_is_identity = false;
  std::vector<Permutation> graph_group;
};

AutomorphismResult automorphisms(const TransitionMatrix& a);

const char* to_string(AutomorphismVerdict v);

}  // namespace tms
