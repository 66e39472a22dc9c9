#include "tms/shift.hpp"

#include <algorithm>
#include <numeric>

#include "tms/error.hpp"

namespace tms {

ShiftStructure structure(const TransitionMatrix& a) {
  ShiftStructure s;
  const int n = a.size();
  s.in_degree.resize(static_cast<std::size_t>(n));
  for (Symbol j = 0; j < n; ++j) s.in_degree[static_cast<std::size_t>(j)] = a.in_degree(j);
  for (Symbol j = 0; j < n; ++j) {
    if (!s.in_v0(j)) continue;
    s.v0.push_back(j);
    for (Symbol i = 0; i < n; ++i)
      if (a(i, j)) s.e0.push_back({i, j});
  }
  s.edges = a.edges();
  return s;
}

std::vector<Word> admissible_words(const TransitionMatrix& a, int length) {
  std::vector<Word> out;
  for_each_admissible_word(a, length, [&](const Word& w) { out.push_back(w); });
  return out;
}

Cycle canonical_cycle(std::span<const Symbol> closed_word) {
  if (closed_word.size() < 2 || closed_word.front() != closed_word.back()) {
    throw PreconditionError("a cycle needs at least two symbols and must end where it starts");
  }
  const std::vector<Symbol> body(closed_word.begin(), closed_word.end() - 1);
  std::vector<Symbol> best = body;
  std::vector<Symbol> rotated = body;
  for (std::size_t r = 1; r < body.size(); ++r) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (rotated < best) best = rotated;
  }
  best.push_back(best.front());
  return best;
}

bool is_simple_cycle(std::span<const Symbol> closed_word) {
  if (closed_word.size() < 2 || closed_word.front() != closed_word.back()) return false;
  std::vector<Symbol> body(closed_word.begin(), closed_word.end() - 1);
  std::sort(body.begin(), body.end());
  return std::adjacent_find(body.begin(), body.end()) == body.end();
}

std::vector<Cycle> simple_cycles(const TransitionMatrix& a) {
  // Each simple cycle is found exactly once, from its smallest symbol, with all
  // other symbols restricted to be larger. Starting at the minimum symbol is
  // the canonical rotation because the body symbols are distinct.
  const int n = a.size();
  std::vector<Cycle> out;
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  Word path;
  for (Symbol start = 0; start < n; ++start) {
    auto dfs = [&](auto&& self, Symbol v) -> void {
      for (Symbol next = start; next < n; ++next) {
        if (!a(v, next)) continue;
        if (next == start) {
          Cycle c = path;
          c.push_back(start);
          out.push_back(std::move(c));
        } else if (!on_path[static_cast<std::size_t>(next)]) {
          on_path[static_cast<std::size_t>(next)] = true;
          path.push_back(next);
          self(self, next);
          path.pop_back();
          on_path[static_cast<std::size_t>(next)] = false;
        }
      }
    };
    path = {start};
    on_path[static_cast<std::size_t>(start)] = true;
    dfs(dfs, start);
    on_path[static_cast<std::size_t>(start)] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

CycleOverlapCheck check_cycle_overlap_condition(const TransitionMatrix& a) {
  const auto cycles = simple_cycles(a);
  CycleOverlapCheck result;
  auto meets = [](const Cycle& w, const Cycle& v) {
    return std::any_of(w.begin(), w.end(), [&](Symbol s) { return std::find(v.begin(), v.end(), s) != v.end(); });
  };
  for (const auto& w : cycles) {
    for (const auto& v : cycles) {
      const auto lw = static_cast<double>(w.size() - 1);
      const auto lv = static_cast<double>(v.size() - 1);
      if (!meets(w, v) || lw / lv >= 2.0) result.violations.emplace_back(w, v);
    }
  }
  result.holds = result.violations.empty();
  return result;
}

bool Amalgamation::is_identity() const {
  for (std::size_t i = 0; i < class_of.size(); ++i)
    if (class_of[i] != static_cast<Symbol>(i)) return false;
  return matrix.size() == static_cast<int>(class_of.size());
}

Amalgamation total_amalgamation(const TransitionMatrix& a) {
  std::vector<std::vector<int>> rows = a.rows();
  // members[k] lists the original symbols folded into current symbol k.
  std::vector<std::vector<Symbol>> members(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) members[i] = {static_cast<Symbol>(i)};

  auto column_equal = [&](std::size_t x, std::size_t y) {
    for (const auto& row : rows)
      if (row[x] != row[y]) return false;
    return true;
  };

  bool merged = true;
  while (merged) {
    merged = false;
    const std::size_t n = rows.size();
    for (std::size_t x = 0; x < n && !merged; ++x) {
      for (std::size_t y = x + 1; y < n && !merged; ++y) {
        if (!column_equal(x, y)) continue;
        // Keep the common column, OR the two rows, drop symbol y.
        for (std::size_t j = 0; j < n; ++j) rows[x][j] |= rows[y][j];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(y));
        for (auto& row : rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(y));
        members[x].insert(members[x].end(), members[y].begin(), members[y].end());
        members.erase(members.begin() + static_cast<std::ptrdiff_t>(y));
        merged = true;
      }
    }
  }

  Amalgamation result;
  result.matrix = TransitionMatrix::from_rows(rows);
  result.class_of.assign(static_cast<std::size_t>(a.size()), 0);
  for (std::size_t k = 0; k < members.size(); ++k)
    for (const Symbol s : members[k]) result.class_of[static_cast<std::size_t>(s)] = static_cast<Symbol>(k);
  return result;
}

std::vector<Permutation> graph_automorphisms(const TransitionMatrix& a) {
  const int n = a.size();
  if (n > kMaxAutomorphismAlphabet) {
    throw PreconditionError("automorphism search limited to n <= " + std::to_string(kMaxAutomorphismAlphabet));
  }
  std::vector<Permutation> group;
  Permutation perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool preserves = true;
    for (Symbol i = 0; i < n && preserves; ++i)
      for (Symbol j = 0; j < n && preserves; ++j)
        preserves = a(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) == a(i, j);
    if (preserves) group.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return group;
}

AutomorphismResult automorphisms(const TransitionMatrix& a) {
  AutomorphismResult r;
  r.graph_group = graph_automorphisms(a);
  r.amalgamation_is_identity = total_amalgamation(a).is_identity();
  r.verdict = (r.amalgamation_is_identity && r.graph_group.size() == 1) ? AutomorphismVerdict::trivial
                                                                      : AutomorphismVerdict::inconclusive;
  return r;
}

const char* to_string(AutomorphismVerdict v) {
  return v == AutomorphismVerdict::trivial ? "trivial" : "inconclusive";
}

}  // namespace tms
