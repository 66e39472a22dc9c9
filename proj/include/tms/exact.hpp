#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tms/gibbs.hpp"
#include "tms/rational.hpp"
#include "tms/transition_matrix.hpp"

namespace tms {

// Column-stochastic matrix with exact rational entries over a primitive base.
class ExactChain {
 public:
  // Entries must be positive exactly on the edges of `base` and every column
  // must sum to exactly 1.
  static ExactChain from_q_matrix(TransitionMatrix base, RationalMatrix q);

  const TransitionMatrix& base() const noexcept { return base_; }
  const RationalMatrix& q() const noexcept { return q_; }
  const Rational& q(Symbol i, Symbol j) const { return q_(i, j); }

  // Floating-point view for the numerical routines.
  GibbsChain to_chain() const;

 private:
  ExactChain() = default;

  TransitionMatrix base_;
  RationalMatrix q_;
};

struct ExactGMembership {
  bool in_g = true;
  std::optional<std::pair<Edge, Edge>> collision;
};

// Pairwise distinctness of the E0 entries, compared exactly.
ExactGMembership exact_in_G(const ExactChain& chain);

// A function q -> sum_b m_b b^q, stored as base -> multiplicity with positive
// rational bases and nonzero integer multiplicities. Distinct bases give
// linearly independent exponentials, so two sums agree for every real q iff
// the maps are equal.
using ExponentialSum = std::map<Rational, long long>;

// Coefficients of det(zI - Q_q) as exponential sums in q, highest degree
// first. Each coefficient is a signed sum over families of pairwise disjoint
// simple cycles; a family with cycle weight product w contributes
// (-1)^{#cycles} w^q to the coefficient of z^{n - #vertices}.
struct ExactCharPolyFamily {
  std::vector<ExponentialSum> coefficients;

  bool operator==(const ExactCharPolyFamily&) const = default;

  // Exact coefficients at an integer q.
  std::vector<Rational> at(int q) const;
};

ExactCharPolyFamily char_poly_family(const ExactChain& chain);

// det(zI - M) in exact arithmetic, highest degree first.
std::vector<Rational> char_poly(const RationalMatrix& m);

// (Q_q)_{ij} = A_{ij} Q_{ij}^q for integer q.
RationalMatrix q_power(const ExactChain& chain, int q);

struct ExactValueSetComparison {
  bool differ = false;
  std::vector<Rational> only_in_first;
  std::vector<Rational> only_in_second;
};

// Set comparison of {Q_{ij} : ij in E0} between two chains.
ExactValueSetComparison compare_e0_value_sets(const ExactChain& first, const ExactChain& second);

// Exact counterpart of counterexample_pair: the companion chain Q(g).
// Throws RigidityError(wrong_base | degenerate).
ExactChain counterexample_pair(const ExactChain& f);

}  // namespace tms
