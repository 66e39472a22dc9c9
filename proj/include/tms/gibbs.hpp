#pragma once

#include <optional>
#include <span>

#include "tms/perron.hpp"
#include "tms/shift.hpp"
#include "tms/transition_matrix.hpp"

namespace tms {

// A 2-locally constant potential: one real value per edge of the base matrix.
// Entries of values() on forbidden edges are held at 0 and never read.
class Potential {
 public:
  Potential(TransitionMatrix base, const Matrix& values);

  static Potential zero(TransitionMatrix base);
  static Potential constant(TransitionMatrix base, double c);

  const TransitionMatrix& base() const noexcept { return base_; }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Symbol i, Symbol j) const { return values_(i, j); }

  // f + (phi o sigma - phi + c) with phi(omega) = phi[omega_0]; the shifted
  // coboundary of a 1-locally constant function on the edge ij is phi_j - phi_i.
  Potential plus_coboundary(std::span<const double> phi, double c) const;

 private:
  TransitionMatrix base_;
  Matrix values_;
};

// A(f)_{ij} = exp(f_{ij}) on edges, 0 elsewhere.
Matrix weight_matrix(const Potential& f);

// Column-stochastic matrix Q supported on the edges of a primitive base, with
// its stationary vector. Immutable once built.
class GibbsChain {
 public:
  // Validates support, positivity and column sums (within column_tolerance);
  // the stationary vector is solved from Q pi = pi, sum(pi) = 1.
  static GibbsChain from_stochastic(TransitionMatrix base, const Matrix& q, double column_tolerance = 1e-12);

  const TransitionMatrix& base() const noexcept { return base_; }
  const ShiftStructure& shift() const noexcept { return shift_; }
  const Matrix& q() const noexcept { return q_; }
  const Vector& pi() const noexcept { return pi_; }
  double q(Symbol i, Symbol j) const { return q_(i, j); }
  // Normalized potential: log Q_{ij} on edges.
  double fhat(Symbol i, Symbol j) const;
  Potential fhat_potential() const;

 private:
  GibbsChain() = default;

  TransitionMatrix base_;
  ShiftStructure shift_;
  Matrix q_;
  Vector pi_;
};

struct Normalization {
  GibbsChain chain;
  // Perron data of A(f); lambda overflows to inf for huge f, pressure does not.
  PerronData perron;
  double pressure = 0.0;
};

// Q_{ij} = p_i A(f)_{ij} / (lambda p_j) from the Perron data of A(f).
Normalization normalize(const Potential& f);

// mu([w]) = pi_{last} * prod_k Q_{w_k w_{k+1}}; 1 for the empty word and 0 for
// words that are not admissible.
double cylinder_measure(const GibbsChain& chain, std::span<const Symbol> w);

struct GibbsRatioBounds {
  double inf = 0.0;
  double sup = 0.0;
};

// Extrema of mu([w]) / exp(-|w| P + S_{|w|} f) over admissible words with
// 1 <= |w| <= max_len. The Birkhoff sum runs over the |w|-1 edges of w plus one
// continuation edge out of the last symbol; the infimum uses the continuation
// with the largest f value and the supremum the smallest.
GibbsRatioBounds gibbs_ratio(const GibbsChain& chain, const Potential& f, double pressure, int max_len);

// h = -sum_{ij} pi_j Q_{ij} log Q_{ij}.
double ks_entropy(const GibbsChain& chain);

// Sum of fhat over the |c|-1 edges of the closed word c. Throws
// PreconditionError if c is not an admissible cycle.
double cycle_sum(const GibbsChain& chain, std::span<const Symbol> c);

struct CohomologyCheck {
  bool cohomologous = true;
  std::optional<Cycle> witness;
  // fhat-sum minus ghat-sum on the witness (0 when cohomologous).
  double difference = 0.0;
};

// fhat and ghat agree on every simple cycle, compared at 1e-10 relative with
// an absolute floor of 1e-10. The first violating cycle in lexicographic order
// is reported.
CohomologyCheck cohomologous_with_constant(const GibbsChain& f, const GibbsChain& g);
CohomologyCheck cohomologous_with_constant(const Potential& f, const Potential& g);

bool nearly_equal(double x, double y, double rel_tol);

}  // namespace tms
