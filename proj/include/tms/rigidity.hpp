#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tms/block_code.hpp"
#include "tms/gibbs.hpp"
#include "tms/shift.hpp"
#include "tms/spectrum.hpp"

namespace tms {

inline constexpr double kValueTolerance = 1e-9;

struct GMembership {
  bool in_g = true;
  // First colliding pair, scanning E0 in its stored order with the later edge
  // as the outer index.
  std::optional<std::pair<Edge, Edge>> collision;
};

// Q restricted to E0 takes pairwise distinct values (relative tolerance 1e-9).
GMembership in_G(const GibbsChain& chain, double rel_tol = kValueTolerance);

// Potential with independent uniform[-1, 1] edge values drawn from a stream
// derived from (seed, index) only.
Potential random_potential(const TransitionMatrix& a, std::uint64_t seed, std::uint64_t index);

// Fraction of n_samples random potentials whose Q(f) lies in G_A. Samples are
// evaluated in parallel; the result depends only on (A, n_samples, seed).
double sample_G(const TransitionMatrix& a, int n_samples, std::uint64_t seed);

// Recovers the admissible word w with Q_{w_k w_{k+1}} = values[k] for all k.
// The last value must lie in (0, 1). Throws RigidityError(no_match | not_in_G
// | bad_terminal).
Word reconstruct_word(const GibbsChain& chain, std::span<const double> values, double rel_tol = kValueTolerance);

struct ValueSetComparison {
  bool differ = false;
  std::vector<double> only_in_first;
  std::vector<double> only_in_second;
};

// Set comparison of {Q_{ij} : ij in E0} between two chains (tolerance 1e-9).
ValueSetComparison compare_e0_value_sets(const GibbsChain& first, const GibbsChain& second,
                                         double rel_tol = kValueTolerance);

// A set-level mismatch of E0 values: no isomorphism of the two Gibbs systems
// exists.
struct ValueSetObstruction {
  ValueSetComparison values;
};

using ConjugacyResult = std::variant<BlockCode, ValueSetObstruction>;

// Builds the block code with window N+1 (N = alphabet size of f's base) forced
// by matching Q-value streams, then checks that it maps admissible words to
// admissible words with matching values and that the reverse code composes to
// the identity on words of length N+M+2 in both directions.
// Throws RigidityError(precondition_E0_count | not_in_G | not_invertible).
ConjugacyResult induce_conjugacy(const GibbsChain& f, const GibbsChain& g, double rel_tol = kValueTolerance);

// Column 2 and column 4 of Q(f) over the SNR example matrix.
struct CounterexampleParameters {
  double a1 = 0, a2 = 0, a3 = 0;  // Q_12, Q_32, Q_42
  double b1 = 0, b2 = 0;          // Q_14, Q_24
};

CounterexampleParameters counterexample_parameters(const GibbsChain& chain);

// Stochastic matrix of the example matrix with the given columns 2 and 4.
// Throws PreconditionError if the columns do not sum to 1 or an entry is not
// in (0, 1).
Matrix example_q_matrix(const CounterexampleParameters& p);

// The companion potential g = log Q(g): column 2 of Q(g) is (a1, a3 b1, c) on
// rows (1, 3, 4), column 4 is (a2/c, a3 b2/c) on rows (1, 2), with
// c = 1 - a1 - a3 b1. Throws RigidityError(wrong_base | degenerate).
Potential counterexample_pair(const Potential& f);
GibbsChain counterexample_chain(const GibbsChain& f);

struct SNRCertificate {
  SNRCertificate(Potential f_in, Potential g_in) : f(std::move(f_in)), g(std::move(g_in)) {}

  Potential f;
  Potential g;
  bool f_in_G = false;
  std::optional<std::pair<Edge, Edge>> f_collision;
  bool spectra_equal = false;
  double spectra_max_deviation = 0.0;
  bool not_cohomologous = false;
  std::optional<Cycle> witness;
  double witness_difference = 0.0;
  bool aut_trivial = false;
  bool e0_value_sets_differ = false;
  ValueSetComparison value_sets;

  bool verdict() const {
    return f_in_G && spectra_equal && not_cohomologous && aut_trivial && e0_value_sets_differ;
  }
};

// Runs the five checks for f over the SNR example matrix. Throws
// RigidityError(wrong_base | degenerate).
SNRCertificate snr_certificate(const Potential& f);

namespace serial {

double sample_G(const TransitionMatrix& a, int n_samples, std::uint64_t seed);

}  // namespace serial

}  // namespace tms
