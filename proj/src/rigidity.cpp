#include "tms/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "parallel.hpp"
#include "tms/error.hpp"

namespace tms {

namespace {

std::string value_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool values_match(double x, double y, double rel_tol) {
  return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
}

std::vector<double> e0_values(const GibbsChain& chain) {
  std::vector<double> v;
  for (const Edge& e : chain.shift().e0) v.push_back(chain.q(e.from, e.to));
  return v;
}

// Values of `xs` with no tolerance match in `ys`, sorted and deduplicated.
std::vector<double> unmatched(const std::vector<double>& xs, const std::vector<double>& ys, double rel_tol) {
  std::vector<double> out;
  for (const double x : xs) {
    const bool found = std::any_of(ys.begin(), ys.end(), [&](double y) { return values_match(x, y, rel_tol); });
    const bool seen = std::any_of(out.begin(), out.end(), [&](double y) { return values_match(x, y, rel_tol); });
    if (!found && !seen) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GMembership in_G(const GibbsChain& chain, double rel_tol) {
  const auto& e0 = chain.shift().e0;
  GMembership r;
  for (std::size_t later = 1; later < e0.size(); ++later)
    for (std::size_t earlier = 0; earlier < later; ++earlier) {
      if (values_match(chain.q(e0[earlier].from, e0[earlier].to), chain.q(e0[later].from, e0[later].to), rel_tol)) {
        r.in_g = false;
        r.collision = std::make_pair(e0[earlier], e0[later]);
        return r;
      }
    }
  return r;
}

Potential random_potential(const TransitionMatrix& a, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const int n = a.size();
  Matrix v = Matrix::Zero(n, n);
  for (const Edge& e : a.edges()) v(e.from, e.to) = uniform(rng);
  return Potential(a, v);
}

namespace {

void require_samples(const TransitionMatrix& a, int n_samples) {
  if (n_samples < 1) throw PreconditionError("sample_G needs at least one sample");
  require_primitive(a);
}

bool sample_in_G(const TransitionMatrix& a, std::uint64_t seed, std::uint64_t index) {
  return in_G(normalize(random_potential(a, seed, index)).chain).in_g;
}

}  // namespace

double sample_G(const TransitionMatrix& a, int n_samples, std::uint64_t seed) {
  require_samples(a, n_samples);
  std::vector<char> hits(static_cast<std::size_t>(n_samples), 0);
  detail::parallel_for(n_samples, [&](std::ptrdiff_t k) {
    hits[static_cast<std::size_t>(k)] = sample_in_G(a, seed, static_cast<std::uint64_t>(k)) ? 1 : 0;
  });
  const auto count = std::count(hits.begin(), hits.end(), 1);
  return static_cast<double>(count) / n_samples;
}

namespace serial {

double sample_G(const TransitionMatrix& a, int n_samples, std::uint64_t seed) {
  require_samples(a, n_samples);
  int count = 0;
  for (int k = 0; k < n_samples; ++k) count += sample_in_G(a, seed, static_cast<std::uint64_t>(k)) ? 1 : 0;
  return static_cast<double>(count) / n_samples;
}

}  // namespace serial

Word reconstruct_word(const GibbsChain& chain, std::span<const double> values, double rel_tol) {
  if (values.empty()) throw PreconditionError("reconstruct_word needs at least one value");
  if (!in_G(chain, rel_tol).in_g) throw RigidityError(RigidityErrorKind::not_in_G, "Q has repeated E0 values");
  const auto& s = chain.shift();
  const auto& a = chain.base();
  const int n = a.size();

  // Unique E0 edge with the given value, optionally restricted to a target.
  auto lookup = [&](double value, std::optional<Symbol> target) -> Edge {
    std::optional<Edge> hit;
    for (const Edge& e : s.e0) {
      if (target && e.to != *target) continue;
      if (!values_match(chain.q(e.from, e.to), value, rel_tol)) continue;
      if (hit) throw RigidityError(RigidityErrorKind::not_in_G, "value " + value_text(value) + " matches several edges");
      hit = e;
    }
    if (!hit) throw RigidityError(RigidityErrorKind::no_match, "value " + value_text(value) + " matches no admissible edge");
    return *hit;
  };

  const double last = values.back();
  if (values_match(last, 1.0, rel_tol)) {
    throw RigidityError(RigidityErrorKind::bad_terminal, "the last value is 1, so the final symbol is not in V0");
  }
  const Edge tail = lookup(last, std::nullopt);
  Word reversed{tail.to, tail.from};
  for (std::size_t k = values.size() - 1; k-- > 0;) {
    const Symbol current = reversed.back();
    if (s.in_v0(current)) {
      reversed.push_back(lookup(values[k], current).from);
      continue;
    }
    Symbol pred = 0;
    while (pred < n && !a(pred, current)) ++pred;
    if (!values_match(chain.q(pred, current), values[k], rel_tol)) {
      throw RigidityError(RigidityErrorKind::no_match, "value " + value_text(values[k]) + " does not match the forced edge " +
                                                           format_word(Word{pred, current}, n));
    }
    reversed.push_back(pred);
  }
  return Word(reversed.rbegin(), reversed.rend());
}

ValueSetComparison compare_e0_value_sets(const GibbsChain& first, const GibbsChain& second, double rel_tol) {
  const auto x = e0_values(first);
  const auto y = e0_values(second);
  ValueSetComparison r;
  r.only_in_first = unmatched(x, y, rel_tol);
  r.only_in_second = unmatched(y, x, rel_tol);
  r.differ = !r.only_in_first.empty() || !r.only_in_second.empty();
  return r;
}

namespace {

// Block code from src-sequences to dst-sequences forced by equal Q-value
// streams: a window u of N+1 src symbols determines its value stream up to
// the first index k0 >= 1 with u_{k0} in V0, and the dst word carrying that
// stream is unique, so its first symbol is the output.
BlockCode forced_code(const GibbsChain& src, const GibbsChain& dst, double rel_tol) {
  const int n = src.base().size();
  std::map<Word, Symbol> table;
  for_each_admissible_word(src.base(), n + 1, [&](const Word& u) {
    int k0 = 1;
    while (k0 <= n && !src.shift().in_v0(u[static_cast<std::size_t>(k0)])) ++k0;
    if (k0 > n) throw RigidityError(RigidityErrorKind::not_invertible, "window " + format_word(u) + " never enters V0");
    std::vector<double> stream;
    for (int k = 0; k < k0; ++k) stream.push_back(src.q(u[static_cast<std::size_t>(k)], u[static_cast<std::size_t>(k + 1)]));
    try {
      table.emplace(u, reconstruct_word(dst, stream, rel_tol).front());
    } catch (const RigidityError& e) {
      throw RigidityError(RigidityErrorKind::not_invertible,
                          "value stream of window " + format_word(u) + " is not realised: " + e.what());
    }
  });
  return BlockCode(n + 1, std::move(table));
}

// Every admissible src word of length window+1 maps to a dst edge carrying the
// same Q value.
void verify_value_preserving(const BlockCode& code, const GibbsChain& src, const GibbsChain& dst, double rel_tol) {
  for_each_admissible_word(src.base(), code.window() + 1, [&](const Word& u) {
    const Word image = code.apply(u);
    if (!is_admissible(dst.base(), image) || !values_match(dst.q(image[0], image[1]), src.q(u[0], u[1]), rel_tol)) {
      throw RigidityError(RigidityErrorKind::not_invertible, "image of " + format_word(u) + " does not preserve Q values");
    }
  });
}

void verify_round_trip(const BlockCode& forward, const BlockCode& backward, const TransitionMatrix& src) {
  const int length = forward.window() + backward.window();
  for_each_admissible_word(src, length, [&](const Word& u) {
    const Word back = backward.apply(forward.apply(u));
    if (back[0] != u[0] || back[1] != u[1]) {
      throw RigidityError(RigidityErrorKind::not_invertible, "round trip fails on " + format_word(u));
    }
  });
}

}  // namespace

ConjugacyResult induce_conjugacy(const GibbsChain& f, const GibbsChain& g, double rel_tol) {
  if (f.shift().e0.size() != g.shift().e0.size()) {
    throw RigidityError(RigidityErrorKind::precondition_E0_count,
                        "#E0 differs: " + std::to_string(f.shift().e0.size()) + " vs " + std::to_string(g.shift().e0.size()));
  }
  if (!in_G(f, rel_tol).in_g) throw RigidityError(RigidityErrorKind::not_in_G, "Q(f) is not in G_A");

  ValueSetComparison values = compare_e0_value_sets(f, g, rel_tol);
  if (values.differ) return ValueSetObstruction{std::move(values)};
  if (!in_G(g, rel_tol).in_g) throw RigidityError(RigidityErrorKind::not_invertible, "Q(g) is not in G_B");

  BlockCode forward = forced_code(f, g, rel_tol);
  const BlockCode backward = forced_code(g, f, rel_tol);
  verify_value_preserving(forward, f, g, rel_tol);
  verify_value_preserving(backward, g, f, rel_tol);
  verify_round_trip(forward, backward, f.base());
  verify_round_trip(backward, forward, g.base());
  return forward;
}

CounterexampleParameters counterexample_parameters(const GibbsChain& chain) {
  if (!(chain.base() == snr_example_matrix())) {
    throw RigidityError(RigidityErrorKind::wrong_base, "the counterexample construction needs the 4x4 SNR example matrix");
  }
  return {chain.q(0, 1), chain.q(2, 1), chain.q(3, 1), chain.q(0, 3), chain.q(1, 3)};
}

Matrix example_q_matrix(const CounterexampleParameters& p) {
  for (const double x : {p.a1, p.a2, p.a3, p.b1, p.b2})
    if (!(x > 0.0 && x < 1.0)) throw PreconditionError("column entries of the example matrix must lie in (0, 1)");
  if (std::abs(p.a1 + p.a2 + p.a3 - 1.0) > 1e-12 || std::abs(p.b1 + p.b2 - 1.0) > 1e-12) {
    throw PreconditionError("a1 + a2 + a3 and b1 + b2 must equal 1");
  }
  Matrix q = Matrix::Zero(4, 4);
  q(0, 1) = p.a1;
  q(2, 1) = p.a2;
  q(3, 1) = p.a3;
  q(0, 3) = p.b1;
  q(1, 3) = p.b2;
  q(0, 2) = 1.0;
  q(1, 0) = 1.0;
  return q;
}

GibbsChain counterexample_chain(const GibbsChain& f) {
  const auto p = counterexample_parameters(f);
  if (values_match(p.a2, p.a3 * p.b1, kValueTolerance)) {
    throw RigidityError(RigidityErrorKind::degenerate, "Q_32 equals Q_14 Q_42");
  }
  const double c = 1.0 - p.a1 - p.a3 * p.b1;
  Matrix q = Matrix::Zero(4, 4);
  q(0, 1) = p.a1;
  q(2, 1) = p.a3 * p.b1;
  q(3, 1) = c;
  q(0, 3) = p.a2 / c;
  q(1, 3) = p.a3 * p.b2 / c;
  q(0, 2) = 1.0;
  q(1, 0) = 1.0;
  return GibbsChain::from_stochastic(f.base(), q);
}

Potential counterexample_pair(const Potential& f) {
  if (!(f.base() == snr_example_matrix())) {
    throw RigidityError(RigidityErrorKind::wrong_base, "the counterexample construction needs the 4x4 SNR example matrix");
  }
  return counterexample_chain(normalize(f).chain).fhat_potential();
}

SNRCertificate snr_certificate(const Potential& f) {
  if (!(f.base() == snr_example_matrix())) {
    throw RigidityError(RigidityErrorKind::wrong_base, "the SNR certificate needs the 4x4 SNR example matrix");
  }
  const GibbsChain fc = normalize(f).chain;
  const GibbsChain gc = counterexample_chain(fc);

  SNRCertificate cert(f, gc.fhat_potential());
  const auto membership = in_G(fc);
  cert.f_in_G = membership.in_g;
  cert.f_collision = membership.collision;

  const auto grid = default_q_grid();
  const auto family = char_poly_family_equal(fc, gc, grid, 1e-10);
  cert.spectra_equal = family.equal;
  cert.spectra_max_deviation = family.max_deviation;

  const auto cohomology = cohomologous_with_constant(fc, gc);
  cert.not_cohomologous = !cohomology.cohomologous;
  cert.witness = cohomology.witness;
  cert.witness_difference = cohomology.difference;

  cert.aut_trivial = automorphisms(f.base()).verdict == AutomorphismVerdict::trivial;

  cert.value_sets = compare_e0_value_sets(fc, gc);
  cert.e0_value_sets_differ = cert.value_sets.differ;
  return cert;
}

}  // namespace tms
