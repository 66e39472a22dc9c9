#include "tms/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "tms/charpoly.hpp"
#include "tms/error.hpp"
#include "tms/shift.hpp"

namespace tms {

ExactChain ExactChain::from_q_matrix(TransitionMatrix base, RationalMatrix q) {
  require_primitive(base);
  const int n = base.size();
  if (q.size() != n) throw PreconditionError("q_matrix shape does not match the base matrix");
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j) {
      const bool ok = base(i, j) ? (q(i, j) > 0 && q(i, j) <= 1) : q(i, j) == 0;
      if (!ok) throw PreconditionError("q_matrix entry " + format_word(Word{i, j}, n) + " does not match the base support");
    }
  for (Symbol j = 0; j < n; ++j) {
    Rational s = 0;
    for (Symbol i = 0; i < n; ++i) s += q(i, j);
    if (s != 1) throw PreconditionError("q_matrix column " + std::to_string(j + 1) + " sums to " + to_string(s) + ", not 1");
  }
  ExactChain c;
  c.base_ = std::move(base);
  c.q_ = std::move(q);
  return c;
}

GibbsChain ExactChain::to_chain() const {
  const int n = base_.size();
  Matrix m = Matrix::Zero(n, n);
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j) m(i, j) = to_double(q_(i, j));
  return GibbsChain::from_stochastic(base_, m);
}

ExactGMembership exact_in_G(const ExactChain& chain) {
  const auto e0 = structure(chain.base()).e0;
  ExactGMembership r;
  for (std::size_t later = 1; later < e0.size(); ++later)
    for (std::size_t earlier = 0; earlier < later; ++earlier) {
      if (chain.q(e0[earlier].from, e0[earlier].to) == chain.q(e0[later].from, e0[later].to)) {
        r.in_g = false;
        r.collision = std::make_pair(e0[earlier], e0[later]);
        return r;
      }
    }
  return r;
}

namespace {

Rational rational_pow(const Rational& base, int exponent) {
  Rational r = 1;
  const Rational b = exponent >= 0 ? base : Rational(1) / base;
  for (int k = 0; k < std::abs(exponent); ++k) r *= b;
  return r;
}

}  // namespace

std::vector<Rational> ExactCharPolyFamily::at(int q) const {
  std::vector<Rational> out;
  out.reserve(coefficients.size());
  for (const auto& sum : coefficients) {
    Rational v = 0;
    for (const auto& [base, multiplicity] : sum) v += Rational(multiplicity) * rational_pow(base, q);
    out.push_back(v);
  }
  return out;
}

ExactCharPolyFamily char_poly_family(const ExactChain& chain) {
  const auto& a = chain.base();
  const int n = a.size();
  if (n > 16) throw PreconditionError("exact characteristic polynomial families are limited to n <= 16");

  struct WeightedCycle {
    std::uint32_t mask = 0;
    int length = 0;
    Rational weight;
  };
  std::vector<WeightedCycle> cycles;
  for (const Cycle& c : simple_cycles(a)) {
    WeightedCycle wc;
    wc.weight = 1;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      wc.mask |= 1u << c[k];
      wc.weight *= chain.q(c[k], c[k + 1]);
    }
    wc.length = static_cast<int>(c.size()) - 1;
    cycles.push_back(std::move(wc));
  }

  ExactCharPolyFamily family;
  family.coefficients.resize(static_cast<std::size_t>(n + 1));
  auto add = [&](int vertices, int count, const Rational& weight) {
    auto& sum = family.coefficients[static_cast<std::size_t>(vertices)];
    auto& m = sum[weight];
    m += (count % 2 == 0) ? 1 : -1;
    if (m == 0) sum.erase(weight);
  };
  // Families of pairwise disjoint cycles, chosen in increasing index order.
  auto extend = [&](auto&& self, std::size_t from, std::uint32_t used, int vertices, int count, const Rational& weight) -> void {
    add(vertices, count, weight);
    for (std::size_t k = from; k < cycles.size(); ++k) {
      if (used & cycles[k].mask) continue;
      self(self, k + 1, used | cycles[k].mask, vertices + cycles[k].length, count + 1, weight * cycles[k].weight);
    }
  };
  extend(extend, 0, 0u, 0, 0, Rational(1));
  return family;
}

std::vector<Rational> char_poly(const RationalMatrix& m) {
  const int n = m.size();
  std::vector<Rational> flat(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i * n + j)] = m(i, j);
  return faddeev_leverrier(flat, n);
}

RationalMatrix q_power(const ExactChain& chain, int q) {
  const int n = chain.base().size();
  RationalMatrix out(n);
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j)
      if (chain.base()(i, j)) out(i, j) = rational_pow(chain.q(i, j), q);
  return out;
}

ExactValueSetComparison compare_e0_value_sets(const ExactChain& first, const ExactChain& second) {
  auto values = [](const ExactChain& c) {
    std::vector<Rational> v;
    for (const Edge& e : structure(c.base()).e0) v.push_back(c.q(e.from, e.to));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto x = values(first);
  const auto y = values(second);
  ExactValueSetComparison r;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r.only_in_first));
  std::set_difference(y.begin(), y.end(), x.begin(), x.end(), std::back_inserter(r.only_in_second));
  r.differ = !r.only_in_first.empty() || !r.only_in_second.empty();
  return r;
}

ExactChain counterexample_pair(const ExactChain& f) {
  if (!(f.base() == snr_example_matrix())) {
    throw RigidityError(RigidityErrorKind::wrong_base, "the counterexample construction needs the 4x4 SNR example matrix");
  }
  const Rational& a1 = f.q(0, 1);
  const Rational& a2 = f.q(2, 1);
  const Rational& a3 = f.q(3, 1);
  const Rational& b1 = f.q(0, 3);
  const Rational& b2 = f.q(1, 3);
  if (a2 == a3 * b1) throw RigidityError(RigidityErrorKind::degenerate, "Q_32 equals Q_14 Q_42");
  const Rational c = 1 - a1 - a3 * b1;

  RationalMatrix g(4);
  g(0, 1) = a1;
  g(2, 1) = a3 * b1;
  g(3, 1) = c;
  g(0, 3) = a2 / c;
  g(1, 3) = a3 * b2 / c;
  g(0, 2) = 1;
  g(1, 0) = 1;
  return ExactChain::from_q_matrix(f.base(), std::move(g));
}

}  // namespace tms
