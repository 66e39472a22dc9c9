#include "tms/gibbs.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tms/error.hpp"

namespace tms {

bool nearly_equal(double x, double y, double rel_tol) {
  return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
}

Potential::Potential(TransitionMatrix base, const Matrix& values) : base_(std::move(base)), values_(values) {
  const int n = base_.size();
  if (values_.rows() != n || values_.cols() != n) throw PreconditionError("potential shape does not match the base matrix");
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j) {
      if (!base_(i, j)) {
        values_(i, j) = 0.0;
      } else if (!std::isfinite(values_(i, j))) {
        throw PreconditionError("potential value on edge " + format_word(Word{i, j}, n) + " is not finite");
      }
    }
}

Potential Potential::zero(TransitionMatrix base) { return constant(std::move(base), 0.0); }

Potential Potential::constant(TransitionMatrix base, double c) {
  const int n = base.size();
  return Potential(std::move(base), Matrix::Constant(n, n, c));
}

Potential Potential::plus_coboundary(std::span<const double> phi, double c) const {
  const int n = base_.size();
  if (static_cast<int>(phi.size()) != n) throw PreconditionError("coboundary needs one value per symbol");
  Matrix v = values_;
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j)
      if (base_(i, j)) v(i, j) += phi[static_cast<std::size_t>(j)] - phi[static_cast<std::size_t>(i)] + c;
  return Potential(base_, v);
}

Matrix weight_matrix(const Potential& f) {
  const auto& a = f.base();
  const int n = a.size();
  Matrix m = Matrix::Zero(n, n);
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j)
      if (a(i, j)) m(i, j) = std::exp(f(i, j));
  return m;
}

namespace {

Vector stationary_vector(const Matrix& q) {
  // Solve (Q - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  const auto n = q.rows();
  Matrix system = q - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  Vector pi = system.fullPivLu().solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(pi[i] > 0.0)) throw NumericalError("stationary vector has a non-positive entry");
  return pi;
}

}  // namespace

GibbsChain GibbsChain::from_stochastic(TransitionMatrix base, const Matrix& q, double column_tolerance) {
  require_primitive(base);
  const int n = base.size();
  if (q.rows() != n || q.cols() != n) throw PreconditionError("stochastic matrix shape does not match the base matrix");
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j) {
      const double x = q(i, j);
      if (base(i, j) ? !(x > 0.0 && x <= 1.0 + column_tolerance) : x != 0.0) {
        throw PreconditionError("stochastic matrix entry " + format_word(Word{i, j}, n) + " does not match the base support");
      }
    }
  for (Symbol j = 0; j < n; ++j) {
    if (std::abs(q.col(j).sum() - 1.0) > column_tolerance) {
      throw PreconditionError("column " + std::to_string(j + 1) + " does not sum to 1");
    }
  }
  GibbsChain c;
  c.shift_ = structure(base);
  c.base_ = std::move(base);
  c.q_ = q;
  c.pi_ = stationary_vector(q);
  return c;
}

double GibbsChain::fhat(Symbol i, Symbol j) const {
  if (!base_(i, j)) throw PreconditionError("fhat is undefined on the forbidden edge " + format_word(Word{i, j}, base_.size()));
  return std::log(q_(i, j));
}

Potential GibbsChain::fhat_potential() const {
  const int n = base_.size();
  Matrix v = Matrix::Zero(n, n);
  for (const Edge& e : shift_.edges) v(e.from, e.to) = std::log(q_(e.from, e.to));
  return Potential(base_, v);
}

Normalization normalize(const Potential& f) {
  require_primitive(f.base());
  // Q is unchanged by a constant shift of f; shifting by the largest edge value
  // keeps the weights in (0, 1].
  double top = -std::numeric_limits<double>::infinity();
  for (const Edge& e : f.base().edges()) top = std::max(top, f(e.from, e.to));
  const std::vector<double> no_phi(static_cast<std::size_t>(f.base().size()), 0.0);
  const Matrix m = weight_matrix(f.plus_coboundary(no_phi, -top));
  for (const Edge& e : f.base().edges())
    if (!(m(e.from, e.to) > 0.0)) throw NumericalError("edge weights exp(f) span more than the double range");
  PerronData pd = perron_unchecked(m);
  const int n = f.base().size();
  Matrix q = Matrix::Zero(n, n);
  for (Symbol i = 0; i < n; ++i)
    for (Symbol j = 0; j < n; ++j)
      if (f.base()(i, j)) q(i, j) = pd.left[i] * m(i, j) / (pd.lambda * pd.left[j]);
  const double pressure = std::log(pd.lambda) + top;
  pd.lambda *= std::exp(top);
  return {GibbsChain::from_stochastic(f.base(), q), std::move(pd), pressure};
}

double cylinder_measure(const GibbsChain& chain, std::span<const Symbol> w) {
  if (w.empty()) return 1.0;
  if (!is_admissible(chain.base(), w)) return 0.0;
  double mass = chain.pi()[w.back()];
  for (std::size_t k = 0; k + 1 < w.size(); ++k) mass *= chain.q(w[k], w[k + 1]);
  return mass;
}

GibbsRatioBounds gibbs_ratio(const GibbsChain& chain, const Potential& f, double pressure, int max_len) {
  if (max_len < 1) throw PreconditionError("gibbs_ratio needs max_len >= 1");
  const auto& a = chain.base();
  if (!(f.base() == a)) throw PreconditionError("potential and chain have different base matrices");
  const int n = a.size();

  std::vector<double> max_cont(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  std::vector<double> min_cont(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  for (const Edge& e : chain.shift().edges) {
    max_cont[static_cast<std::size_t>(e.from)] = std::max(max_cont[static_cast<std::size_t>(e.from)], f(e.from, e.to));
    min_cont[static_cast<std::size_t>(e.from)] = std::min(min_cont[static_cast<std::size_t>(e.from)], f(e.from, e.to));
  }

  GibbsRatioBounds b{std::numeric_limits<double>::infinity(), 0.0};
  // Depth-first over words; log_q and birkhoff carry the running sums of
  // log Q and f along the word's own edges.
  auto visit = [&](auto&& self, Symbol last, int length, double log_q, double birkhoff) -> void {
    const double log_mu = std::log(chain.pi()[last]) + log_q;
    const double base_exponent = -length * pressure + birkhoff;
    const auto l = static_cast<std::size_t>(last);
    b.inf = std::min(b.inf, std::exp(log_mu - base_exponent - max_cont[l]));
    b.sup = std::max(b.sup, std::exp(log_mu - base_exponent - min_cont[l]));
    if (length == max_len) return;
    for (Symbol next = 0; next < n; ++next) {
      if (!a(last, next)) continue;
      self(self, next, length + 1, log_q + std::log(chain.q(last, next)), birkhoff + f(last, next));
    }
  };
  for (Symbol s = 0; s < n; ++s) visit(visit, s, 1, 0.0, 0.0);
  return b;
}

double ks_entropy(const GibbsChain& chain) {
  double h = 0.0;
  for (const Edge& e : chain.shift().edges) {
    const double q = chain.q(e.from, e.to);
    h -= chain.pi()[e.to] * q * std::log(q);
  }
  return std::max(h, 0.0);
}

double cycle_sum(const GibbsChain& chain, std::span<const Symbol> c) {
  if (c.size() < 2 || c.front() != c.back() || !is_admissible(chain.base(), c)) {
    throw PreconditionError("cycle_sum needs an admissible cycle, got " + format_word(c, chain.base().size()));
  }
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) s += chain.fhat(c[k], c[k + 1]);
  return s;
}

CohomologyCheck cohomologous_with_constant(const GibbsChain& f, const GibbsChain& g) {
  if (!(f.base() == g.base())) throw PreconditionError("cohomology test needs potentials over the same base matrix");
  CohomologyCheck result;
  for (const Cycle& c : simple_cycles(f.base())) {
    const double sf = cycle_sum(f, c);
    const double sg = cycle_sum(g, c);
    if (!nearly_equal(sf, sg, 1e-10)) {
      result.cohomologous = false;
      result.witness = c;
      result.difference = sf - sg;
      return result;
    }
  }
  return result;
}

CohomologyCheck cohomologous_with_constant(const Potential& f, const Potential& g) {
  if (!(f.base() == g.base())) throw PreconditionError("cohomology test needs potentials over the same base matrix");
  return cohomologous_with_constant(normalize(f).chain, normalize(g).chain);
}

}  // namespace tms
